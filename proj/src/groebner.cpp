#include "bsat/groebner.hpp"

#include "bsat/errors.hpp"
#include "bsat/linalg.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace bsat {

namespace {

int grevlex_tail_compare(const Monomial& a, const Monomial& b, std::size_t from)
{
    unsigned da = 0, db = 0;
    for (std::size_t i = from; i < a.size(); ++i) {
        da += a[i];
        db += b[i];
    }
    if (da != db)
        return da > db ? 1 : -1;
    for (std::size_t i = a.size(); i-- > from;)
        if (a[i] != b[i])
            return a[i] < b[i] ? 1 : -1;
    return 0;
}

struct OrderGreater {
    MonomialOrder order;
    bool operator()(const Monomial& a, const Monomial& b) const { return compare_monomials(order, a, b) > 0; }
};

using OPoly = std::map<Monomial, Rational, OrderGreater>;

OPoly to_ordered(const Polynomial& f, MonomialOrder order)
{
    OPoly p(OrderGreater{order});
    for (const auto& [m, c] : f.terms())
        p.emplace(m, c);
    return p;
}

Polynomial from_ordered(const OPoly& p, std::size_t n)
{
    Polynomial f(n);
    for (const auto& [m, c] : p)
        f.add_term(m, c);
    return f;
}

void make_monic(OPoly& p)
{
    if (p.empty())
        return;
    const Rational inv = 1 / p.begin()->second;
    if (inv == 1)
        return;
    for (auto& [m, c] : p)
        c *= inv;
}

// work -= c * q * g
void subtract_multiple(OPoly& work, const Rational& c, const Monomial& q, const OPoly& g)
{
    for (const auto& [gm, gc] : g) {
        auto key = gm * q;
        auto [it, inserted] = work.try_emplace(std::move(key), -(c * gc));
        if (!inserted) {
            it->second -= c * gc;
            if (it->second == 0)
                work.erase(it);
        }
    }
}

// Full reduction of f modulo monic polynomials `basis`.
OPoly reduce(OPoly work, const std::vector<OPoly>& basis, std::size_t skip = static_cast<std::size_t>(-1))
{
    OPoly rem(work.key_comp());
    while (!work.empty()) {
        auto it = work.begin();
        const Monomial m = it->first;
        const Rational c = it->second;
        bool reduced = false;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (i == skip || basis[i].empty())
                continue;
            const Monomial& lead = basis[i].begin()->first;
            if (lead.divides(m)) {
                subtract_multiple(work, c, m / lead, basis[i]);
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            rem.emplace_hint(rem.end(), m, c);
            work.erase(it);
        }
    }
    return rem;
}

OPoly s_polynomial(const OPoly& f, const OPoly& g)
{
    const Monomial& lf = f.begin()->first;
    const Monomial& lg = g.begin()->first;
    const Monomial l = lf.lcm(lg);
    OPoly s(f.key_comp());
    for (const auto& [m, c] : f)
        s.emplace(m * (l / lf), c);
    subtract_multiple(s, 1, l / lg, g);
    return s;
}

bool coprime(const Monomial& a, const Monomial& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] && b[i])
            return false;
    return true;
}

struct Pair {
    std::size_t i, j;
    Monomial lcm;
};

std::vector<OPoly> reduced_basis(std::vector<OPoly> g)
{
    // Drop elements whose leading monomial is a multiple of another's.
    std::vector<OPoly> minimal;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Monomial& li = g[i].begin()->first;
        bool redundant = false;
        for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
            if (i == j)
                continue;
            const Monomial& lj = g[j].begin()->first;
            if (lj.divides(li) && (lj != li || j < i))
                redundant = true;
        }
        if (!redundant)
            minimal.push_back(g[i]);
    }
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        minimal[i] = reduce(minimal[i], minimal, i);
        make_monic(minimal[i]);
    }
    std::sort(minimal.begin(), minimal.end(), [](const OPoly& a, const OPoly& b) {
        return a.key_comp()(a.begin()->first, b.begin()->first);
    });
    return minimal;
}

std::vector<OPoly> buchberger_ordered(std::vector<OPoly> basis)
{
    std::vector<Pair> pending;
    std::set<std::pair<std::size_t, std::size_t>> open;
    const auto order = basis.front().key_comp();

    auto add_pairs = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i) {
            pending.push_back({i, j, basis[i].begin()->first.lcm(basis[j].begin()->first)});
            open.insert({i, j});
        }
    };
    for (std::size_t j = 0; j < basis.size(); ++j)
        add_pairs(j);

    while (!pending.empty()) {
        auto best = std::min_element(pending.begin(), pending.end(), [&](const Pair& a, const Pair& b) {
            const unsigned da = a.lcm.degree(), db = b.lcm.degree();
            if (da != db)
                return da < db;
            return order(b.lcm, a.lcm);
        });
        Pair p = *best;
        pending.erase(best);
        open.erase({p.i, p.j});

        const Monomial& li = basis[p.i].begin()->first;
        const Monomial& lj = basis[p.j].begin()->first;
        if (coprime(li, lj))
            continue;
        bool chain = false;
        for (std::size_t l = 0; l < basis.size() && !chain; ++l) {
            if (l == p.i || l == p.j)
                continue;
            if (!basis[l].begin()->first.divides(p.lcm))
                continue;
            auto key = [](std::size_t a, std::size_t b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
            if (!open.count(key(p.i, l)) && !open.count(key(p.j, l)))
                chain = true;
        }
        if (chain)
            continue;

        OPoly h = reduce(s_polynomial(basis[p.i], basis[p.j]), basis);
        if (h.empty())
            continue;
        make_monic(h);
        basis.push_back(std::move(h));
        add_pairs(basis.size() - 1);
    }
    return reduced_basis(std::move(basis));
}

// Homogeneous generators of one degree are replaced by a reduced echelon
// basis of their span; large redundant families shrink to the slice rank.
std::vector<Polynomial> interreduce_by_degree(std::span<const Polynomial> gens, std::size_t n)
{
    std::map<int, std::vector<Polynomial>> by_degree;
    for (const auto& g : gens)
        if (!g.is_zero())
            by_degree[g.degree()].push_back(g);
    std::vector<Polynomial> out;
    for (const auto& [d, polys] : by_degree) {
        if (polys.size() == 1) {
            out.push_back(polys.front());
            continue;
        }
        const DegreeSlice slice(n, static_cast<unsigned>(d));
        std::vector<Vector> rows;
        for (const auto& p : polys)
            rows.push_back(slice.coordinates(p));
        for (const auto& row : rref(rows).rows)
            out.push_back(slice.polynomial(row));
    }
    return out;
}

GroebnerBasis build_basis(std::span<const Polynomial> input, MonomialOrder order, std::size_t n)
{
    for (const auto& g : input)
        if (g.ambient() != n)
            throw DimensionError("buchberger: generators live in different rings");
    const bool homogeneous = std::all_of(input.begin(), input.end(), [](const Polynomial& g) { return g.is_homogeneous(); });
    std::vector<Polynomial> reduced_input;
    std::span<const Polynomial> gens = input;
    if (homogeneous && input.size() > 1) {
        reduced_input = interreduce_by_degree(input, n);
        gens = reduced_input;
    }
    std::vector<OPoly> start;
    for (const auto& g : gens) {
        if (g.ambient() != n)
            throw DimensionError("buchberger: generators live in different rings");
        if (g.is_zero())
            continue;
        OPoly p = to_ordered(g, order);
        make_monic(p);
        start.push_back(std::move(p));
    }
    if (start.empty())
        throw std::invalid_argument("zero ideal");
    auto reduced = buchberger_ordered(std::move(start));
    std::vector<Polynomial> out;
    out.reserve(reduced.size());
    for (const auto& p : reduced)
        out.push_back(from_ordered(p, n));
    return GroebnerBasis(n, order, std::move(out));
}

void require_homogeneous(const GroebnerBasis& g, const char* what)
{
    if (!g.is_homogeneous())
        throw PreconditionError(std::string(what) + ": ideal is not homogeneous");
}

// Elements of the ideal  t*A + (1-t)*B  free of t, in the original ring.
std::vector<Polynomial> eliminate_intersection(std::span<const Polynomial> a, std::span<const Polynomial> b,
                                               std::size_t n)
{
    const std::size_t big = n + 1;
    const Polynomial t = Polynomial::variable(big, 0);
    const Polynomial one_minus_t = Polynomial::constant(big, 1) - t;
    std::vector<Polynomial> gens;
    for (const auto& f : a)
        gens.push_back(t * embed(f, big, 1));
    for (const auto& f : b)
        gens.push_back(one_minus_t * embed(f, big, 1));
    const GroebnerBasis g = build_basis(gens, MonomialOrder::EliminateFirst, big);
    std::vector<Polynomial> out;
    for (const auto& p : g.generators()) {
        bool has_t = false;
        for (const auto& [m, c] : p.terms())
            if (m[0] != 0) {
                has_t = true;
                break;
            }
        if (has_t)
            continue;
        Polynomial q(n);
        for (const auto& [m, c] : p.terms())
            q.add_term(Monomial(std::vector<unsigned>(m.exponents().begin() + 1, m.exponents().end())), c);
        out.push_back(std::move(q));
    }
    return out;
}

GroebnerBasis quotient_by_one(const GroebnerBasis& I, const Polynomial& f)
{
    const std::size_t n = I.ambient();
    const std::vector<Polynomial> fs{f};
    auto meet = eliminate_intersection(I.generators(), fs, n);
    std::vector<Polynomial> q;
    for (const auto& h : meet) {
        auto d = divide_exact(h, f);
        if (!d)
            throw InternalError("ideal_quotient: intersection element not divisible by f");
        q.push_back(std::move(*d));
    }
    return build_basis(q, I.order(), n);
}

} // namespace

int compare_monomials(MonomialOrder order, const Monomial& a, const Monomial& b)
{
    switch (order) {
    case MonomialOrder::Grevlex:
        return grevlex_compare(a, b);
    case MonomialOrder::EliminateFirst:
        if (a[0] != b[0])
            return a[0] > b[0] ? 1 : -1;
        return grevlex_tail_compare(a, b, 1);
    }
    return 0;
}

GroebnerBasis::GroebnerBasis(std::size_t n, MonomialOrder order, std::vector<Polynomial> gens)
    : n_(n), order_(order), gens_(std::move(gens))
{
    for (const auto& g : gens_) {
        const Monomial* best = nullptr;
        for (const auto& [m, c] : g.terms())
            if (!best || compare_monomials(order_, m, *best) > 0)
                best = &m;
        leads_.push_back(*best);
    }
}

bool GroebnerBasis::is_unit() const
{
    return gens_.size() == 1 && gens_.front().is_constant();
}

bool GroebnerBasis::is_homogeneous() const
{
    return std::all_of(gens_.begin(), gens_.end(), [](const Polynomial& p) { return p.is_homogeneous(); });
}

GroebnerBasis buchberger(std::span<const Polynomial> gens, MonomialOrder order)
{
    if (gens.empty())
        throw std::invalid_argument("zero ideal");
    return build_basis(gens, order, gens.front().ambient());
}

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& g)
{
    if (f.ambient() != g.ambient())
        throw DimensionError("normal_form: mismatched rings");
    std::vector<OPoly> basis;
    for (const auto& p : g.generators())
        basis.push_back(to_ordered(p, g.order()));
    return from_ordered(reduce(to_ordered(f, g.order()), basis), g.ambient());
}

bool ideal_contains(const GroebnerBasis& g, const Polynomial& f)
{
    return normal_form(f, g).is_zero();
}

bool same_ideal(const GroebnerBasis& a, const GroebnerBasis& b)
{
    if (a.order() != b.order())
        throw std::invalid_argument("same_ideal: bases use different orders");
    return a == b;
}

bool contains_m_power(const GroebnerBasis& g, unsigned N)
{
    require_homogeneous(g, "contains_m_power");
    for (const auto& m : monomials_of_degree(g.ambient(), N))
        if (!ideal_contains(g, Polynomial::term(m)))
            return false;
    return true;
}

std::optional<unsigned> min_m_power(const GroebnerBasis& g, unsigned cap)
{
    require_homogeneous(g, "min_m_power");
    for (unsigned N = 0; N <= cap; ++N)
        if (contains_m_power(g, N))
            return N;
    return std::nullopt;
}

GroebnerBasis ideal_intersection(const GroebnerBasis& a, const GroebnerBasis& b)
{
    if (a.ambient() != b.ambient())
        throw DimensionError("ideal_intersection: mismatched rings");
    return build_basis(eliminate_intersection(a.generators(), b.generators(), a.ambient()), a.order(),
                       a.ambient());
}

GroebnerBasis ideal_quotient(const GroebnerBasis& I, std::span<const Polynomial> J)
{
    std::optional<GroebnerBasis> result;
    for (const auto& f : J) {
        if (f.ambient() != I.ambient())
            throw DimensionError("ideal_quotient: mismatched rings");
        if (f.is_zero())
            continue;
        GroebnerBasis q = quotient_by_one(I, f);
        result = result ? ideal_intersection(*result, q) : std::move(q);
    }
    if (!result)
        throw std::invalid_argument("ideal_quotient: J has no nonzero element");
    return *result;
}

std::size_t hilbert_dim(const GroebnerBasis& I, unsigned d)
{
    require_homogeneous(I, "hilbert_dim");
    const DegreeSlice slice(I.ambient(), d);
    std::vector<Polynomial> spanning;
    for (const auto& g : I.generators()) {
        const int dg = g.degree();
        if (dg > static_cast<int>(d))
            continue;
        for (const auto& m : monomials_of_degree(I.ambient(), d - static_cast<unsigned>(dg)))
            spanning.push_back(g.shifted(m));
    }
    return slice.dimension() - slice_rank(slice, spanning);
}

std::vector<Monomial> standard_monomials(const GroebnerBasis& g, unsigned d)
{
    std::vector<Monomial> out;
    for (const auto& m : monomials_of_degree(g.ambient(), d)) {
        bool divisible = std::any_of(g.leading_monomials().begin(), g.leading_monomials().end(),
                                     [&](const Monomial& l) { return l.divides(m); });
        if (!divisible)
            out.push_back(m);
    }
    return out;
}

} // namespace bsat
