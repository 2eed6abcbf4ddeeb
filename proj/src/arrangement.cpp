#include "bsat/arrangement.hpp"

#include "bsat/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace bsat {

namespace {

void collect_subsets(std::size_t k, std::size_t r, std::size_t start, IndexSet& cur, std::vector<IndexSet>& out)
{
    if (cur.size() == r) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i + (r - cur.size()) <= k; ++i) {
        cur.push_back(i);
        collect_subsets(k, r, i + 1, cur, out);
        cur.pop_back();
    }
}

std::string describe(const IndexSet& s)
{
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < s.size(); ++i)
        os << (i ? "," : "") << s[i] + 1;
    os << '}';
    return os.str();
}

IndexSet set_union(const IndexSet& a, const IndexSet& b)
{
    IndexSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

IndexSet set_intersection(const IndexSet& a, const IndexSet& b)
{
    IndexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool is_sorted_unique(const IndexSet& s, std::size_t k)
{
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] >= k)
            return false;
        if (i && s[i - 1] >= s[i])
            return false;
    }
    return true;
}

} // namespace

std::vector<IndexSet> subsets(std::size_t k, std::size_t r)
{
    std::vector<IndexSet> out;
    if (r > k)
        return out;
    IndexSet cur;
    collect_subsets(k, r, 0, cur, out);
    return out;
}

IndexSet complement(const IndexSet& s, std::size_t k)
{
    IndexSet out;
    for (std::size_t i = 0; i < k; ++i)
        if (!std::binary_search(s.begin(), s.end(), i))
            out.push_back(i);
    return out;
}

Hyperplane::Hyperplane(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients))
{
    auto it = std::find_if(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c != 0; });
    if (it == coeffs_.end())
        throw std::invalid_argument("hyperplane: zero linear form");
    const Rational scale = 1 / *it;
    for (auto& c : coeffs_)
        c *= scale;
}

Polynomial Hyperplane::form() const
{
    Polynomial p(coeffs_.size());
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        p.add_term(Monomial::variable(coeffs_.size(), i), coeffs_[i]);
    return p;
}

Arrangement::Arrangement(std::size_t n, std::vector<Hyperplane> hyperplanes)
    : n_(n), planes_(std::move(hyperplanes))
{
    if (n_ == 0)
        throw std::invalid_argument("arrangement: ambient dimension must be positive");
    if (planes_.empty())
        throw std::invalid_argument("arrangement: needs at least one hyperplane");
    for (const auto& h : planes_)
        if (h.ambient() != n_)
            throw DimensionError("arrangement: hyperplane has " + std::to_string(h.ambient())
                                 + " coefficients, expected " + std::to_string(n_));
    for (std::size_t i = 0; i < planes_.size(); ++i)
        for (std::size_t j = i + 1; j < planes_.size(); ++j)
            if (planes_[i] == planes_[j])
                throw std::invalid_argument("arrangement is not reduced: hyperplanes " + std::to_string(i + 1)
                                            + " and " + std::to_string(j + 1) + " are proportional");
    for (const auto& h : planes_)
        forms_.push_back(h.form());
}

Matrix Arrangement::coefficient_matrix(const IndexSet& idx) const
{
    Matrix m;
    for (auto i : idx)
        m.push_back(planes_.at(i).coefficients());
    return m;
}

std::size_t Arrangement::rank_of(const IndexSet& idx) const
{
    if (idx.empty())
        return 0;
    return rank(coefficient_matrix(idx));
}

Polynomial Arrangement::product(const IndexSet& idx) const
{
    Polynomial p = Polynomial::constant(n_, 1);
    for (auto i : idx)
        p *= forms_.at(i);
    return p;
}

Arrangement Arrangement::subarrangement(const IndexSet& idx) const
{
    std::vector<Hyperplane> hs;
    for (auto i : idx)
        hs.push_back(planes_.at(i));
    return Arrangement(n_, std::move(hs));
}

Arrangement generic_arrangement(std::size_t n, std::size_t k)
{
    std::vector<Hyperplane> hs;
    for (std::size_t i = 0; i < std::min(n, k); ++i) {
        std::vector<Rational> c(n, Rational(0));
        c[i] = 1;
        hs.emplace_back(std::move(c));
    }
    for (std::size_t t = 1; hs.size() < k; ++t) {
        std::vector<Rational> c(n);
        Rational p = 1;
        for (std::size_t i = 0; i < n; ++i) {
            c[i] = p;
            p *= static_cast<unsigned long>(t);
        }
        hs.emplace_back(std::move(c));
    }
    return Arrangement(n, std::move(hs));
}

std::optional<IndexSet> dependent_subset(const Arrangement& a)
{
    const std::size_t m = std::min(a.k(), a.n());
    for (const auto& s : subsets(a.k(), m))
        if (a.rank_of(s) != m)
            return s;
    return std::nullopt;
}

bool is_generic(const Arrangement& a)
{
    return !dependent_subset(a).has_value();
}

void require_generic(const Arrangement& a, const char* operation)
{
    if (auto bad = dependent_subset(a))
        throw PreconditionError(std::string(operation) + ": arrangement is not generic (hyperplanes "
                                + describe(*bad) + " are linearly dependent)");
}

Polynomial defining_poly(const Arrangement& a)
{
    return a.product(complement({}, a.k()));
}

Polynomial apply_field(const VectorField& v, const Polynomial& f)
{
    if (v.size() != f.ambient())
        throw DimensionError("apply_field: vector field and polynomial ring mismatch");
    Polynomial r(f.ambient());
    for (std::size_t l = 0; l < v.size(); ++l)
        if (v[l] != 0)
            r += partial(f, l) * v[l];
    return r;
}

std::vector<VectorField> dual_frame(const Arrangement& a, const IndexSet& N)
{
    if (N.size() != a.n() || !is_sorted_unique(N, a.k()))
        throw PreconditionError("dual_frame: N must be a set of n distinct hyperplane indices");
    auto inv = inverse(transpose(a.coefficient_matrix(N)));
    if (!inv)
        throw PreconditionError("dual_frame: hyperplanes " + describe(N) + " are linearly dependent");
    return *inv;
}

Polynomial jacobian_det(const Arrangement& a, const IndexSet& mu, const Polynomial& f)
{
    const std::size_t n = a.n();
    if (mu.size() + 1 != n)
        throw PreconditionError("jacobian_det: mu must have n-1 elements");
    if (f.ambient() != n)
        throw DimensionError("jacobian_det: polynomial ring mismatch");
    const Matrix top = a.coefficient_matrix(mu);
    Polynomial det(n);
    // Expansion along the last row, whose entries are the partials of f.
    for (std::size_t col = 0; col < n; ++col) {
        Matrix minor;
        for (const auto& row : top) {
            Vector r;
            for (std::size_t j = 0; j < n; ++j)
                if (j != col)
                    r.push_back(row[j]);
            minor.push_back(std::move(r));
        }
        Rational cof = minor.empty() ? Rational(1) : determinant(std::move(minor));
        if ((n - 1 + col) % 2)
            cof = -cof;
        if (cof != 0)
            det += partial(f, col) * cof;
    }
    return det;
}

unsigned AMonomial::degree() const
{
    unsigned d = 0;
    for (auto m : multiplicities)
        d += m;
    return d;
}

bool AMonomial::squarefree() const
{
    return std::all_of(multiplicities.begin(), multiplicities.end(), [](unsigned m) { return m <= 1; });
}

std::size_t AMonomial::distinct_factors() const
{
    return static_cast<std::size_t>(
        std::count_if(multiplicities.begin(), multiplicities.end(), [](unsigned m) { return m > 0; }));
}

AMonomial a_monomial(const Arrangement& a, std::vector<unsigned> multiplicities)
{
    if (multiplicities.size() != a.k())
        throw DimensionError("a_monomial: need one multiplicity per hyperplane");
    Polynomial value = Polynomial::constant(a.n(), 1);
    for (std::size_t i = 0; i < multiplicities.size(); ++i)
        if (multiplicities[i])
            value *= a.form(i).pow(multiplicities[i]);
    return {std::move(multiplicities), std::move(value)};
}

AMonomial q_mu(const Arrangement& a, const IndexSet& mu)
{
    if (mu.size() + 1 != a.n() || !is_sorted_unique(mu, a.k()))
        throw PreconditionError("q_mu: mu must be a set of n-1 distinct hyperplane indices");
    std::vector<unsigned> mult(a.k(), 1);
    for (auto i : mu)
        mult[i] = 0;
    return a_monomial(a, std::move(mult));
}

std::vector<Polynomial> sigma_r(const Arrangement& a, std::size_t r)
{
    if (r > a.k())
        throw PreconditionError("sigma_r: r exceeds the number of hyperplanes");
    std::vector<Polynomial> out;
    for (const auto& I : subsets(a.k(), r))
        out.push_back(a.product(I));
    return out;
}

Polynomial delta_JIN(const Arrangement& a, const IndexSet& J, const IndexSet& I, const IndexSet& N)
{
    const std::size_t k = a.k(), n = a.n();
    if (!is_sorted_unique(J, k) || !is_sorted_unique(I, k) || !is_sorted_unique(N, k))
        throw PreconditionError("delta_JIN: index sets must be sorted, distinct and in range");
    if (N.size() != n)
        throw PreconditionError("delta_JIN: |N| must equal n");
    if (I.size() + n <= k)
        throw PreconditionError("delta_JIN: |I| must exceed k-n");
    const IndexSet check = complement(set_union(I, N), k);
    const IndexSet hat = set_intersection(I, N);
    if (!std::includes(hat.begin(), hat.end(), J.begin(), J.end()))
        throw PreconditionError("delta_JIN: J must be a subset of I intersect N");
    if (J.size() != check.size() + 1)
        throw PreconditionError("delta_JIN: |J| must equal the number of hyperplanes outside I and N, plus one");

    const auto frame = dual_frame(a, N);
    auto field_of = [&](std::size_t j) -> const VectorField& {
        return frame[static_cast<std::size_t>(std::lower_bound(N.begin(), N.end(), j) - N.begin())];
    };
    const Polynomial HI = a.product(I);
    const std::size_t rho = J.size();

    Matrix constant_block(rho, Vector(check.size()));
    std::vector<Polynomial> last_column;
    for (std::size_t t = 0; t < rho; ++t) {
        const auto& v = field_of(J[t]);
        for (std::size_t c = 0; c < check.size(); ++c) {
            const auto& h = a[check[c]].coefficients();
            Rational s = 0;
            for (std::size_t l = 0; l < n; ++l)
                s += v[l] * h[l];
            constant_block[t][c] = s;
        }
        last_column.push_back(apply_field(v, HI));
    }
    Polynomial det(n);
    for (std::size_t t = 0; t < rho; ++t) {
        Matrix minor;
        for (std::size_t u = 0; u < rho; ++u)
            if (u != t)
                minor.push_back(constant_block[u]);
        Rational cof = minor.empty() ? Rational(1) : determinant(std::move(minor));
        if ((t + rho - 1) % 2)
            cof = -cof;
        if (cof != 0)
            det += last_column[t] * cof;
    }
    return det;
}

std::vector<DeltaIndex> delta_indices(const Arrangement& a, std::size_t r)
{
    const std::size_t k = a.k(), n = a.n();
    if (r + n <= k)
        throw PreconditionError("delta_r: defined only for r > k-n");
    if (r > k)
        throw PreconditionError("delta_r: r exceeds the number of hyperplanes");
    std::vector<DeltaIndex> out;
    const auto frames = subsets(k, n);
    for (const auto& I : subsets(k, r)) {
        for (const auto& N : frames) {
            if (a.rank_of(N) != n)
                continue;
            const IndexSet check = complement(set_union(I, N), k);
            const IndexSet hat = set_intersection(I, N);
            for (const auto& pick : subsets(hat.size(), check.size() + 1)) {
                IndexSet J;
                for (auto p : pick)
                    J.push_back(hat[p]);
                out.push_back({std::move(J), I, N});
            }
        }
    }
    return out;
}

std::vector<Polynomial> delta_r(const Arrangement& a, std::size_t r)
{
    std::vector<Polynomial> out;
    auto push_unique = [&](Polynomial p) {
        if (p.is_zero())
            return;
        if (std::find(out.begin(), out.end(), p) == out.end())
            out.push_back(std::move(p));
    };
    for (const auto& idx : delta_indices(a, r))
        push_unique(delta_JIN(a, idx.J, idx.I, idx.N));
    for (auto& h : sigma_r(a, r))
        push_unique(std::move(h));
    return out;
}

std::vector<Flat> flats(const Arrangement& a)
{
    const std::size_t k = a.k();
    if (k > 20)
        throw PreconditionError("flats: brute-force closure is limited to 20 hyperplanes");
    std::set<IndexSet> seen;
    std::vector<Flat> out;
    for (unsigned long mask = 0; mask < (1ul << k); ++mask) {
        IndexSet s;
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (1ul << i))
                s.push_back(i);
        const std::size_t r = a.rank_of(s);
        IndexSet closure;
        for (std::size_t i = 0; i < k; ++i) {
            if (std::binary_search(s.begin(), s.end(), i)) {
                closure.push_back(i);
                continue;
            }
            IndexSet t = s;
            t.insert(std::lower_bound(t.begin(), t.end(), i), i);
            if (a.rank_of(t) == r)
                closure.push_back(i);
        }
        if (seen.insert(closure).second)
            out.push_back({closure, r});
    }
    std::sort(out.begin(), out.end(), [](const Flat& x, const Flat& y) {
        return x.rank != y.rank ? x.rank < y.rank : x.closure < y.closure;
    });
    return out;
}

} // namespace bsat
