#include "bsat/milnor.hpp"

#include "bsat/errors.hpp"
#include "bsat/linalg.hpp"

#include <algorithm>

namespace bsat {

namespace {

Polynomial expand(const Arrangement& arr, const AExponents& e)
{
    return a_monomial(arr, e).value;
}

unsigned total_degree(const AExponents& e)
{
    unsigned d = 0;
    for (auto x : e)
        d += x;
    return d;
}

std::size_t distinct(const AExponents& e)
{
    return static_cast<std::size_t>(std::count_if(e.begin(), e.end(), [](unsigned x) { return x > 0; }));
}

// J_mu(H_i) is a constant for a linear form H_i.
Rational jacobian_constant(const Arrangement& arr, const IndexSet& mu, std::size_t i)
{
    const Polynomial j = jacobian_det(arr, mu, arr.form(i));
    return j.coefficient(Monomial(arr.n()));
}

class Rewriter {
public:
    Rewriter(const Arrangement& arr, unsigned r)
        : arr_(arr), k_(arr.k()), n_(arr.n()), target_(r + n_ - k_)
    {
    }

    RewriteResult run(const AExponents& product)
    {
        combo_[product] = 1;
        while (true) {
            auto next = pick();
            if (next == combo_.end())
                break;
            const AExponents p = next->first;
            const Rational c = next->second;
            combo_.erase(next);
            step(p, c);
        }
        RewriteResult out;
        out.basis = basis_monomials(n_, k_, target_ + static_cast<unsigned>(k_ - n_));
        for (const auto& b : out.basis) {
            auto it = combo_.find(b);
            out.coefficients.push_back(it == combo_.end() ? Rational(0) : it->second);
        }
        for (const auto& [e, c] : combo_)
            if (std::find(out.basis.begin(), out.basis.end(), e) == out.basis.end())
                throw InternalError("rewrite_to_basis: terminated on a non-basis monomial");
        out.certificate = std::move(certificate_);
        return out;
    }

private:
    bool is_basis(const AExponents& e) const
    {
        return e[k_ - 1] == target_ && distinct(e) == k_ - n_ + 1 && e[k_ - 2] >= 1;
    }

    // Non-basis term of least H_k multiplicity; ties broken by exponent order.
    std::map<AExponents, Rational>::iterator pick()
    {
        auto best = combo_.end();
        for (auto it = combo_.begin(); it != combo_.end(); ++it) {
            if (is_basis(it->first))
                continue;
            if (best == combo_.end() || it->first[k_ - 1] < best->first[k_ - 1])
                best = it;
        }
        return best;
    }

    void add(const AExponents& e, const Rational& c)
    {
        if (c == 0)
            return;
        auto [it, inserted] = combo_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                combo_.erase(it);
        }
    }

    // Eliminates c * p using the relation E(a, mu), in which p occurs.
    void eliminate_with(const AExponents& p, const Rational& c, const AExponents& a, const IndexSet& mu)
    {
        const auto rel = relation_in_a_monomials(arr_, a, mu);
        auto self = rel.find(p);
        if (self == rel.end() || self->second == 0)
            throw InternalError("rewrite_to_basis: relation does not involve the product being eliminated");
        const Rational scale = c / self->second;
        for (const auto& [e, coeff] : rel)
            if (e != p)
                add(e, -scale * coeff);
        certificate_.push_back({scale, a, mu});
    }

    // a = P' H_{i0} and mu' = mu + {i0} - {k}, where Q_mu = product over `factors`.
    void shift_towards_last(const AExponents& p, const Rational& c, const IndexSet& factors)
    {
        const std::size_t i0 = factors.front();
        AExponents a = p;
        for (auto i : factors)
            a[i] -= 1;
        a[i0] += 1;
        IndexSet mu_prime = complement(factors, k_);
        mu_prime.erase(std::find(mu_prime.begin(), mu_prime.end(), k_ - 1));
        mu_prime.insert(std::lower_bound(mu_prime.begin(), mu_prime.end(), i0), i0);
        eliminate_with(p, c, a, mu_prime);
    }

    void step(const AExponents& p, const Rational& c)
    {
        const std::size_t free_factors = k_ - n_ + 1;
        const std::size_t d = distinct(p);
        const unsigned l = p[k_ - 1];

        if (d > free_factors) {
            // Step 1: Q_mu built from the lowest-index factors other than H_k.
            IndexSet factors;
            for (std::size_t i = 0; i + 1 < k_ && factors.size() < free_factors; ++i)
                if (p[i] > 0)
                    factors.push_back(i);
            shift_towards_last(p, c, factors);
            return;
        }
        IndexSet factors;
        for (std::size_t i = 0; i < k_; ++i)
            if (p[i] > 0)
                factors.push_back(i);
        if (l == 0) {
            // Step 2: H_k does not divide P.
            shift_towards_last(p, c, factors);
            return;
        }
        if (l < target_) {
            // Step 3: trade one repeated factor for H_k and the hyperplanes of mu.
            const IndexSet mu = complement(factors, k_);
            std::size_t i0 = 0;
            while (p[i0] < 2)
                ++i0;
            IndexSet frame = mu;
            frame.push_back(k_ - 1);
            Matrix cols = transpose(arr_.coefficient_matrix(frame));
            auto coeffs = solve(cols, arr_[i0].coefficients(), frame.size());
            if (!coeffs)
                throw PreconditionError("rewrite_to_basis: mu together with H_k does not span; arrangement not generic");
            for (std::size_t t = 0; t < frame.size(); ++t) {
                AExponents e = p;
                e[i0] -= 1;
                e[frame[t]] += 1;
                add(e, c * (*coeffs)[t]);
            }
            return;
        }
        // Final step: Q_mu = (factors of P other than H_k) * H_{k-1}, a = H_k^{r-k+n}.
        IndexSet qmu;
        for (auto i : factors)
            if (i != k_ - 1)
                qmu.push_back(i);
        qmu.push_back(k_ - 2);
        const IndexSet mu = complement(qmu, k_);
        AExponents a(k_, 0);
        a[k_ - 1] = target_;
        eliminate_with(p, c, a, mu);
    }

    const Arrangement& arr_;
    std::size_t k_, n_;
    unsigned target_;
    std::map<AExponents, Rational> combo_;
    std::vector<CertificateEntry> certificate_;
};

std::vector<std::size_t> dims_for_class(const Arrangement& arr, const Polynomial& Q, unsigned c, unsigned M,
                                        unsigned m_max)
{
    const std::size_t k = arr.k();
    const unsigned T = c + M * static_cast<unsigned>(k);
    const DegreeSlice slice(arr.n(), T);
    RowSpace space(slice.dimension());

    std::vector<Polynomial> qpow{Polynomial::constant(arr.n(), 1)};
    for (unsigned j = 1; j <= M; ++j)
        qpow.push_back(qpow.back() * Q);

    // Relations: Q^{M-j} E_{c+jk}.
    for (unsigned j = 0; j <= M && !space.full(); ++j) {
        const unsigned d = c + j * static_cast<unsigned>(k);
        for (const auto& g : e_generators(arr, d)) {
            if (space.full())
                break;
            if (!g.is_zero())
                space.insert(slice.coordinates(qpow[M - j] * g));
        }
    }
    std::vector<std::size_t> dims;
    std::size_t prev = space.rank();
    for (unsigned m = 0; m <= m_max; ++m) {
        const unsigned r = c + m * static_cast<unsigned>(k);
        for (const auto& mono : monomials_of_degree(arr.n(), r)) {
            if (space.full())
                break;
            space.insert(slice.coordinates(qpow[M - m].shifted(mono)));
        }
        dims.push_back(space.rank() - prev);
        prev = space.rank();
    }
    return dims;
}

} // namespace

Polynomial e_generator(const Arrangement& arr, const Polynomial& a, const IndexSet& mu)
{
    if (!a.is_homogeneous())
        throw PreconditionError("e_generator: a must be homogeneous");
    const Polynomial qmu = q_mu(arr, mu).value;
    const long deg = a.is_zero() ? 0 : a.degree();
    Polynomial out = a * jacobian_det(arr, mu, qmu) * Rational(deg);
    out -= qmu * jacobian_det(arr, mu, a) * Rational(static_cast<long>(arr.k()));
    return out;
}

std::vector<Polynomial> e_generators(const Arrangement& arr, unsigned r)
{
    require_generic(arr, "e_generators");
    const std::size_t k = arr.k(), n = arr.n();
    std::vector<Polynomial> out;
    if (r + n < k)
        return out;
    const unsigned deg_a = r + static_cast<unsigned>(n) - static_cast<unsigned>(k);
    const auto monos = monomials_of_degree(n, deg_a);
    for (const auto& mu : subsets(k, n - 1)) {
        const Polynomial qmu = q_mu(arr, mu).value;
        const Polynomial jq = jacobian_det(arr, mu, qmu);
        for (const auto& m : monos) {
            const Polynomial a = Polynomial::term(m);
            Polynomial g = jq.shifted(m) * Rational(deg_a);
            g -= qmu * jacobian_det(arr, mu, a) * Rational(static_cast<long>(k));
            out.push_back(std::move(g));
        }
    }
    return out;
}

std::size_t graded_dim_mod_E(const Arrangement& arr, unsigned r)
{
    const DegreeSlice slice(arr.n(), r);
    const auto gens = e_generators(arr, r);
    return slice.dimension() - slice_rank(slice, gens);
}

CohomologyProfile u_profile(const Arrangement& arr, unsigned r_max)
{
    require_generic(arr, "u_profile");
    const std::size_t n = arr.n(), k = arr.k();
    if (n < 2 || k < n)
        throw PreconditionError("u_profile: needs k >= n >= 2");
    const Polynomial Q = defining_poly(arr);
    CohomologyProfile prof;
    prof.n = n;
    prof.k = k;
    prof.u.assign(r_max + 1, 0);
    const unsigned kk = static_cast<unsigned>(k);
    constexpr unsigned max_extra = 8;
    for (unsigned c = 0; c < kk && c <= r_max; ++c) {
        const unsigned m_max = (r_max - c) / kk;
        unsigned M = m_max + 1;
        auto dims = dims_for_class(arr, Q, c, M, m_max);
        while (true) {
            auto next = dims_for_class(arr, Q, c, M + 1, m_max);
            if (next == dims)
                break;
            dims = std::move(next);
            if (++M > m_max + max_extra)
                throw InternalError("u_profile: direct limit did not stabilize");
        }
        for (unsigned m = 0; m <= m_max; ++m)
            prof.u[c + m * kk] = dims[m];
    }
    for (auto x : prof.u)
        prof.total += x;
    return prof;
}

Integer or_dimension(long n, long k)
{
    return binomial(k - 2, n - 2) + Integer(k) * binomial(k - 2, n - 1);
}

Integer conjectured_u(long n, long k, long r)
{
    if (r < 0 || r > 2 * k - n - 2)
        return 0;
    if (r <= k - n)
        return binomial(r + n - 1, n - 1);
    if (r <= k - 1)
        return binomial(k - 2, n - 1);
    return binomial(k - 2, n - 1) - binomial(r - k + n - 1, n - 1);
}

std::map<AExponents, Rational> relation_in_a_monomials(const Arrangement& arr, const AExponents& a,
                                                       const IndexSet& mu)
{
    const std::size_t k = arr.k();
    if (a.size() != k)
        throw DimensionError("relation_in_a_monomials: exponent vector length must equal k");
    const long deg_a = static_cast<long>(total_degree(a));
    const IndexSet outside = complement(mu, k);
    std::map<AExponents, Rational> rel;
    for (auto i : outside) {
        const Rational coeff = Rational(deg_a - static_cast<long>(k) * a[i]) * jacobian_constant(arr, mu, i);
        if (coeff == 0)
            continue;
        AExponents e = a;
        for (auto j : outside)
            e[j] += 1;
        e[i] -= 1;
        rel[e] += coeff;
    }
    return rel;
}

bool relation_structure_check(const Arrangement& arr, const AExponents& a, const IndexSet& mu)
{
    const std::size_t k = arr.k(), n = arr.n();
    const auto rel = relation_in_a_monomials(arr, a, mu);
    if (rel.size() != k - n + 1)
        return false;
    for (const auto& [e, c] : rel)
        if (c == 0)
            return false;
    Polynomial sum(n);
    for (const auto& [e, c] : rel)
        sum += expand(arr, e) * c;
    return sum == e_generator(arr, expand(arr, a), mu);
}

std::vector<AExponents> basis_monomials(std::size_t n, std::size_t k, unsigned r)
{
    std::vector<AExponents> out;
    if (k <= n || r + n < k)
        return out;
    const unsigned power = r + static_cast<unsigned>(n) - static_cast<unsigned>(k);
    for (const auto& lead : subsets(k - 2, k - n - 1)) {
        AExponents e(k, 0);
        for (auto i : lead)
            e[i] = 1;
        e[k - 2] = 1;
        e[k - 1] = power;
        out.push_back(std::move(e));
    }
    return out;
}

RewriteResult rewrite_to_basis(const Arrangement& arr, const AExponents& product)
{
    require_generic(arr, "rewrite_to_basis");
    const std::size_t k = arr.k(), n = arr.n();
    if (product.size() != k)
        throw DimensionError("rewrite_to_basis: exponent vector length must equal k");
    if (k <= n || n < 2)
        throw PreconditionError("rewrite_to_basis: needs k > n >= 2");
    if (distinct(product) < k - n + 1)
        throw PreconditionError("rewrite_to_basis: not a standard product (fewer than k-n+1 distinct factors)");
    const unsigned r = total_degree(product);
    const unsigned shift = r + static_cast<unsigned>(n) - static_cast<unsigned>(k);
    if (shift % k == 0)
        throw PreconditionError("rewrite_to_basis: unsupported degree (k divides r-k+n)");
    return Rewriter(arr, r).run(product);
}

RewriteCheck verify_rewrite(const Arrangement& arr, const AExponents& product, const RewriteResult& result)
{
    RewriteCheck check;
    const std::size_t n = arr.n(), k = arr.k();
    Polynomial diff = expand(arr, product);
    std::size_t used = 0;
    for (std::size_t i = 0; i < result.basis.size(); ++i) {
        if (result.coefficients[i] == 0)
            continue;
        ++used;
        diff -= expand(arr, result.basis[i]) * result.coefficients[i];
    }
    check.only_basis = result.coefficients.size() == result.basis.size()
                       && Integer(static_cast<long>(used)) <= binomial(static_cast<long>(k) - 2, static_cast<long>(n) - 1);

    Polynomial combination(n);
    for (const auto& entry : result.certificate)
        combination += e_generator(arr, expand(arr, entry.a), entry.mu) * entry.coefficient;
    check.certificate_identity = diff == combination;

    const unsigned r = total_degree(product);
    const DegreeSlice slice(n, r);
    RowSpace span(slice.dimension());
    for (const auto& g : e_generators(arr, r))
        if (!g.is_zero())
            span.insert(slice.coordinates(g));
    check.in_span_of_E = span.contains(slice.coordinates(diff));
    return check;
}

std::vector<Polynomial> milnor_form(const Polynomial& g, unsigned k)
{
    if (!g.is_homogeneous())
        throw PreconditionError("milnor_form: g must be homogeneous");
    if (k == 0)
        throw PreconditionError("milnor_form: k must be positive");
    std::vector<Polynomial> out;
    const std::size_t n = g.ambient();
    for (std::size_t i = 0; i < n; ++i) {
        Rational c = ratio(1, k);
        if (i % 2)
            c = -c;
        out.push_back(Polynomial::variable(n, i) * g * c);
    }
    return out;
}

} // namespace bsat
