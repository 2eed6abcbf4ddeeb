#include "bsat/bfunction.hpp"

#include "bsat/errors.hpp"
#include "bsat/groebner.hpp"

#include <algorithm>

namespace bsat {

void BFunction::multiply(const Rational& rho, unsigned m)
{
    if (rho <= 0)
        throw std::invalid_argument("BFunction: shifts must be positive");
    if (m > 0)
        factors_[rho] += m;
}

void BFunction::divide(const Rational& rho)
{
    auto it = factors_.find(rho);
    if (it == factors_.end())
        throw std::invalid_argument("BFunction: factor (s+" + rho.get_str() + ") not present");
    if (--it->second == 0)
        factors_.erase(it);
}

unsigned BFunction::multiplicity(const Rational& rho) const
{
    auto it = factors_.find(rho);
    return it == factors_.end() ? 0 : it->second;
}

unsigned BFunction::degree() const
{
    unsigned d = 0;
    for (const auto& [rho, m] : factors_)
        d += m;
    return d;
}

std::vector<Rational> BFunction::coefficients() const
{
    std::vector<Rational> c{1};
    for (const auto& [rho, m] : factors_) {
        for (unsigned t = 0; t < m; ++t) {
            std::vector<Rational> next(c.size() + 1, 0);
            for (std::size_t i = 0; i < c.size(); ++i) {
                next[i] += c[i] * rho;
                next[i + 1] += c[i];
            }
            c = std::move(next);
        }
    }
    return c;
}

std::string to_string(const BFunction& b)
{
    if (b.factors().empty())
        return "1";
    std::string out;
    for (const auto& [rho, m] : b.factors()) {
        out += "(s+" + to_string(rho) + ")";
        if (m > 1)
            out += "^" + std::to_string(m);
    }
    return out;
}

namespace {

void require_nk(std::size_t n, std::size_t k, const char* op)
{
    if (n < 2 || k < n)
        throw PreconditionError(std::string(op) + ": needs k >= n >= 2");
}

BFunction generic_product(std::size_t n, std::size_t k)
{
    BFunction b;
    for (std::size_t i = 0; i + n + 2 <= 2 * k; ++i)
        b.multiply(ratio(static_cast<long>(i + n), static_cast<long>(k)));
    return b;
}

GroebnerBasis jacobian_ideal(const Polynomial& Q)
{
    std::vector<Polynomial> gens;
    for (std::size_t i = 0; i < Q.ambient(); ++i)
        gens.push_back(partial(Q, i));
    return buchberger(gens);
}

} // namespace

BFunction upper_bound_generic(std::size_t n, std::size_t k)
{
    require_nk(n, k, "upper_bound_generic");
    BFunction b = generic_product(n, k);
    b.multiply(1, static_cast<unsigned>(n - 1));
    return b;
}

BFunction generic_bsat(std::size_t n, std::size_t k, std::size_t r)
{
    require_nk(n, k, "generic_bsat");
    if (r + 1 != n && r + 2 != n)
        throw std::invalid_argument("generic_bsat: r must be n-1 or n-2");
    BFunction b = generic_product(n, k);
    b.multiply(1, static_cast<unsigned>(r));
    return b;
}

BFunction isolated_homog_bsat(const Polynomial& Q)
{
    if (Q.is_zero() || Q.is_constant() || !Q.is_homogeneous())
        throw PreconditionError("isolated_homog_bsat: Q must be homogeneous of positive degree");
    const std::size_t n = Q.ambient();
    const unsigned k = static_cast<unsigned>(Q.degree());
    const GroebnerBasis jac = jacobian_ideal(Q);
    const auto power = min_m_power(jac, static_cast<unsigned>(n) * (k - 1) + 1);
    if (!power)
        throw PreconditionError(
            "isolated_homog_bsat: Jacobian ideal is not Artinian (non-isolated singularity); use generic_bsat");
    BFunction b;
    b.multiply(1);
    for (unsigned d = 0; d < *power; ++d)
        if (hilbert_dim(jac, d) > 0)
            b.multiply(ratio(static_cast<long>(d + n), static_cast<long>(k)));
    return b;
}

long u_q_bound(const BFunction& b, std::size_t n, std::size_t k)
{
    if (k == 0)
        throw std::invalid_argument("u_q_bound: k must be positive");
    long best = -1;
    for (const auto& [rho, m] : b.factors()) {
        const Rational i = rho * static_cast<long>(k) - static_cast<long>(n);
        if (i.get_den() == 1 && i >= 0)
            best = std::max(best, i.get_num().get_si());
    }
    if (best < 0)
        throw PreconditionError("u_q_bound: no root of the form -(i+n)/k with integer i >= 0");
    return best;
}

std::optional<unsigned> inplane_min_power(const Arrangement& a, unsigned cap)
{
    if (a.n() != 2)
        throw PreconditionError("verify_inplane: needs n = 2");
    require_generic(a, "verify_inplane");
    return min_m_power(jacobian_ideal(defining_poly(a)), cap);
}

bool verify_inplane(const Arrangement& a)
{
    if (a.n() != 2)
        throw PreconditionError("verify_inplane: needs n = 2");
    require_generic(a, "verify_inplane");
    return contains_m_power(jacobian_ideal(defining_poly(a)), 2 * static_cast<unsigned>(a.k()) + 1);
}

bool ChainReport::all_passed() const
{
    return std::all_of(items.begin(), items.end(), [](const ChainItem& c) { return c.passed; });
}

ChainReport chain_check(const Arrangement& a)
{
    require_generic(a, "chain_check");
    const std::size_t n = a.n(), k = a.k();
    if (k < n)
        throw PreconditionError("chain_check: needs k >= n");
    const std::size_t low = k - n + 1;

    auto m_power = [&](std::size_t r) {
        std::vector<Polynomial> gens;
        for (const auto& m : monomials_of_degree(n, static_cast<unsigned>(r)))
            gens.push_back(Polynomial::term(m));
        return buchberger(gens);
    };

    ChainReport report;
    for (std::size_t r = 1; r <= low; ++r) {
        const GroebnerBasis sigma = buchberger(sigma_r(a, r));
        report.items.push_back({"sigma_r equals m^r", r, same_ideal(sigma, m_power(r))});
    }
    {
        const GroebnerBasis delta = buchberger(delta_r(a, low));
        report.items.push_back({"delta_r equals m^(r-1)", low, same_ideal(delta, m_power(low - 1))});
        report.delta_top_equality = {"delta_r equals m^r", low, same_ideal(delta, m_power(low))};
    }
    for (std::size_t r = std::max<std::size_t>(low, 2); r <= k; ++r) {
        const GroebnerBasis delta = buchberger(delta_r(a, r));
        const auto sigma_prev = sigma_r(a, r - 1);
        const GroebnerBasis quotient = ideal_quotient(delta, sigma_prev);
        report.items.push_back(
            {"m^(k-n) inside delta_r : sigma_(r-1)", r, contains_m_power(quotient, static_cast<unsigned>(k - n))});
    }
    return report;
}

} // namespace bsat
