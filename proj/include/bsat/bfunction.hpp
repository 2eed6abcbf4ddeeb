#pragma once

#include "bsat/arrangement.hpp"
#include "bsat/polynomial.hpp"
#include "bsat/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bsat {

/// Monic polynomial prod (s + rho)^m stored as its shifts rho > 0 with
/// multiplicities m >= 1.
class BFunction {
public:
    BFunction() = default;

    /// Multiplies by (s + rho)^m. rho must be positive.
    void multiply(const Rational& rho, unsigned m = 1);
    /// Divides by (s + rho) once; the factor must be present.
    void divide(const Rational& rho);

    const std::map<Rational, unsigned>& factors() const { return factors_; }
    unsigned multiplicity(const Rational& rho) const;
    unsigned degree() const;

    /// Coefficients of the expanded polynomial in s, lowest degree first.
    std::vector<Rational> coefficients() const;

    friend bool operator==(const BFunction&, const BFunction&) = default;

private:
    std::map<Rational, unsigned> factors_;
};

/// "(s+1)^2(s+2/3)(s+4/3)", shifts ascending.
std::string to_string(const BFunction& b);

/// (s+1)^{n-1} prod_{i=0}^{2k-n-2} (s+(i+n)/k).
BFunction upper_bound_generic(std::size_t n, std::size_t k);

/// (s+1)^r prod_{i=0}^{2k-n-2} (s+(i+n)/k) for r in {n-1, n-2}.
BFunction generic_bsat(std::size_t n, std::size_t k, std::size_t r);

/// b-function of a homogeneous Q whose Jacobian ideal is Artinian, read off
/// the degrees where R_n / (dQ/dx_1, ..., dQ/dx_n) is nonzero.
BFunction isolated_homog_bsat(const Polynomial& Q);

/// Largest integer i >= 0 with b(-(i+n)/k) = 0.
long u_q_bound(const BFunction& b, std::size_t n, std::size_t k);

/// m^{2k+1} inside the Jacobian ideal of Q, for a generic line arrangement.
bool verify_inplane(const Arrangement& a);

/// Smallest N with m^N inside the Jacobian ideal (n = 2 only), or nullopt up to cap.
std::optional<unsigned> inplane_min_power(const Arrangement& a, unsigned cap);

struct ChainItem {
    std::string name;
    std::size_t r = 0;
    bool passed = false;
};

struct ChainReport {
    /// Statements that hold for every generic arrangement.
    std::vector<ChainItem> items;
    /// Delta_{k-n+1} = m^{k-n+1}. Kept separate because Delta_{k-n+1} always
    /// contains forms of degree k-n, so this equality is false whenever it is
    /// evaluated; `passed` records the computed outcome.
    ChainItem delta_top_equality;
    bool all_passed() const;
};

/// Sigma_r = m^r for 1 <= r <= k-n+1, Delta_{k-n+1} = m^{k-n}, and
/// m^{k-n} inside (Delta_r : Sigma_{r-1}) for k >= r >= max(k-n+1, 2).
ChainReport chain_check(const Arrangement& a);

} // namespace bsat
