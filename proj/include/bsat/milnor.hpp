#pragma once

#include "bsat/arrangement.hpp"
#include "bsat/polynomial.hpp"

#include <cstddef>
#include <map>
#include <vector>

namespace bsat {

/// Multiplicity vector of an A-monomial, one entry per hyperplane.
using AExponents = std::vector<unsigned>;

/// deg(a) * a * J_mu(Q_mu) - k * Q_mu * J_mu(a) for homogeneous a.
Polynomial e_generator(const Arrangement& arr, const Polynomial& a, const IndexSet& mu);

/// All generators of E in degree r, from monomials a of degree r-k+n and all
/// (n-1)-subsets mu (mu-major order). Zero generators are kept.
std::vector<Polynomial> e_generators(const Arrangement& arr, unsigned r);

/// dim (R_n)_r - dim E_r.
std::size_t graded_dim_mod_E(const Arrangement& arr, unsigned r);

/// Graded dimensions of R_n / (E + (Q-1)R_n) under the degree filtration.
struct CohomologyProfile {
    std::size_t n = 0, k = 0;
    std::vector<std::size_t> u;  ///< u[r] for r = 0..r_max
    std::size_t total = 0;
};

/// Each residue class of degrees mod k is computed as a direct limit of
/// (R_n)_{c+Mk} under multiplication by Q, with M raised until the graded
/// dimensions stop changing.
CohomologyProfile u_profile(const Arrangement& arr, unsigned r_max);

/// C(k-2, n-2) + k C(k-2, n-1).
Integer or_dimension(long n, long k);

/// Conjectured dimension of the degree-r piece; 0 outside 0 <= r <= 2k-n-2.
Integer conjectured_u(long n, long k, long r);

/// Relation E(a, mu) written in A-monomials:
/// sum over i outside mu of (deg a - k a_i) J_mu(H_i) * a Q_mu / H_i.
std::map<AExponents, Rational> relation_in_a_monomials(const Arrangement& arr, const AExponents& a,
                                                       const IndexSet& mu);

/// Checks that E(a, mu), for an A-monomial a with k not dividing deg a, is
/// supported on exactly the k-n+1 A-monomials a Q_mu / H_i with nonzero
/// coefficients, and that this expansion matches the polynomial generator.
bool relation_structure_check(const Arrangement& arr, const AExponents& a, const IndexSet& mu);

/// H_{i_1}...H_{i_{k-n-1}} H_{k-1} H_k^{r-k+n} with i_1 < ... < i_{k-n-1} < k-1.
std::vector<AExponents> basis_monomials(std::size_t n, std::size_t k, unsigned r);

struct CertificateEntry {
    Rational coefficient;
    AExponents a;  ///< the relation's multiplier, as an A-monomial
    IndexSet mu;
};

struct RewriteResult {
    std::vector<AExponents> basis;       ///< basis_monomials(n, k, r)
    std::vector<Rational> coefficients;  ///< one per basis element
    std::vector<CertificateEntry> certificate;
};

/// Rewrites the standard product P modulo E onto basis_monomials. On return
///   P = sum c_b b + sum coefficient * E(a, mu)
/// holds exactly.
RewriteResult rewrite_to_basis(const Arrangement& arr, const AExponents& product);

struct RewriteCheck {
    bool certificate_identity = false;  ///< P - sum c_b b equals the certificate combination
    bool in_span_of_E = false;          ///< P - sum c_b b lies in span E_r, by rank test
    bool only_basis = false;            ///< at most C(k-2, n-1) nonzero coefficients
    bool ok() const { return certificate_identity && in_span_of_E && only_basis; }
};

RewriteCheck verify_rewrite(const Arrangement& arr, const AExponents& product, const RewriteResult& result);

/// Coefficients of g * omega / k on dx_1 ^ ... (dx_i omitted) ... ^ dx_n:
/// component i is (-1)^i x_i g / k (0-based i).
std::vector<Polynomial> milnor_form(const Polynomial& g, unsigned k);

} // namespace bsat
