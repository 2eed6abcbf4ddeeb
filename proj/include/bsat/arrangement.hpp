#pragma once

#include "bsat/linalg.hpp"
#include "bsat/polynomial.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace bsat {

/// Sorted list of 0-based hyperplane indices.
using IndexSet = std::vector<std::size_t>;

/// All r-subsets of {0,...,k-1} in lexicographic order.
std::vector<IndexSet> subsets(std::size_t k, std::size_t r);
IndexSet complement(const IndexSet& s, std::size_t k);

/// Linear form sum c_i x_i, scaled so its first nonzero coefficient is 1.
class Hyperplane {
public:
    explicit Hyperplane(std::vector<Rational> coefficients);

    std::size_t ambient() const { return coeffs_.size(); }
    const std::vector<Rational>& coefficients() const { return coeffs_; }
    Polynomial form() const;

    friend bool operator==(const Hyperplane&, const Hyperplane&) = default;
    friend bool operator<(const Hyperplane& a, const Hyperplane& b) { return a.coeffs_ < b.coeffs_; }

private:
    std::vector<Rational> coeffs_;
};

/// Ordered, reduced (pairwise non-proportional) central arrangement in Q^n.
class Arrangement {
public:
    Arrangement(std::size_t n, std::vector<Hyperplane> hyperplanes);

    std::size_t n() const { return n_; }
    std::size_t k() const { return planes_.size(); }
    const std::vector<Hyperplane>& hyperplanes() const { return planes_; }
    const Hyperplane& operator[](std::size_t i) const { return planes_[i]; }
    const Polynomial& form(std::size_t i) const { return forms_[i]; }

    Matrix coefficient_matrix(const IndexSet& idx) const;
    std::size_t rank_of(const IndexSet& idx) const;

    /// Product H_I of the listed forms (1 for the empty set).
    Polynomial product(const IndexSet& idx) const;

    Arrangement subarrangement(const IndexSet& idx) const;

private:
    std::size_t n_;
    std::vector<Hyperplane> planes_;
    std::vector<Polynomial> forms_;
};

/// x_1..x_n followed by (1, t, t^2, ...) for t = 1, 2, ...; every
/// min(k,n)-subset is independent (generalized Vandermonde minors).
/// For k < n only the first k coordinate hyperplanes are used.
Arrangement generic_arrangement(std::size_t n, std::size_t k);

bool is_generic(const Arrangement& a);
/// First min(k,n)-subset that fails to have full rank.
std::optional<IndexSet> dependent_subset(const Arrangement& a);
/// Throws PreconditionError naming the dependent subset.
void require_generic(const Arrangement& a, const char* operation);

Polynomial defining_poly(const Arrangement& a);

/// A constant vector field sum v_l d/dx_l, stored as its coefficient vector.
using VectorField = Vector;
Polynomial apply_field(const VectorField& v, const Polynomial& f);

/// v_1..v_n with v_i(H_{N_j}) = delta_ij, one per element of N in order.
std::vector<VectorField> dual_frame(const Arrangement& a, const IndexSet& N);

/// Jacobian determinant of H_{mu_1}, ..., H_{mu_{n-1}}, f (rows in that order).
Polynomial jacobian_det(const Arrangement& a, const IndexSet& mu, const Polynomial& f);

struct AMonomial {
    std::vector<unsigned> multiplicities;
    Polynomial value;

    unsigned degree() const;
    bool squarefree() const;
    std::size_t distinct_factors() const;
};

AMonomial a_monomial(const Arrangement& a, std::vector<unsigned> multiplicities);

/// Product of the hyperplanes outside mu; |mu| = n-1.
AMonomial q_mu(const Arrangement& a, const IndexSet& mu);

/// Generators H_I, |I| = r, of the ideal of r-fold squarefree products.
std::vector<Polynomial> sigma_r(const Arrangement& a, std::size_t r);

/// The determinant built from the dual frame of N: rows indexed by J, columns
/// by the hyperplanes outside I and N, last column v_j(H_I).
Polynomial delta_JIN(const Arrangement& a, const IndexSet& J, const IndexSet& I, const IndexSet& N);

struct DeltaIndex {
    IndexSet J, I, N;
};

/// Every admissible (J, I, N) with |I| = r, in lexicographic order of I, then
/// N (independent frames only), then J.
std::vector<DeltaIndex> delta_indices(const Arrangement& a, std::size_t r);

/// Determinant generators over all admissible (J, I, N) with |I| = r, followed
/// by all H_I with |I| = r. Zero and repeated polynomials are dropped.
std::vector<Polynomial> delta_r(const Arrangement& a, std::size_t r);

struct Flat {
    IndexSet closure;
    std::size_t rank = 0;
    friend bool operator==(const Flat&, const Flat&) = default;
};

/// Intersection lattice by brute-force closure, sorted by (rank, closure).
std::vector<Flat> flats(const Arrangement& a);

} // namespace bsat
