#pragma once

#include "bsat/polynomial.hpp"
#include "bsat/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace bsat {

using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;

struct EchelonForm {
    Matrix rows;                      ///< nonzero rows of the reduced echelon form
    std::vector<std::size_t> pivots;  ///< pivot column of each row
    std::size_t rank() const { return rows.size(); }
};

/// Exact reduced row echelon form. Throws DimensionError on ragged input.
EchelonForm rref(std::span<const Vector> rows);
std::size_t rank(std::span<const Vector> rows);

/// Basis of {x : A x = 0} for an m x cols matrix A.
Matrix kernel(std::span<const Vector> rows, std::size_t cols);

/// Some x with A x = b, or nullopt when the system is inconsistent.
std::optional<Vector> solve(std::span<const Vector> rows, const Vector& rhs, std::size_t cols);

Rational determinant(Matrix m);
std::optional<Matrix> inverse(const Matrix& m);
Matrix transpose(const Matrix& m);

/// Row space maintained in reduced echelon form, grown one vector at a time.
class RowSpace {
public:
    explicit RowSpace(std::size_t cols) : cols_(cols) {}

    std::size_t cols() const { return cols_; }
    std::size_t rank() const { return rows_.size(); }
    bool full() const { return rows_.size() == cols_; }

    /// Returns true when v was independent of the current rows.
    bool insert(Vector v);
    /// v minus its projection onto the pivot columns; zero iff v lies in the span.
    Vector reduce(Vector v) const;
    bool contains(const Vector& v) const;

private:
    std::size_t cols_;
    std::vector<Vector> rows_;
    std::vector<std::size_t> pivots_;
};

/// Homogeneous degree-d component (R_n)_d with its grevlex-ordered monomial basis.
class DegreeSlice {
public:
    DegreeSlice(std::size_t n, unsigned degree);

    std::size_t ambient() const { return n_; }
    unsigned degree() const { return degree_; }
    const std::vector<Monomial>& basis() const { return basis_; }
    std::size_t dimension() const { return basis_.size(); }

    /// Coordinates of a homogeneous polynomial of this degree (or zero).
    Vector coordinates(const Polynomial& f) const;
    Polynomial polynomial(const Vector& coords) const;
    std::size_t index_of(const Monomial& m) const;

private:
    std::size_t n_;
    unsigned degree_;
    std::vector<Monomial> basis_;
    std::map<Monomial, std::size_t> index_;
};

/// Rank of the span of homogeneous polynomials of one degree.
std::size_t slice_rank(const DegreeSlice& slice, std::span<const Polynomial> polys);

} // namespace bsat
