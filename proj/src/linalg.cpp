#include "bsat/linalg.hpp"

#include "bsat/errors.hpp"

#include <algorithm>

namespace bsat {

namespace {

std::size_t common_width(std::span<const Vector> rows)
{
    if (rows.empty())
        return 0;
    const std::size_t w = rows.front().size();
    for (const auto& r : rows)
        if (r.size() != w)
            throw DimensionError("ragged matrix: rows of length " + std::to_string(w) + " and "
                                 + std::to_string(r.size()));
    return w;
}

// In-place Gauss-Jordan; returns pivot columns of the leading rows.
std::vector<std::size_t> gauss_jordan(Matrix& a, std::size_t cols)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
        std::size_t p = row;
        while (p < a.size() && a[p][col] == 0)
            ++p;
        if (p == a.size())
            continue;
        std::swap(a[row], a[p]);
        const Rational inv = 1 / a[row][col];
        for (std::size_t j = col; j < cols; ++j)
            a[row][j] *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == row || a[i][col] == 0)
                continue;
            const Rational f = a[i][col];
            for (std::size_t j = col; j < cols; ++j)
                if (a[row][j] != 0)
                    a[i][j] -= f * a[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    a.resize(row);
    return pivots;
}

} // namespace

EchelonForm rref(std::span<const Vector> rows)
{
    const std::size_t cols = common_width(rows);
    EchelonForm e;
    e.rows.assign(rows.begin(), rows.end());
    e.pivots = gauss_jordan(e.rows, cols);
    return e;
}

std::size_t rank(std::span<const Vector> rows)
{
    return rref(rows).rank();
}

Matrix kernel(std::span<const Vector> rows, std::size_t cols)
{
    if (!rows.empty() && common_width(rows) != cols)
        throw DimensionError("kernel: column count mismatch");
    Matrix a(rows.begin(), rows.end());
    const auto pivots = gauss_jordan(a, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots)
        is_pivot[p] = true;
    Matrix basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free])
            continue;
        Vector v(cols, Rational(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -a[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vector> solve(std::span<const Vector> rows, const Vector& rhs, std::size_t cols)
{
    if (rhs.size() != rows.size())
        throw DimensionError("solve: right-hand side length mismatch");
    Matrix aug;
    aug.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw DimensionError("solve: ragged matrix");
        Vector r = rows[i];
        r.push_back(rhs[i]);
        aug.push_back(std::move(r));
    }
    const auto pivots = gauss_jordan(aug, cols + 1);
    if (!pivots.empty() && pivots.back() == cols)
        return std::nullopt;
    Vector x(cols, Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r)
        x[pivots[r]] = aug[r][cols];
    return x;
}

Rational determinant(Matrix m)
{
    const std::size_t n = m.size();
    for (const auto& r : m)
        if (r.size() != n)
            throw DimensionError("determinant: matrix is not square");
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && m[p][col] == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != col) {
            std::swap(m[p], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t i = col + 1; i < n; ++i) {
            if (m[i][col] == 0)
                continue;
            const Rational f = m[i][col] / m[col][col];
            for (std::size_t j = col; j < n; ++j)
                m[i][j] -= f * m[col][j];
        }
    }
    return det;
}

std::optional<Matrix> inverse(const Matrix& m)
{
    const std::size_t n = m.size();
    Matrix aug;
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i].size() != n)
            throw DimensionError("inverse: matrix is not square");
        Vector r = m[i];
        r.resize(2 * n, Rational(0));
        r[n + i] = 1;
        aug.push_back(std::move(r));
    }
    const auto pivots = gauss_jordan(aug, 2 * n);
    if (pivots.size() < n || pivots[n - 1] != n - 1)
        return std::nullopt;
    Matrix inv(n, Vector(n));
    for (std::size_t i = 0; i < n; ++i)
        std::copy(aug[i].begin() + static_cast<long>(n), aug[i].end(), inv[i].begin());
    return inv;
}

Matrix transpose(const Matrix& m)
{
    if (m.empty())
        return {};
    const std::size_t cols = common_width(m);
    Matrix t(cols, Vector(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j)
            t[j][i] = m[i][j];
    return t;
}

Vector RowSpace::reduce(Vector v) const
{
    if (v.size() != cols_)
        throw DimensionError("RowSpace: vector length mismatch");
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const std::size_t p = pivots_[r];
        if (v[p] == 0)
            continue;
        const Rational f = v[p];
        const Vector& row = rows_[r];
        for (std::size_t j = p; j < cols_; ++j)
            if (row[j] != 0)
                v[j] -= f * row[j];
    }
    return v;
}

bool RowSpace::contains(const Vector& v) const
{
    const Vector rest = reduce(v);
    return std::all_of(rest.begin(), rest.end(), [](const Rational& q) { return q == 0; });
}

bool RowSpace::insert(Vector v)
{
    v = reduce(std::move(v));
    auto it = std::find_if(v.begin(), v.end(), [](const Rational& q) { return q != 0; });
    if (it == v.end())
        return false;
    const std::size_t p = static_cast<std::size_t>(it - v.begin());
    const Rational inv = 1 / v[p];
    for (std::size_t j = p; j < cols_; ++j)
        v[j] *= inv;
    // Keep the stored rows fully reduced against the new pivot.
    for (auto& row : rows_) {
        if (row[p] == 0)
            continue;
        const Rational f = row[p];
        for (std::size_t j = p; j < cols_; ++j)
            if (v[j] != 0)
                row[j] -= f * v[j];
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p);
    const auto idx = pos - pivots_.begin();
    pivots_.insert(pos, p);
    rows_.insert(rows_.begin() + idx, std::move(v));
    return true;
}

DegreeSlice::DegreeSlice(std::size_t n, unsigned degree)
    : n_(n), degree_(degree), basis_(monomials_of_degree(n, degree))
{
    for (std::size_t i = 0; i < basis_.size(); ++i)
        index_.emplace(basis_[i], i);
}

std::size_t DegreeSlice::index_of(const Monomial& m) const
{
    auto it = index_.find(m);
    if (it == index_.end())
        throw DimensionError("monomial is not in the degree-" + std::to_string(degree_) + " slice");
    return it->second;
}

Vector DegreeSlice::coordinates(const Polynomial& f) const
{
    if (f.ambient() != n_)
        throw DimensionError("DegreeSlice: polynomial ring mismatch");
    Vector v(basis_.size(), Rational(0));
    for (const auto& [m, c] : f.terms())
        v[index_of(m)] = c;
    return v;
}

Polynomial DegreeSlice::polynomial(const Vector& coords) const
{
    if (coords.size() != basis_.size())
        throw DimensionError("DegreeSlice: coordinate length mismatch");
    Polynomial p(n_);
    for (std::size_t i = 0; i < coords.size(); ++i)
        p.add_term(basis_[i], coords[i]);
    return p;
}

std::size_t slice_rank(const DegreeSlice& slice, std::span<const Polynomial> polys)
{
    RowSpace space(slice.dimension());
    for (const auto& p : polys) {
        if (space.full())
            break;
        space.insert(slice.coordinates(p));
    }
    return space.rank();
}

} // namespace bsat
