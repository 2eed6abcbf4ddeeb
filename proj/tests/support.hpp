#pragma once

#include "bsat/arrangement.hpp"
#include "bsat/polynomial.hpp"

#include <algorithm>
#include <random>

namespace bsat::testing {

/// Small deterministic generators for property tests. Every test seeds its own
/// instance so failures reproduce.
class Gen {
public:
    explicit Gen(unsigned seed) : rng_(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
    bool coin() { return integer(0, 1) == 1; }

    Rational rational(long span = 5, long max_den = 3)
    {
        return ratio(integer(-span, span), integer(1, max_den));
    }

    Monomial monomial(std::size_t n, unsigned degree)
    {
        std::vector<unsigned> e(n, 0);
        for (unsigned d = 0; d < degree; ++d)
            ++e[static_cast<std::size_t>(integer(0, static_cast<long>(n) - 1))];
        return Monomial(std::move(e));
    }

    Polynomial polynomial(std::size_t n, unsigned max_degree, std::size_t terms)
    {
        Polynomial p(n);
        for (std::size_t t = 0; t < terms; ++t)
            p.add_term(monomial(n, static_cast<unsigned>(integer(0, max_degree))), rational());
        return p;
    }

    Polynomial homogeneous(std::size_t n, unsigned degree, std::size_t terms)
    {
        Polynomial p(n);
        for (std::size_t t = 0; t < terms; ++t)
            p.add_term(monomial(n, degree), rational());
        return p;
    }

    /// Random invertible integer matrix, as a product of elementary moves.
    Matrix invertible(std::size_t n)
    {
        Matrix m(n, Vector(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            m[i][i] = integer(0, 1) ? 1 : -1;
        for (int step = 0; step < 3 * static_cast<int>(n); ++step) {
            const auto i = static_cast<std::size_t>(integer(0, static_cast<long>(n) - 1));
            const auto j = static_cast<std::size_t>(integer(0, static_cast<long>(n) - 1));
            if (i == j)
                continue;
            const Rational c = integer(-2, 2);
            for (std::size_t col = 0; col < n; ++col)
                m[i][col] += c * m[j][col];
        }
        return m;
    }

    template <typename T>
    void shuffle(std::vector<T>& v)
    {
        std::shuffle(v.begin(), v.end(), rng_);
    }

    std::mt19937& engine() { return rng_; }

private:
    std::mt19937 rng_;
};

inline Arrangement make_arrangement(std::size_t n, std::initializer_list<std::initializer_list<long>> rows)
{
    std::vector<Hyperplane> hs;
    for (const auto& row : rows) {
        std::vector<Rational> c;
        for (long v : row)
            c.emplace_back(v);
        hs.emplace_back(std::move(c));
    }
    return Arrangement(n, std::move(hs));
}

/// Hyperplane coefficients transformed by x -> M x (each row c becomes c M).
inline Arrangement transform(const Arrangement& a, const Matrix& m)
{
    std::vector<Hyperplane> hs;
    for (const auto& h : a.hyperplanes()) {
        std::vector<Rational> c(a.n(), 0);
        for (std::size_t j = 0; j < a.n(); ++j)
            for (std::size_t i = 0; i < a.n(); ++i)
                c[j] += h.coefficients()[i] * m[i][j];
        hs.emplace_back(std::move(c));
    }
    return Arrangement(a.n(), std::move(hs));
}

inline Polynomial X(std::size_t n, std::size_t i)
{
    return Polynomial::variable(n, i);
}

inline Polynomial C(std::size_t n, long c)
{
    return Polynomial::constant(n, c);
}

} // namespace bsat::testing
