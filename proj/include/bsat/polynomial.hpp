#pragma once

#include "bsat/rational.hpp"

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bsat {

/// Exponent vector x^a of fixed length n.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t n) : exps_(n, 0) {}
    explicit Monomial(std::vector<unsigned> exps) : exps_(std::move(exps)) {}

    static Monomial variable(std::size_t n, std::size_t i, unsigned power = 1);

    std::size_t size() const { return exps_.size(); }
    unsigned operator[](std::size_t i) const { return exps_[i]; }
    std::span<const unsigned> exponents() const { return exps_; }
    unsigned degree() const;
    bool is_one() const { return degree() == 0; }

    bool divides(const Monomial& other) const;
    Monomial lcm(const Monomial& other) const;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    /// Requires b.divides(a).
    friend Monomial operator/(const Monomial& a, const Monomial& b);

    friend bool operator==(const Monomial&, const Monomial&) = default;
    /// Plain lexicographic comparison of exponent vectors, for use as a set key.
    friend auto operator<=>(const Monomial&, const Monomial&) = default;

private:
    std::vector<unsigned> exps_;
};

/// Graded reverse lexicographic order with x_1 > ... > x_n.
/// Returns negative, zero or positive like strcmp.
int grevlex_compare(const Monomial& a, const Monomial& b);

struct GrevlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_compare(a, b) > 0; }
};

/// All monomials of total degree d in n variables, grevlex-descending.
std::vector<Monomial> monomials_of_degree(std::size_t n, unsigned d);

/// Sparse polynomial over Q in a fixed number of variables. Terms are kept
/// grevlex-descending, so the first term is the leading term.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational, GrevlexGreater>;

    explicit Polynomial(std::size_t n = 0) : n_(n) {}

    static Polynomial constant(std::size_t n, const Rational& c);
    static Polynomial variable(std::size_t n, std::size_t i);
    static Polynomial term(const Monomial& m, const Rational& c = 1);

    std::size_t ambient() const { return n_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Rational coefficient(const Monomial& m) const;
    void add_term(const Monomial& m, const Rational& c);

    /// Total degree; -1 for the zero polynomial.
    int degree() const;
    bool is_homogeneous() const;
    bool is_constant() const { return degree() <= 0; }

    const Monomial& leading_monomial() const { return terms_.begin()->first; }
    const Rational& leading_coefficient() const { return terms_.begin()->second; }

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o);
    Polynomial& operator*=(const Rational& c);
    Polynomial operator-() const;

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
    friend bool operator==(const Polynomial& a, const Polynomial& b);

    Polynomial pow(unsigned e) const;
    /// Multiply every term by the monomial m.
    Polynomial shifted(const Monomial& m) const;

private:
    void check_same_ring(const Polynomial& o) const;

    std::size_t n_ = 0;
    TermMap terms_;
};

Polynomial partial(const Polynomial& f, std::size_t i);
Polynomial homogeneous_component(const Polynomial& f, unsigned d);

/// Sets variable `var` to `value` (the ring keeps its variable count).
Polynomial substitute(const Polynomial& f, std::size_t var, const Rational& value);

/// f / g when g divides f, otherwise nullopt. g must be nonzero.
std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& g);

/// Re-embeds f into a ring with new_n variables, variable i going to i + offset.
Polynomial embed(const Polynomial& f, std::size_t new_n, std::size_t offset = 0);

/// Default variable names: x,y,z,w for n <= 4, otherwise x1..xn.
std::vector<std::string> default_variable_names(std::size_t n);
std::string to_string(const Polynomial& f, std::span<const std::string> names = {});

} // namespace bsat
