#pragma once

#include "bsat/arrangement.hpp"
#include "bsat/bfunction.hpp"
#include "bsat/polynomial.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>

namespace bsat {

/// Polynomial in the single variable s (ambient 1).
using SPoly = Polynomial;

SPoly s_constant(const Rational& c);
SPoly s_variable();

/// Element of D_n[s] in normal order: sum c_{alpha,beta}(s) x^alpha d^beta.
class WeylOperator {
public:
    using Key = std::pair<Monomial, Monomial>;  ///< (alpha, beta)

    explicit WeylOperator(std::size_t n = 0) : n_(n) {}

    static WeylOperator constant(std::size_t n, const Rational& c);
    static WeylOperator x(std::size_t n, std::size_t i);
    static WeylOperator d(std::size_t n, std::size_t i);
    /// The central element s.
    static WeylOperator s(std::size_t n);
    /// Multiplication by a polynomial in x.
    static WeylOperator multiplication(const Polynomial& f);
    /// sum v_l d_l for a constant vector field.
    static WeylOperator field(const VectorField& v);
    /// x_1 d_1 + ... + x_n d_n.
    static WeylOperator euler(std::size_t n);

    std::size_t ambient() const { return n_; }
    const std::map<Key, SPoly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Highest |beta|; -1 for the zero operator.
    int order() const;

    void add_term(const Monomial& alpha, const Monomial& beta, const SPoly& c);

    WeylOperator& operator+=(const WeylOperator& o);
    WeylOperator& operator-=(const WeylOperator& o);
    friend WeylOperator operator+(WeylOperator a, const WeylOperator& b) { return a += b; }
    friend WeylOperator operator-(WeylOperator a, const WeylOperator& b) { return a -= b; }
    /// Composition, re-normal-ordered with d_i x_i = x_i d_i + 1.
    friend WeylOperator operator*(const WeylOperator& a, const WeylOperator& b);
    friend WeylOperator operator*(const SPoly& c, const WeylOperator& a);
    friend bool operator==(const WeylOperator&, const WeylOperator&) = default;

private:
    void check_same(const WeylOperator& o) const;

    std::size_t n_;
    std::map<Key, SPoly> terms_;
};

/// Names x,y,... for variables and dx,dy,... for derivations.
std::string to_string(const WeylOperator& p);

/// sum_j g_j(x, s) Q^{-j} Q^s. Numerators live in n+1 variables, s last.
class TwistedElement {
public:
    TwistedElement(Polynomial Q, std::map<unsigned, Polynomial> parts);

    /// Q^s.
    static TwistedElement power(const Polynomial& Q);
    /// g Q^{-j} Q^s for g in x only.
    static TwistedElement monomial_times(const Polynomial& Q, const Polynomial& g, unsigned pole = 0);

    const Polynomial& Q() const { return q_; }
    std::size_t ambient() const { return q_.ambient(); }
    const std::map<unsigned, Polynomial>& parts() const { return parts_; }

    /// Single numerator over Q^{top}, top = highest pole order present.
    std::pair<unsigned, Polynomial> common_numerator() const;
    bool is_zero() const;

    /// Substitutes s = value in every numerator.
    TwistedElement at_s(const Rational& value) const;
    /// Multiplies every numerator by a polynomial in (x, s).
    TwistedElement scaled(const Polynomial& xs) const;

    TwistedElement& operator+=(const TwistedElement& o);
    friend TwistedElement operator+(TwistedElement a, const TwistedElement& b) { return a += b; }
    friend TwistedElement operator-(const TwistedElement& a, const TwistedElement& b);
    friend bool operator==(const TwistedElement& a, const TwistedElement& b);

private:
    void check_same(const TwistedElement& o) const;
    void prune();

    Polynomial q_;
    std::map<unsigned, Polynomial> parts_;
};

/// Polynomial in x lifted to the (x, s) ring.
Polynomial lift_x(const Polynomial& f);
/// Polynomial in s lifted to the (x, s) ring with n x-variables.
Polynomial lift_s(const SPoly& c, std::size_t n);
/// Coefficient of s^t of an (x, s) polynomial, as a polynomial in x.
Polynomial s_coefficient(const Polynomial& xs, unsigned t);

/// x_i multiplies numerators, s multiplies coefficients and
/// d_i (g Q^{-j} Q^s) = (d_i g) Q^{-j} Q^s + (s - j) g (d_i Q) Q^{-j-1} Q^s.
TwistedElement apply(const WeylOperator& p, const TwistedElement& e);

/// b(s) as an s-polynomial.
SPoly as_s_polynomial(const BFunction& b);

struct FunctionalEquationSearch {
    std::size_t order_cap = 0;      ///< 0 selects k + n
    std::optional<unsigned> s_degree_cap;  ///< defaults to deg b
};

/// P with P Q^{s+1} = b(s) Q^s, searched over terms s^t x^alpha d^beta with
/// |alpha| - |beta| = -deg Q by exact linear solve, order by order. The
/// returned operator has been re-applied and checked. nullopt when no such P
/// exists within the caps, which proves nothing.
std::optional<WeylOperator> certify_functional_equation(const Polynomial& Q, const BFunction& b,
                                                        FunctionalEquationSearch caps = {});

/// sum_i d_i (x_i m g Q^s) == m g (k s + n + deg(m g)) Q^s.
bool euler_identity_check(const Polynomial& Q, const Polynomial& g, const Monomial& m);

/// Finds the combination of v_j (m H_I Q^s), j in J, with no pole and checks
/// that it equals (s+1) m c Delta_{J,I,N} Q^s + (sum lambda_j v_j(m)) H_I Q^s
/// for the scalar c fixed by the combination.
bool delta_production_check(const Arrangement& a, const Monomial& m, const IndexSet& I, const IndexSet& J,
                            const IndexSet& N);

/// (H_i H_j / (H_1 ... H_n)) (v_i(Q') v_j - v_j(Q') v_i) composed with
/// multiplication by Q / Q'. Q' is the product over `sub`; H_1..H_n are the
/// first n independent hyperplanes of `sub` and i, j index that frame.
WeylOperator pij_operator(const Arrangement& a, std::size_t i, std::size_t j, const IndexSet& sub);

/// Q''^{s+1} P Q''^{-s} for a first-order P: Q'' P - s (P - P(0))(Q'').
WeylOperator conjugate_first_order(const WeylOperator& p, const Polynomial& q2);

/// sum w_i x_i d_i f == f.
bool weighted_euler_check(const Polynomial& f, const std::vector<Rational>& w);

} // namespace bsat
