#pragma once

#include "bsat/polynomial.hpp"

#include <optional>
#include <span>
#include <vector>

namespace bsat {

enum class MonomialOrder {
    Grevlex,
    /// Block order eliminating variable 0: compare its exponent first, then
    /// grevlex on the remaining variables. Used internally for intersections.
    EliminateFirst,
};

int compare_monomials(MonomialOrder order, const Monomial& a, const Monomial& b);

/// Reduced Groebner basis: monic generators, inter-reduced, sorted by
/// descending leading monomial. Two bases of the same ideal and order compare
/// equal.
class GroebnerBasis {
public:
    GroebnerBasis(std::size_t n, MonomialOrder order, std::vector<Polynomial> gens);

    std::size_t ambient() const { return n_; }
    MonomialOrder order() const { return order_; }
    const std::vector<Polynomial>& generators() const { return gens_; }
    const std::vector<Monomial>& leading_monomials() const { return leads_; }

    bool is_unit() const;
    bool is_homogeneous() const;

    friend bool operator==(const GroebnerBasis& a, const GroebnerBasis& b)
    {
        return a.n_ == b.n_ && a.order_ == b.order_ && a.gens_ == b.gens_;
    }

private:
    std::size_t n_;
    MonomialOrder order_;
    std::vector<Polynomial> gens_;
    std::vector<Monomial> leads_;
};

/// Throws std::invalid_argument("zero ideal") when every generator is zero.
GroebnerBasis buchberger(std::span<const Polynomial> gens, MonomialOrder order = MonomialOrder::Grevlex);

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& g);
bool ideal_contains(const GroebnerBasis& g, const Polynomial& f);
bool same_ideal(const GroebnerBasis& a, const GroebnerBasis& b);

/// True iff every monomial of degree N reduces to zero, i.e. m^N is inside
/// the (homogeneous) ideal.
bool contains_m_power(const GroebnerBasis& g, unsigned N);

/// Smallest N <= cap with m^N inside the ideal, nullopt past the cap.
std::optional<unsigned> min_m_power(const GroebnerBasis& g, unsigned cap);

GroebnerBasis ideal_intersection(const GroebnerBasis& a, const GroebnerBasis& b);

/// (I : <J>) = { g : g*J inside I }. J must contain a nonzero element.
GroebnerBasis ideal_quotient(const GroebnerBasis& I, std::span<const Polynomial> J);

/// dim_Q (R_n / I)_d for a homogeneous ideal, as the number of degree-d
/// monomials minus the rank of the degree-d slice of I.
std::size_t hilbert_dim(const GroebnerBasis& I, unsigned d);

/// Degree-d monomials not divisible by any leading monomial of the basis.
std::vector<Monomial> standard_monomials(const GroebnerBasis& g, unsigned d);

} // namespace bsat
