#include "bsat/errors.hpp"
#include "bsat/weyl.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace bsat;
using bsat::testing::Gen;
using bsat::testing::make_arrangement;
using bsat::testing::X;

namespace {

WeylOperator random_operator(Gen& g, std::size_t n)
{
    WeylOperator p(n);
    const long terms = g.integer(1, 3);
    for (long t = 0; t < terms; ++t) {
        const Monomial alpha = g.monomial(n, static_cast<unsigned>(g.integer(0, 2)));
        const Monomial beta = g.monomial(n, static_cast<unsigned>(g.integer(0, 2)));
        SPoly c = s_constant(g.rational());
        if (g.coin())
            c += s_variable() * g.rational();
        p.add_term(alpha, beta, c);
    }
    return p;
}

TwistedElement random_element(Gen& g, const Polynomial& q)
{
    const std::size_t n = q.ambient();
    TwistedElement e = TwistedElement::monomial_times(q, g.polynomial(n, 2, 2));
    e += TwistedElement::monomial_times(q, g.polynomial(n, 2, 2), 1).scaled(
        Polynomial::variable(n + 1, n) + Polynomial::constant(n + 1, g.rational()));
    return e;
}

} // namespace

TEST_CASE("normal ordering")
{
    const auto x = WeylOperator::x(1, 0), d = WeylOperator::d(1, 0);
    CHECK(d * x - x * d == WeylOperator::constant(1, 1));
    CHECK(to_string(d * x) == "1 + x*dx");
    const auto dd = d * d, xx = x * x;
    // d^2 x^2 = x^2 d^2 + 4 x d + 2
    CHECK(dd * xx == xx * dd + WeylOperator::constant(1, 4) * x * d + WeylOperator::constant(1, 2));
    CHECK(WeylOperator::euler(2).order() == 1);
    CHECK(WeylOperator(2).order() == -1);
}

TEST_CASE("applying derivations to powers of Q")
{
    const auto x = X(2, 0), y = X(2, 1);
    const auto q = x * y;
    const auto e = apply(WeylOperator::d(2, 0), TwistedElement::power(q));
    const auto expected = TwistedElement::monomial_times(q, y, 1).scaled(Polynomial::variable(3, 2));
    CHECK(e == expected);
}

TEST_CASE("the Euler operator minus k s kills Q^s")
{
    const auto x = X(2, 0), y = X(2, 1);
    const auto q = x * y * (x + y);
    const auto p = WeylOperator::euler(2) - s_constant(3) * WeylOperator::s(2);
    CHECK(apply(p, TwistedElement::power(q)).is_zero());
    for (auto [n, k] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 4}, {3, 4}, {3, 5}}) {
        const auto qk = defining_poly(generic_arrangement(n, k));
        const auto pk = WeylOperator::euler(n) - s_constant(static_cast<long>(k)) * WeylOperator::s(n);
        CHECK(apply(pk, TwistedElement::power(qk)).is_zero());
    }
}

TEST_CASE("twisted elements compare by cross-multiplication")
{
    const auto x = X(2, 0), y = X(2, 1);
    const auto q = x * y;
    const auto a = TwistedElement::monomial_times(q, x * y, 1);
    const auto b = TwistedElement::monomial_times(q, Polynomial::constant(2, 1));
    CHECK(a == b);
    CHECK((a - b).is_zero());
    CHECK_THROWS(a + TwistedElement::power(x));
}

TEST_CASE("property: commutator [d_i, x_i] acts as the identity")
{
    Gen g(51);
    const auto q = defining_poly(generic_arrangement(2, 3));
    for (int trial = 0; trial < 10; ++trial) {
        const auto e = random_element(g, q);
        for (std::size_t i = 0; i < 2; ++i) {
            const auto dx = WeylOperator::d(2, i) * WeylOperator::x(2, i);
            const auto xd = WeylOperator::x(2, i) * WeylOperator::d(2, i);
            CHECK(apply(dx - xd, e) == e);
            CHECK(apply(WeylOperator::d(2, i), apply(WeylOperator::x(2, i), e))
                      - apply(WeylOperator::x(2, i), apply(WeylOperator::d(2, i), e))
                  == e);
        }
    }
}

TEST_CASE("property: application respects composition, addition and s-linearity")
{
    Gen g(52);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = static_cast<std::size_t>(g.integer(1, 2));
        const auto a = generic_arrangement(n, n == 1 ? 1 : n + 1);
        const auto q = defining_poly(a);
        const auto p = random_operator(g, n), r = random_operator(g, n);
        const auto e = random_element(g, q);
        CHECK(apply(p * r, e) == apply(p, apply(r, e)));
        CHECK(apply(p + r, e) == apply(p, e) + apply(r, e));
        const SPoly c = s_variable() + s_constant(g.rational());
        CHECK(apply(c * p, e) == apply(p, e).scaled(lift_s(c, n)));
        CHECK((p * r) * p == p * (r * p));
    }
}

TEST_CASE("property: Leibniz rule for derivations against multiplication")
{
    Gen g(53);
    const auto q = defining_poly(generic_arrangement(3, 4));
    for (int trial = 0; trial < 10; ++trial) {
        const auto f = g.polynomial(3, 2, 3);
        const auto e = random_element(g, q);
        for (std::size_t i = 0; i < 3; ++i) {
            const auto lhs = apply(WeylOperator::d(3, i), apply(WeylOperator::multiplication(f), e));
            const auto rhs = apply(WeylOperator::multiplication(partial(f, i)), e)
                             + apply(WeylOperator::multiplication(f), apply(WeylOperator::d(3, i), e));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("functional equations are certified")
{
    const auto x1 = X(1, 0);
    BFunction b1;
    b1.multiply(1);
    const auto p1 = certify_functional_equation(x1, b1);
    REQUIRE(p1);
    CHECK(*p1 == WeylOperator::d(1, 0));

    for (std::size_t n = 2; n <= 3; ++n) {
        Polynomial q(n);
        WeylOperator lap(n);
        for (std::size_t i = 0; i < n; ++i) {
            q += X(n, i) * X(n, i);
            lap += WeylOperator::d(n, i) * WeylOperator::d(n, i);
        }
        BFunction b;
        b.multiply(1);
        b.multiply(ratio(static_cast<long>(n), 2));
        const auto p = certify_functional_equation(q, b);
        REQUIRE(p);
        CHECK(*p == s_constant(ratio(1, 4)) * lap);
        const auto back = apply(*p, TwistedElement::power(q).scaled(lift_x(q)));
        CHECK(back == TwistedElement::power(q).scaled(lift_s(as_s_polynomial(b), n)));
    }

    const auto x = X(2, 0), y = X(2, 1);
    BFunction b2;
    b2.multiply(1, 2);
    const auto p2 = certify_functional_equation(x * y, b2);
    REQUIRE(p2);
    CHECK(*p2 == WeylOperator::d(2, 0) * WeylOperator::d(2, 1));
}

TEST_CASE("searches that cannot succeed report nothing")
{
    const auto x = X(2, 0), y = X(2, 1);
    BFunction too_small;
    too_small.multiply(1);
    CHECK_FALSE(certify_functional_equation(x * y, too_small));
}

TEST_CASE("1/Q generates 1/Q^2 for three lines")
{
    // P(s) Q^{s+1} = b(s) Q^s at s = -2 gives P(-2) (1/Q) = b(-2) / Q^2, and
    // b(-2) is nonzero because -1 is the only integral root.
    const auto a = generic_arrangement(2, 3);
    const auto q = defining_poly(a);
    const auto b = generic_bsat(2, 3, 1);
    const auto p = certify_functional_equation(q, b);
    REQUIRE(p);
    Rational b_at = 0, power = 1;
    for (const auto& c : b.coefficients()) {
        b_at += c * power;
        power *= -2;
    }
    CHECK(b_at != 0);
    const auto lhs = apply(*p, TwistedElement::power(q).scaled(lift_x(q))).at_s(-2);
    const auto rhs = TwistedElement::power(q).at_s(-2).scaled(Polynomial::constant(3, b_at));
    CHECK(lhs == rhs);
}

TEST_CASE("Euler identity")
{
    const auto x = X(2, 0), y = X(2, 1);
    const auto q = x * y * (x + y);
    CHECK(euler_identity_check(q, Polynomial::constant(2, 1), Monomial(2)));
    CHECK(euler_identity_check(q, x, Monomial::variable(2, 1)));
    Gen g(54);
    for (int trial = 0; trial < 10; ++trial) {
        const auto gg = g.homogeneous(2, static_cast<unsigned>(g.integer(0, 3)), 3);
        CHECK(euler_identity_check(q, gg, g.monomial(2, static_cast<unsigned>(g.integer(0, 2)))));
    }
}

TEST_CASE("determinant production")
{
    const auto a = make_arrangement(2, {{1, 0}, {0, 1}, {1, 1}});
    CHECK(delta_production_check(a, Monomial(2), {0, 1}, {0, 1}, {0, 1}));
    CHECK(delta_production_check(a, Monomial::variable(2, 0), {0, 1}, {0, 1}, {0, 1}));
    // m H_I is a multiple of Q here, so every pole residue vanishes.
    CHECK(delta_production_check(a, Monomial::variable(2, 0), {1, 2}, {1, 2}, {1, 2}));
}

TEST_CASE("annihilating operators")
{
    const auto two = make_arrangement(2, {{1, 0}, {0, 1}});
    const auto x = X(2, 0), y = X(2, 1);
    const auto p = pij_operator(two, 0, 1, {0, 1});
    CHECK(p == WeylOperator::multiplication(y) * WeylOperator::d(2, 1)
                   - WeylOperator::multiplication(x) * WeylOperator::d(2, 0));
    CHECK(apply(p, TwistedElement::power(x * y)).is_zero());

    const auto three = generic_arrangement(2, 3);
    const auto q = defining_poly(three);
    CHECK(apply(pij_operator(three, 0, 1, {0, 1, 2}), TwistedElement::power(q)).is_zero());
    CHECK(apply(pij_operator(three, 1, 0, {0, 1, 2}), TwistedElement::power(q)).is_zero());
    CHECK_THROWS_AS(pij_operator(three, 0, 0, {0, 1, 2}), PreconditionError);
    CHECK_THROWS_AS(pij_operator(three, 0, 1, {0}), PreconditionError);
}

TEST_CASE("property: annihilators of sub-arrangements, at s = -1 and conjugated")
{
    for (auto [n, k] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 3}, {2, 4}, {3, 4}, {3, 5}}) {
        const auto a = generic_arrangement(n, k);
        const auto q = defining_poly(a);
        const auto qs = TwistedElement::power(q);
        IndexSet all;
        for (std::size_t t = 0; t < k; ++t)
            all.push_back(t);
        for (std::size_t drop = 0; drop < k; ++drop) {
            IndexSet sub;
            for (auto t : all)
                if (t != drop)
                    sub.push_back(t);
            IndexSet local;
            for (std::size_t t = 0; t < sub.size(); ++t)
                local.push_back(t);
            const auto subarr = a.subarrangement(sub);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    if (i == j)
                        continue;
                    CHECK(apply(pij_operator(a, i, j, sub), qs).at_s(-1).is_zero());
                    CHECK(apply(conjugate_first_order(pij_operator(subarr, i, j, local), a.form(drop)), qs).is_zero());
                }
        }
    }
}

TEST_CASE("weighted homogeneity")
{
    const auto x = X(4, 0), y = X(4, 1), z = X(4, 2), w = X(4, 3);
    const auto f = x * x * x + y * y * y + z * z * w;
    const Rational t = ratio(1, 3);
    CHECK(weighted_euler_check(f, {t, t, t, t}));
    CHECK(weighted_euler_check(f, {t, t, ratio(1, 2), 0}));
    const auto g = X(2, 0) * X(2, 0) + X(2, 1) * X(2, 1) * X(2, 1);
    CHECK_FALSE(weighted_euler_check(g, {ratio(1, 2), ratio(1, 2)}));
    CHECK(weighted_euler_check(g, {ratio(1, 2), ratio(1, 3)}));
}
