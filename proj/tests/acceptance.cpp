// Acceptance run: one PASS/FAIL line per criterion, sub-results indented
// underneath. Exit status is nonzero if any criterion fails, except for the
// literal determinant-ideal equality, which is a recorded deviation (see README).

#include "bsat/bfunction.hpp"
#include "bsat/length.hpp"
#include "bsat/milnor.hpp"
#include "bsat/weyl.hpp"
#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace bsat;
using bsat::testing::Gen;
using bsat::testing::make_arrangement;
using bsat::testing::transform;
using bsat::testing::X;

namespace {

using Grid = std::vector<std::pair<std::size_t, std::size_t>>;
const Grid milnor_grid{{2, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 5}};

struct Outcome {
    bool passed = true;
    bool recorded_deviation = false;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what)
    {
        passed &= ok;
        notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    }
};

std::string nk(std::size_t n, std::size_t k)
{
    return "(" + std::to_string(n) + "," + std::to_string(k) + ")";
}

std::vector<AExponents> standard_products(std::size_t n, std::size_t k, unsigned r)
{
    std::vector<AExponents> out;
    AExponents cur(k, 0);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
        if (i + 1 == k) {
            cur[i] = left;
            std::size_t distinct = 0;
            for (auto e : cur)
                distinct += e > 0;
            if (distinct >= k - n + 1)
                out.push_back(cur);
            return;
        }
        for (unsigned e = 0; e <= left; ++e) {
            cur[i] = e;
            rec(i + 1, left - e);
        }
    };
    rec(0, r);
    return out;
}

Outcome bfunction_cross_validation()
{
    Outcome o;
    for (std::size_t k = 3; k <= 6; ++k) {
        const auto iso = isolated_homog_bsat(defining_poly(generic_arrangement(2, k)));
        const auto gen = generic_bsat(2, k, 1);
        o.require(iso == gen, "k=" + std::to_string(k) + ": " + to_string(iso) + " vs " + to_string(gen));
    }
    return o;
}

Outcome milnor_totals(std::vector<CohomologyProfile>& profiles)
{
    Outcome o;
    for (auto [n, k] : milnor_grid) {
        profiles.push_back(u_profile(generic_arrangement(n, k), static_cast<unsigned>(2 * k - n)));
        const auto& p = profiles.back();
        o.require(Integer(static_cast<long>(p.total)) == or_dimension(static_cast<long>(n), static_cast<long>(k)),
                  nk(n, k) + " total " + std::to_string(p.total));
    }
    return o;
}

Outcome nonvanishing_window(const std::vector<CohomologyProfile>& profiles)
{
    Outcome o;
    for (const auto& p : profiles) {
        const long top = 2 * static_cast<long>(p.k) - static_cast<long>(p.n) - 2;
        bool ok = true;
        for (long r = 0; r < static_cast<long>(p.u.size()); ++r)
            ok &= (p.u[r] != 0) == (r <= top);
        o.require(ok, nk(p.n, p.k) + " nonzero exactly on 0.." + std::to_string(top));
    }
    return o;
}

Outcome degree_bounds(const std::vector<CohomologyProfile>& profiles)
{
    Outcome o;
    for (const auto& p : profiles) {
        const long n = static_cast<long>(p.n), k = static_cast<long>(p.k);
        const Integer cap = binomial(k - 2, n - 1);
        bool ok = true;
        for (long r = k - n + 1; r < static_cast<long>(p.u.size()); ++r) {
            if ((r - k + n) % k == 0)
                continue;
            ok &= Integer(static_cast<long>(p.u[r])) <= (r >= k ? cap - 1 : cap);
        }
        o.require(ok, nk(p.n, p.k) + " u_r <= " + cap.get_str() + " for r >= k-n+1, strict for r >= k");
    }
    // Below k-n+1 the bound does not hold; shown for the record.
    const auto& p24 = profiles[1];
    o.notes.push_back("note (2,4): u_2 = " + std::to_string(p24.u[2]) + " exceeds C(2,1) = 2 at r = k-n, outside the range");
    return o;
}

Outcome chain(bool& literal_refuted)
{
    Outcome o;
    for (auto [n, k] : Grid{{2, 3}, {2, 4}, {3, 4}, {3, 5}}) {
        const auto rep = chain_check(generic_arrangement(n, k));
        for (const auto& item : rep.items)
            o.require(item.passed, nk(n, k) + " " + item.name + " at r=" + std::to_string(item.r));
        const auto& lit = rep.delta_top_equality;
        if (!lit.passed)
            literal_refuted = true;
        o.require(lit.passed, nk(n, k) + " literal " + lit.name + " at r=" + std::to_string(lit.r));
    }
    return o;
}

Outcome plane_bound()
{
    Outcome o;
    for (std::size_t k = 3; k <= 6; ++k) {
        const auto a = generic_arrangement(2, k);
        const auto p = inplane_min_power(a, static_cast<unsigned>(2 * k + 1));
        o.require(verify_inplane(a), "k=" + std::to_string(k) + " m^" + std::to_string(2 * k + 1)
                                         + " inside the Jacobian ideal (smallest power "
                                         + (p ? std::to_string(*p) : std::string("none")) + ")");
    }
    return o;
}

Outcome functional_equations()
{
    Outcome o;
    auto certify = [&](const Polynomial& q, const BFunction& b, const WeylOperator& expected, const std::string& label) {
        const auto p = certify_functional_equation(q, b);
        if (!p) {
            o.require(false, label + ": no operator found");
            return;
        }
        const std::size_t n = q.ambient();
        const auto lhs = apply(*p, TwistedElement::power(q).scaled(lift_x(q)));
        const auto rhs = TwistedElement::power(q).scaled(lift_s(as_s_polynomial(b), n));
        o.require(lhs == rhs && *p == expected, label + ": P = " + to_string(*p));
    };
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
        certify(q, b, s_constant(ratio(1, 4)) * lap, "sum of " + std::to_string(n) + " squares, b = " + to_string(b));
    }
    BFunction b1;
    b1.multiply(1);
    certify(X(1, 0), b1, WeylOperator::d(1, 0), "x, b = " + to_string(b1));
    BFunction b2;
    b2.multiply(1, 2);
    certify(X(2, 0) * X(2, 1), b2, WeylOperator::d(2, 0) * WeylOperator::d(2, 1), "xy, b = " + to_string(b2));
    return o;
}

Outcome operator_identities()
{
    Outcome o;
    Gen g(2024);
    const Grid grid{{2, 3}, {2, 4}, {2, 5}, {3, 4}, {3, 5}};
    int euler_ok = 0, delta_ok = 0;
    const int trials = 100;
    for (int t = 0; t < trials; ++t) {
        const auto [n, k] = grid[static_cast<std::size_t>(t) % grid.size()];
        const auto a = generic_arrangement(n, k);
        const auto q = defining_poly(a);
        const auto gpoly = g.homogeneous(n, static_cast<unsigned>(g.integer(0, 3)), 3);
        const auto m = g.monomial(n, static_cast<unsigned>(g.integer(0, 2)));
        euler_ok += euler_identity_check(q, gpoly, m);

        const auto r = static_cast<std::size_t>(g.integer(static_cast<long>(k - n + 1), static_cast<long>(k)));
        const auto idx = delta_indices(a, r);
        const auto& pick = idx[static_cast<std::size_t>(g.integer(0, static_cast<long>(idx.size()) - 1))];
        delta_ok += delta_production_check(a, g.monomial(n, static_cast<unsigned>(g.integer(0, 2))), pick.I, pick.J,
                                           pick.N);
    }
    o.require(euler_ok == trials, "Euler identity " + std::to_string(euler_ok) + "/" + std::to_string(trials));
    o.require(delta_ok == trials, "determinant production " + std::to_string(delta_ok) + "/" + std::to_string(trials));

    auto random_operator = [&](std::size_t n) {
        WeylOperator p(n);
        for (long t = g.integer(1, 3); t > 0; --t) {
            SPoly c = s_constant(g.rational());
            if (g.coin())
                c += s_variable() * g.rational();
            p.add_term(g.monomial(n, static_cast<unsigned>(g.integer(0, 2))),
                       g.monomial(n, static_cast<unsigned>(g.integer(0, 2))), c);
        }
        return p;
    };
    int comp = 0, comm = 0, leib = 0;
    const int op_trials = 30;
    for (int t = 0; t < op_trials; ++t) {
        const std::size_t n = static_cast<std::size_t>(g.integer(1, 3));
        const auto q = defining_poly(generic_arrangement(n, n == 1 ? 1 : n + 1));
        TwistedElement e = TwistedElement::monomial_times(q, g.polynomial(n, 2, 3));
        e += TwistedElement::monomial_times(q, g.polynomial(n, 2, 2), 1).scaled(Polynomial::variable(n + 1, n));
        const auto p = random_operator(n), r = random_operator(n);
        comp += apply(p * r, e) == apply(p, apply(r, e));
        const auto i = static_cast<std::size_t>(g.integer(0, static_cast<long>(n) - 1));
        const auto dx = WeylOperator::d(n, i), xi = WeylOperator::x(n, i);
        comm += apply(dx, apply(xi, e)) - apply(xi, apply(dx, e)) == e;
        const auto f = g.polynomial(n, 2, 3);
        const auto mf = WeylOperator::multiplication(f);
        leib += apply(dx, apply(mf, e)) == apply(WeylOperator::multiplication(partial(f, i)), e) + apply(mf, apply(dx, e));
    }
    o.require(comp == op_trials, "composition " + std::to_string(comp) + "/" + std::to_string(op_trials));
    o.require(comm == op_trials, "commutator [d_i, x_i] = 1 " + std::to_string(comm) + "/" + std::to_string(op_trials));
    o.require(leib == op_trials, "Leibniz " + std::to_string(leib) + "/" + std::to_string(op_trials));
    return o;
}

Outcome rewriting()
{
    Outcome o;
    for (auto [n, k] : milnor_grid) {
        if (k == n)
            continue;
        const auto a = generic_arrangement(n, k);
        std::size_t count = 0, good = 0, max_terms = 0;
        for (unsigned r = 1; r + n + 2 <= 2 * k; ++r) {
            if ((r + n - k) % k == 0 || r + n < k + 1)
                continue;
            for (const auto& p : standard_products(n, k, r)) {
                const auto res = rewrite_to_basis(a, p);
                ++count;
                good += verify_rewrite(a, p, res).ok();
                std::size_t nonzero = 0;
                for (const auto& c : res.coefficients)
                    nonzero += c != 0;
                max_terms = std::max(max_terms, nonzero);
            }
        }
        o.require(good == count, nk(n, k) + " " + std::to_string(good) + "/" + std::to_string(count)
                                     + " products certified, at most " + std::to_string(max_terms) + " basis terms (cap "
                                     + binomial(static_cast<long>(k) - 2, static_cast<long>(n) - 1).get_str() + ")");
    }
    return o;
}

Outcome lengths()
{
    Outcome o;
    o.require(holonomic_length(make_arrangement(1, {{1}})) == 2, "{x} -> 2");
    o.require(holonomic_length(make_arrangement(2, {{1, 0}, {0, 1}})) == 4, "{x,y} -> 4");
    o.require(holonomic_length(make_arrangement(2, {{1, 0}, {0, 1}, {1, 1}})) == 7, "{x,y,x+y} -> 7");
    Gen g(77);
    int same = 0;
    const int trials = 20;
    for (int t = 0; t < trials; ++t) {
        const std::size_t n = static_cast<std::size_t>(g.integer(1, 3));
        const std::size_t k = n == 1 ? 1 : static_cast<std::size_t>(g.integer(1, 6));
        Arrangement base = generic_arrangement(n, k);
        if (t % 4 == 3 && n == 3)
            base = make_arrangement(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}});
        auto moved = transform(base, g.invertible(n)).hyperplanes();
        g.shuffle(moved);
        same += holonomic_length(base) == holonomic_length(Arrangement(n, moved));
    }
    o.require(same == trials, "invariant under " + std::to_string(same) + "/" + std::to_string(trials)
                                  + " random coordinate changes and reorderings");
    return o;
}

Outcome annihilation()
{
    Outcome o;
    std::vector<std::pair<std::string, Arrangement>> cases;
    for (std::size_t n = 2; n <= 3; ++n)
        for (std::size_t k = n; k <= 5; ++k)
            cases.emplace_back("generic " + nk(n, k), generic_arrangement(n, k));
    cases.emplace_back("{x,y,z,x+y}", make_arrangement(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}}));
    cases.emplace_back("{x,y,z,x+y,y+z}", make_arrangement(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {0, 1, 1}}));
    for (const auto& [label, a] : cases) {
        const auto qs = TwistedElement::power(defining_poly(a));
        IndexSet all;
        for (std::size_t t = 0; t < a.k(); ++t)
            all.push_back(t);
        bool ok = true;
        std::size_t count = 0;
        for (std::size_t i = 0; i < a.n(); ++i)
            for (std::size_t j = 0; j < a.n(); ++j)
                if (i != j) {
                    ok &= apply(pij_operator(a, i, j, all), qs).is_zero();
                    ++count;
                }
        o.require(ok, label + ": " + std::to_string(count) + " operators kill Q^s");
    }
    return o;
}

} // namespace

int main()
{
    bool all_ok = true;
    bool literal_refuted = false;
    std::vector<CohomologyProfile> profiles;

    auto report = [&](int id, const std::string& title, const std::function<Outcome()>& body, bool deviation = false) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o = body();
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2f s", secs);
        std::cout << "criterion " << id << ": " << (o.passed ? "PASS" : "FAIL") << "  " << title << "  [" << timing
                  << "]\n";
        for (const auto& line : o.notes)
            std::cout << "    " << line << "\n";
        if (!o.passed && !deviation)
            all_ok = false;
        return o;
    };

    report(1, "isolated-singularity b-function equals the generic formula for 3..6 lines", bfunction_cross_validation);
    report(2, "total Milnor-fiber cohomology equals C(k-2,n-2)+k*C(k-2,n-1)", [&] { return milnor_totals(profiles); });
    report(3, "u_r nonzero exactly for 0 <= r <= 2k-n-2", [&] { return nonvanishing_window(profiles); });
    report(4, "u_r <= C(k-2,n-1) off multiples, strict for r >= k", [&] { return degree_bounds(profiles); });

    // Every sub-check except the literal equality must pass; that one is
    // false by construction and documented.
    const Outcome c5 = report(
        5, "squarefree/determinant ideal chain and quotient containments", [&] { return chain(literal_refuted); },
        true);
    bool c5_rest = true;
    for (const auto& line : c5.notes)
        if (line.rfind("FAIL", 0) == 0 && line.find("literal") == std::string::npos)
            c5_rest = false;
    if (!c5_rest)
        all_ok = false;
    if (literal_refuted)
        std::cout << "    recorded deviation: delta_(k-n+1) equals m^(k-n), not m^(k-n+1); every other sub-check "
                  << (c5_rest ? "passed" : "did NOT pass") << "\n";

    report(6, "m^(2k+1) inside the Jacobian ideal of k generic lines", plane_bound);
    report(7, "functional equations certified and re-verified", functional_equations);
    report(8, "Euler/determinant identities and operator-application properties", operator_identities);
    report(9, "standard products rewrite onto the spanning family with certificates", rewriting);
    report(10, "holonomic lengths and their invariance", lengths);
    report(11, "P_ij operators annihilate Q^s", annihilation);
    std::cout << "criterion 12: excluded  full b-function of a non-generic example needs general D-module "
                 "algorithms; not computed\n";
    return all_ok ? 0 : 1;
}
