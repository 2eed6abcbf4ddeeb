#include "bsat/cli/commands.hpp"

#include "bsat/bfunction.hpp"
#include "bsat/cli/arrangement_io.hpp"
#include "bsat/errors.hpp"
#include "bsat/length.hpp"
#include "bsat/milnor.hpp"
#include "bsat/weyl.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ostream>
#include <regex>
#include <thread>

namespace bsat::cli {

namespace {

using nlohmann::json;

long as_long(const Integer& z)
{
    return z.get_si();
}

json roots_json(const BFunction& b)
{
    json out = json::object();
    for (const auto& [rho, m] : b.factors())
        out[bsat::to_string(rho)] = m;
    return out;
}

std::string a_monomial_text(const AExponents& e)
{
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0)
            continue;
        if (!out.empty())
            out += "*";
        out += "H" + std::to_string(i + 1);
        if (e[i] > 1)
            out += "^" + std::to_string(e[i]);
    }
    return out.empty() ? "1" : out;
}

json one_based(const IndexSet& s)
{
    json out = json::array();
    for (auto i : s)
        out.push_back(i + 1);
    return out;
}

Status pass_if(bool ok)
{
    return ok ? Status::Pass : Status::Fail;
}

std::string nk_label(std::size_t n, std::size_t k)
{
    return "n=" + std::to_string(n) + ",k=" + std::to_string(k);
}

void require_n_k(const Arrangement& a, const char* op)
{
    if (a.n() < 2 || a.k() < a.n())
        throw PreconditionError(std::string(op) + ": needs k >= n >= 2");
}

// Evenly spaced sample of at most `cap` elements, order preserved.
template <typename T>
std::vector<T> spread(const std::vector<T>& all, std::size_t cap)
{
    if (all.size() <= cap)
        return all;
    std::vector<T> out;
    for (std::size_t i = 0; i < cap; ++i)
        out.push_back(all[i * all.size() / cap]);
    return out;
}

void append_milnor_checks(std::vector<Check>& checks, const CohomologyProfile& prof, unsigned max_degree,
                          const std::string& instance)
{
    const long n = static_cast<long>(prof.n), k = static_cast<long>(prof.k);
    const long top = 2 * k - n - 2;
    if (max_degree >= top)
        checks.push_back({"total dimension equals C(k-2,n-2)+k*C(k-2,n-1)",
                          "dimension of the top cohomology of the Milnor fiber of a generic arrangement",
                          pass_if(Integer(static_cast<long>(prof.total)) == or_dimension(n, k)), instance});
    else
        checks.push_back({"total dimension equals C(k-2,n-2)+k*C(k-2,n-1)",
                          "needs max degree at least 2k-n-2 to compare", Status::Unverified, instance});

    // The nonvanishing range needs k > n. For k = n the arrangement is a normal
    // crossing, the Milnor fiber is a torus and only the constants survive.
    if (k > n) {
        bool window = true;
        for (long r = 0; r < static_cast<long>(prof.u.size()); ++r)
            window &= (prof.u[r] != 0) == (r <= top);
        checks.push_back({"u_r nonzero exactly for 0 <= r <= 2k-n-2",
                          "nonvanishing range of the graded pieces of the top Milnor-fiber cohomology",
                          pass_if(window), instance});
    } else {
        bool only_constants = !prof.u.empty() && prof.u[0] == 1;
        for (std::size_t r = 1; r < prof.u.size(); ++r)
            only_constants &= prof.u[r] == 0;
        checks.push_back({"normal crossing: u_0 = 1 and u_r = 0 for r > 0",
                          "top Milnor-fiber cohomology of a normal crossing divisor", pass_if(only_constants),
                          instance});
    }

    bool any = false, bound = true;
    const Integer cap = binomial(k - 2, n - 1);
    for (long r = k - n + 1; r < static_cast<long>(prof.u.size()); ++r) {
        if ((r - k + n) % k == 0)
            continue;
        any = true;
        const Integer limit = r >= k ? cap - 1 : cap;
        bound &= Integer(static_cast<long>(prof.u[r])) <= limit;
    }
    if (any)
        checks.push_back({"u_r <= C(k-2,n-1) for r >= k-n+1, k not dividing r-k+n, strict for r >= k",
                          "spanning family of A-monomials for the graded pieces and the nontrivial relation for r >= k",
                          pass_if(bound), instance});
}

std::vector<AExponents> standard_products(std::size_t n, std::size_t k, unsigned r)
{
    std::vector<AExponents> out;
    AExponents cur(k, 0);
    auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
        if (i + 1 == k) {
            cur[i] = left;
            if (static_cast<std::size_t>(std::count_if(cur.begin(), cur.end(), [](unsigned x) { return x > 0; }))
                >= k - n + 1)
                out.push_back(cur);
            return;
        }
        for (unsigned e = 0; e <= left; ++e) {
            cur[i] = e;
            self(self, i + 1, left - e);
        }
    };
    rec(rec, 0, r);
    return out;
}

} // namespace

std::vector<std::pair<std::size_t, std::size_t>> parse_grid(const std::string& spec)
{
    static const std::regex item(R"(\s*([nk])\s*=\s*([^.,]+?)\s*(?:\.\.\s*([^.,]+?)\s*)?)");
    static const std::regex bound(R"((n)?\s*([+-])?\s*(\d+)?)");
    struct Range {
        std::string lo, hi;
    };
    std::optional<Range> nr, kr;
    std::size_t start = 0;
    while (start <= spec.size()) {
        const std::size_t comma = spec.find(',', start);
        const std::string part = spec.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        std::smatch m;
        if (!std::regex_match(part, m, item))
            throw InputError("cannot parse grid component \"" + part + "\"");
        Range r{m[2].str(), m[3].matched ? m[3].str() : m[2].str()};
        (m[1] == "n" ? nr : kr) = r;
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    if (!nr || !kr)
        throw InputError("grid needs both n and k ranges");

    auto eval = [&](const std::string& text, std::optional<long> n) -> long {
        std::smatch m;
        std::string t = text;
        t.erase(std::remove(t.begin(), t.end(), ' '), t.end());
        if (!std::regex_match(t, m, bound) || t.empty())
            throw InputError("cannot parse grid bound \"" + text + "\"");
        const bool uses_n = m[1].matched;
        if (uses_n && !n)
            throw InputError("the n range cannot refer to n");
        if (!uses_n && m[2].matched)
            throw InputError("cannot parse grid bound \"" + text + "\"");
        if (uses_n && m[2].matched != m[3].matched)
            throw InputError("cannot parse grid bound \"" + text + "\"");
        const long num = m[3].matched ? std::stol(m[3].str()) : 0;
        if (!uses_n)
            return num;
        return *n + (m[2] == "-" ? -num : num);
    };

    std::vector<std::pair<std::size_t, std::size_t>> out;
    const long n_lo = eval(nr->lo, std::nullopt), n_hi = eval(nr->hi, std::nullopt);
    if (n_lo < 1 || n_hi < n_lo)
        throw InputError("empty or invalid n range");
    for (long n = n_lo; n <= n_hi; ++n) {
        const long k_lo = eval(kr->lo, n), k_hi = eval(kr->hi, n);
        for (long k = std::max(k_lo, n); k <= k_hi; ++k)
            out.emplace_back(static_cast<std::size_t>(n), static_cast<std::size_t>(k));
    }
    if (out.empty())
        throw InputError("grid contains no instance with k >= n");
    return out;
}

std::vector<std::size_t> parse_index_list(const std::string& text, std::size_t k)
{
    std::vector<std::size_t> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        std::string part = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        part.erase(std::remove(part.begin(), part.end(), ' '), part.end());
        if (part.empty() || !std::all_of(part.begin(), part.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            throw InputError("index list must be comma separated positive integers: \"" + text + "\"");
        const unsigned long v = std::stoul(part);
        if (v < 1 || v > k)
            throw InputError("hyperplane index " + part + " outside 1.." + std::to_string(k));
        out.push_back(v - 1);
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return out;
}

std::size_t thread_limit()
{
    if (const char* env = std::getenv("BSAT_ARR_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return static_cast<std::size_t>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// ------------------------------------------------------------------ bfunction

RunReport bfunction_generic_report(std::size_t n, std::size_t k)
{
    if (n < 2 || k < n)
        throw PreconditionError("bfunction --generic: needs k >= n >= 2");
    RunReport rep;
    const BFunction bound = upper_bound_generic(n, k);
    json candidates = json::array();
    for (std::size_t r : {n - 1, n - 2}) {
        const BFunction b = generic_bsat(n, k, r);
        candidates.push_back({
            {"r", r},
            {"label", r == n - 1 ? "expected exact (r = n-1)" : "alternative (r = n-2)"},
            {"roots", roots_json(b)},
            {"factored", to_string(b)},
            {"shape", "(s+1)^" + std::to_string(r) + " * prod_{i=0}^{" + std::to_string(2 * k - n - 2) + "} (s+(i+"
                          + std::to_string(n) + ")/" + std::to_string(k) + ")"},
            {"degree", b.degree()},
        });
    }
    const BFunction exact = generic_bsat(n, k, n - 1);
    const long uq = u_q_bound(exact, n, k);
    rep.results = {
        {"mode", "generic"}, {"n", n}, {"k", k}, {"candidates", candidates},
        {"upper_bound", roots_json(bound)}, {"u_q", uq},
    };
    const std::string inst = nk_label(n, k);
    rep.checks.push_back({"upper bound equals the r = n-1 candidate",
                          "(s+1)^(n-1) prod_{i=0}^{2k-n-2} (s+(i+n)/k) bounds b_Q for generic arrangements",
                          pass_if(bound == exact), inst});
    rep.checks.push_back({"u_Q equals 2k-n-2", "largest i with b_Q(-(i+n)/k) = 0 bounds generator degrees",
                          pass_if(uq == static_cast<long>(2 * k - n - 2)), inst});
    bool in_range = true;
    for (const auto& [rho, m] : exact.factors())
        in_range &= rho > 0 && rho < 2;
    rep.checks.push_back({"all roots lie in (-2, 0)", "shifts (i+n)/k lie in [n/k, (2k-2)/k]", pass_if(in_range), inst});
    if (n == 2) {
        const BFunction iso = isolated_homog_bsat(defining_poly(generic_arrangement(n, k)));
        rep.checks.push_back({"isolated-singularity computation agrees with r = n-1",
                              "for lines the b-function is read off the Jacobian ideal's Hilbert function",
                              pass_if(iso == exact), inst});
    }
    rep.checks.push_back({"exponent of (s+1) is n-1", "the exponent r in {n-1, n-2} is not decided in general",
                          n == 2 ? Status::Consistent : Status::Unverified, inst});
    return rep;
}

RunReport bfunction_isolated_report(const Arrangement& a)
{
    RunReport rep;
    const Polynomial Q = defining_poly(a);
    const BFunction b = isolated_homog_bsat(Q);
    json uq = nullptr;
    try {
        uq = u_q_bound(b, a.n(), a.k());
    } catch (const PreconditionError&) {
    }
    rep.results = {
        {"mode", "isolated"}, {"n", a.n()}, {"k", a.k()}, {"polynomial", to_string(Q)},
        {"roots", roots_json(b)}, {"factored", to_string(b)}, {"degree", b.degree()}, {"u_q", uq},
    };
    if (a.n() == 2 && a.k() >= 2 && is_generic(a))
        rep.checks.push_back({"agrees with the generic formula at r = n-1",
                              "generic lines: (s+1) prod_{i=0}^{2k-4} (s+(i+2)/k)",
                              pass_if(b == generic_bsat(2, a.k(), 1)), nk_label(a.n(), a.k())});
    return rep;
}

// --------------------------------------------------------------------- milnor

RunReport milnor_report(const Arrangement& a, std::optional<unsigned> max_degree)
{
    require_generic(a, "milnor");
    require_n_k(a, "milnor");
    const std::size_t n = a.n(), k = a.k();
    const unsigned top = max_degree.value_or(static_cast<unsigned>(2 * k - n));
    const CohomologyProfile prof = u_profile(a, top);

    RunReport rep;
    json comparison = json::array();
    bool all_match = true;
    for (unsigned r = 0; r <= top; ++r) {
        const Integer conj = conjectured_u(static_cast<long>(n), static_cast<long>(k), r);
        const bool match = conj == Integer(static_cast<long>(prof.u[r]));
        all_match &= match;
        comparison.push_back({{"r", r}, {"u", prof.u[r]}, {"conjectured", as_long(conj)},
                              {"status", match ? "match" : "mismatch"}});
    }
    rep.results = {
        {"n", n}, {"k", k}, {"max_degree", top}, {"u", prof.u}, {"total", prof.total},
        {"closed_form_total", as_long(or_dimension(static_cast<long>(n), static_cast<long>(k)))},
        {"comparison", comparison},
    };
    const std::string inst = nk_label(n, k);
    append_milnor_checks(rep.checks, prof, top, inst);
    rep.checks.push_back({"graded dimensions match the conjectured formula",
                          "conjectured u_r by degree ranges 0..k-n, k-n+1..k-1, k..2k-n-2",
                          all_match ? Status::Consistent : Status::Refuted, inst});
    return rep;
}

// --------------------------------------------------------------------- length

RunReport length_report(const Arrangement& a)
{
    const LengthBreakdown lb = length_breakdown(a);
    json table = json::array();
    for (std::size_t i = 0; i < lb.subtotals.size(); ++i)
        table.push_back({{"size", i + 1}, {"sign", i % 2 == 0 ? "+" : "-"}, {"subtotal", lb.subtotals[i]}});
    RunReport rep;
    rep.results = {
        {"n", a.n()}, {"k", a.k()}, {"length", lb.length}, {"table", table},
        {"top_correction", lb.top_nonvanishing ? 1 : 0},
    };
    return rep;
}

// -------------------------------------------------------------------- rewrite

RunReport rewrite_report(const Arrangement& a, const std::vector<std::size_t>& factors)
{
    AExponents product(a.k(), 0);
    for (auto f : factors)
        product[f] += 1;
    const RewriteResult res = rewrite_to_basis(a, product);
    const RewriteCheck check = verify_rewrite(a, product, res);

    json basis = json::array();
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < res.basis.size(); ++i) {
        basis.push_back({{"monomial", a_monomial_text(res.basis[i])}, {"coefficient", bsat::to_string(res.coefficients[i])}});
        nonzero += res.coefficients[i] != 0;
    }
    json cert = json::array();
    for (const auto& e : res.certificate)
        cert.push_back({{"coefficient", bsat::to_string(e.coefficient)}, {"a", a_monomial_text(e.a)}, {"mu", one_based(e.mu)}});

    RunReport rep;
    rep.results = {
        {"n", a.n()}, {"k", a.k()}, {"product", a_monomial_text(product)}, {"degree", factors.size()},
        {"basis", basis}, {"nonzero_coefficients", nonzero}, {"certificate", cert},
    };
    const std::string inst = nk_label(a.n(), a.k());
    rep.checks.push_back({"certificate reproduces P minus the basis combination",
                          "P - sum c_b b = sum coefficient * E(a, mu), expanded exactly",
                          pass_if(check.certificate_identity), inst});
    rep.checks.push_back({"difference lies in the span of E_r", "rank test against all E generators of degree r",
                          pass_if(check.in_span_of_E), inst});
    rep.checks.push_back({"at most C(k-2,n-1) basis monomials", "spanning family of size C(k-2,n-1)",
                          pass_if(check.only_basis), inst});
    return rep;
}

// --------------------------------------------------------------------- verify

std::vector<Check> verify_checks(const Arrangement& a, const std::string& inst)
{
    require_generic(a, "verify");
    require_n_k(a, "verify");
    const std::size_t n = a.n(), k = a.k();
    const Polynomial Q = defining_poly(a);
    std::vector<Check> out;

    const ChainReport chain = chain_check(a);
    for (const auto& item : chain.items)
        out.push_back({"chain: " + item.name, "squarefree-product and determinant ideals of a generic arrangement",
                       pass_if(item.passed), inst + ",r=" + std::to_string(item.r)});
    out.push_back({"chain: delta_(k-n+1) equals m^(k-n+1) as literally stated",
                   "delta_(k-n+1) contains forms of degree k-n, so it equals m^(k-n)",
                   chain.delta_top_equality.passed ? Status::Pass : Status::Refuted,
                   inst + ",r=" + std::to_string(chain.delta_top_equality.r)});

    if (n == 2) {
        out.push_back({"m^(2k+1) inside the Jacobian ideal", "plane bound for generic lines", pass_if(verify_inplane(a)),
                       inst});
        out.push_back({"isolated-singularity b-function equals the generic formula",
                       "Jacobian-ideal Hilbert function versus (s+1) prod (s+(i+2)/k)",
                       pass_if(isolated_homog_bsat(Q) == generic_bsat(2, k, 1)), inst});
    }
    out.push_back({"u_Q equals 2k-n-2", "largest i with b_Q(-(i+n)/k) = 0",
                   pass_if(u_q_bound(generic_bsat(n, k, n - 1), n, k) == static_cast<long>(2 * k - n - 2)), inst});

    {
        const Polynomial x1 = Polynomial::variable(n, 0), xn = Polynomial::variable(n, n - 1);
        const std::vector<Polynomial> gs{Polynomial::constant(n, 1), a.form(0), a.form(k - 1).pow(2) + x1 * xn};
        const std::vector<Monomial> ms{Monomial(n), Monomial::variable(n, 0), Monomial::variable(n, n - 1, 2)};
        bool ok = true;
        for (const auto& g : gs)
            for (const auto& m : ms)
                ok &= euler_identity_check(Q, g, m);
        out.push_back({"euler identity sum_i d_i x_i m g Q^s = m g (ks+n+deg mg) Q^s",
                       "Euler-operator identity on 9 choices of g and m", pass_if(ok), inst});
    }
    {
        std::vector<DeltaIndex> all;
        for (std::size_t r = k - n + 1; r <= k; ++r)
            for (auto& idx : delta_indices(a, r))
                all.push_back(std::move(idx));
        const auto sample = spread(all, 12);
        bool ok = true;
        for (const auto& idx : sample)
            for (const auto& m : {Monomial(n), Monomial::variable(n, 0)})
                ok &= delta_production_check(a, m, idx.I, idx.J, idx.N);
        out.push_back({"pole-free combination of v_j(m H_I Q^s) yields (s+1) m Delta + V(m) H_I",
                       "determinant production by first-order operators, " + std::to_string(2 * sample.size())
                           + " cases",
                       pass_if(ok), inst});
    }
    {
        IndexSet all;
        for (std::size_t i = 0; i < k; ++i)
            all.push_back(i);
        const TwistedElement qs = TwistedElement::power(Q);
        bool kills = true;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j)
                    kills &= apply(pij_operator(a, i, j, all), qs).is_zero();
        out.push_back({"P_ij(Q) annihilates Q^s", "operators built from the dual frame and v(Q)", pass_if(kills), inst});

        IndexSet sub(all.begin(), all.end() - 1);
        if (sub.size() >= n && a.rank_of(sub) == n) {
            bool ok = true;
            IndexSet local;
            for (std::size_t t = 0; t < sub.size(); ++t)
                local.push_back(t);
            const Arrangement subarr = a.subarrangement(sub);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    if (i == j)
                        continue;
                    ok &= apply(pij_operator(a, i, j, sub), qs).at_s(-1).is_zero();
                    ok &= apply(conjugate_first_order(pij_operator(subarr, i, j, local), a.form(k - 1)), qs).is_zero();
                }
            out.push_back({"P_ij(Q') Q/Q' annihilates 1/Q and the conjugated P_ij(Q') annihilates Q^s",
                           "sub-arrangement operators, evaluated at s = -1 and conjugated by Q/Q'", pass_if(ok), inst});
        }
    }
    if (k <= 5) {
        const CohomologyProfile prof = u_profile(a, static_cast<unsigned>(2 * k - n));
        append_milnor_checks(out, prof, static_cast<unsigned>(2 * k - n), inst);
        if (k > n) {
            std::size_t count = 0;
            bool ok = true;
            for (unsigned r = static_cast<unsigned>(k - n + 1); r + n + 2 <= 2 * k; ++r) {
                if ((r + n - k) % k == 0)
                    continue;
                for (const auto& p : spread(standard_products(n, k, r), 40)) {
                    ok &= verify_rewrite(a, p, rewrite_to_basis(a, p)).ok();
                    ++count;
                }
            }
            out.push_back({"standard products rewrite onto the basis modulo E",
                           "certified rewriting, " + std::to_string(count) + " products", pass_if(ok), inst});
        }
    }
    out.push_back({"exponent of (s+1) in b_Q is n-1", "the exponent is only known to be n-1 or n-2",
                   n == 2 ? Status::Consistent : Status::Unverified, inst});
    out.push_back({"P_ij operators and the Euler operator generate the annihilator",
                   "completeness needs Weyl-algebra Groebner bases and is not checked", Status::Unverified, inst});
    return out;
}

RunReport verify_report(const std::vector<std::pair<std::string, Arrangement>>& instances, std::size_t threads)
{
    std::vector<std::vector<Check>> per(instances.size());
    std::vector<std::exception_ptr> errors(instances.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < instances.size(); i = next++) {
            try {
                per[i] = verify_checks(instances[i].second, instances[i].first);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t count = std::max<std::size_t>(1, std::min(threads, instances.size()));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < count; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);

    RunReport rep;
    json labels = json::array();
    std::size_t failed = 0, refuted = 0, unverified = 0;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        labels.push_back(instances[i].first);
        for (auto& c : per[i]) {
            failed += c.status == Status::Fail;
            refuted += c.status == Status::Refuted;
            unverified += c.status == Status::Unverified;
            rep.checks.push_back(std::move(c));
        }
    }
    rep.results = {{"instances", labels}, {"check_count", rep.checks.size()}, {"failed", failed},
                   {"refuted", refuted}, {"unverified", unverified}};
    return rep;
}

// ------------------------------------------------------------------------ run

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Bernstein-Sato polynomials, Milnor-fiber cohomology and holonomic lengths of hyperplane arrangements",
                 "bsat-arr"};
    app.require_subcommand(1);
    std::string format = "json";
    bool timing = false;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}));
    app.add_flag("--timing", timing, "Include wall time in the report");

    auto* bf = app.add_subcommand("bfunction", "b-function of a generic arrangement or an isolated singularity");
    bool generic = false, isolated = false;
    std::size_t n = 0, k = 0;
    std::string bf_input;
    auto* gen_flag = bf->add_flag("--generic", generic, "Closed formula for generic arrangements");
    auto* iso_flag = bf->add_flag("--isolated", isolated, "Jacobian-ideal computation for an input file");
    gen_flag->excludes(iso_flag);
    bf->add_option("--n", n, "Ambient dimension (generic mode)");
    bf->add_option("--k", k, "Number of hyperplanes (generic mode)");
    bf->add_option("--input", bf_input, "Arrangement JSON file (isolated mode)");

    auto* mil = app.add_subcommand("milnor", "Graded dimensions of the top Milnor-fiber cohomology");
    std::string mil_input;
    std::optional<unsigned> max_degree;
    mil->add_option("--input", mil_input, "Arrangement JSON file")->required();
    mil->add_option("--max-degree", max_degree, "Highest degree to compute (default 2k-n)");

    auto* ver = app.add_subcommand("verify", "Run the theorem checks on a grid or an input arrangement");
    std::string grid = "n=2..3,k=n..6", ver_input;
    auto* grid_opt = ver->add_option("--grid", grid, "Parameter grid, e.g. \"n=2..3,k=n..6\"");
    ver->add_option("--input", ver_input, "Arrangement JSON file")->excludes(grid_opt);

    auto* len = app.add_subcommand("length", "Holonomic length of the localization at Q");
    std::string len_input;
    len->add_option("--input", len_input, "Arrangement JSON file")->required();

    auto* rw = app.add_subcommand("rewrite", "Rewrite a standard product onto the spanning family modulo E");
    std::string rw_input, product;
    std::optional<std::size_t> degree;
    rw->add_option("--input", rw_input, "Arrangement JSON file")->required();
    rw->add_option("--product", product, "1-based hyperplane indices of P, e.g. \"1,2\"")->required();
    rw->add_option("--degree", degree, "Degree of P (must match the number of factors)");

    for (auto* sub : {bf, mil, ver, len, rw})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return Usage;
    }

    const auto t0 = std::chrono::steady_clock::now();
    try {
        RunReport rep;
        std::string canonical;
        if (bf->parsed()) {
            if (generic == isolated)
                throw InputError("bfunction needs exactly one of --generic or --isolated");
            if (generic) {
                if (bf->count("--n") == 0 || bf->count("--k") == 0)
                    throw InputError("bfunction --generic needs --n and --k");
                canonical = json{{"n", n}, {"k", k}}.dump();
                rep = bfunction_generic_report(n, k);
            } else {
                if (bf_input.empty())
                    throw InputError("bfunction --isolated needs --input");
                const Arrangement a = read_arrangement_file(bf_input);
                canonical = arrangement_to_json(a).dump();
                rep = bfunction_isolated_report(a);
            }
        } else if (mil->parsed()) {
            const Arrangement a = read_arrangement_file(mil_input);
            canonical = arrangement_to_json(a).dump();
            rep = milnor_report(a, max_degree);
        } else if (ver->parsed()) {
            std::vector<std::pair<std::string, Arrangement>> instances;
            if (!ver_input.empty()) {
                Arrangement a = read_arrangement_file(ver_input);
                canonical = arrangement_to_json(a).dump();
                instances.emplace_back(nk_label(a.n(), a.k()), std::move(a));
            } else {
                json list = json::array();
                for (const auto& [gn, gk] : parse_grid(grid)) {
                    list.push_back({gn, gk});
                    instances.emplace_back(nk_label(gn, gk), generic_arrangement(gn, gk));
                }
                canonical = list.dump();
            }
            rep = verify_report(instances, thread_limit());
        } else if (len->parsed()) {
            const Arrangement a = read_arrangement_file(len_input);
            canonical = arrangement_to_json(a).dump();
            rep = length_report(a);
        } else if (rw->parsed()) {
            const Arrangement a = read_arrangement_file(rw_input);
            const auto factors = parse_index_list(product, a.k());
            if (degree && *degree != factors.size())
                throw InputError("--degree " + std::to_string(*degree) + " does not match the "
                                 + std::to_string(factors.size()) + " listed factors");
            canonical = json{{"arrangement", arrangement_to_json(a)}, {"product", factors}}.dump();
            rep = rewrite_report(a, factors);
        }
        rep.command.assign(argv + 1, argv + argc);
        rep.input_digest = sha256_hex(canonical);
        if (timing)
            rep.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                   std::chrono::steady_clock::now() - t0)
                                   .count();
        out << (format == "table" ? render_table(rep) : serialize(rep));
        return rep.failed() ? CheckFailed : Ok;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return Usage;
    } catch (const PreconditionError& e) {
        err << "precondition violated: " << e.what() << "\n";
        return Precondition;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return Usage;
    } catch (const InternalError& e) {
        err << "internal check failed: " << e.what() << "\n";
        return CheckFailed;
    }
}

} // namespace bsat::cli
