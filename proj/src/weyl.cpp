#include "bsat/weyl.hpp"

#include "bsat/errors.hpp"
#include "bsat/groebner.hpp"
#include "bsat/linalg.hpp"

#include <algorithm>
#include <functional>

namespace bsat {

namespace {

Monomial unit_vector(std::size_t n, std::size_t i)
{
    return Monomial::variable(n, i);
}

// Calls f(kappa, weight) for every kappa <= min(beta, gamma), where weight is
// prod C(beta_i, kappa_i) C(gamma_i, kappa_i) kappa_i!.
void for_each_contraction(const Monomial& beta, const Monomial& gamma,
                          const std::function<void(const Monomial&, const Integer&)>& f)
{
    const std::size_t n = beta.size();
    std::vector<unsigned> kappa(n, 0);
    std::function<void(std::size_t, Integer)> rec = [&](std::size_t i, Integer weight) {
        if (i == n) {
            f(Monomial(kappa), weight);
            return;
        }
        const unsigned top = std::min(beta[i], gamma[i]);
        Integer factorial = 1;
        for (unsigned c = 0; c <= top; ++c) {
            if (c > 0)
                factorial *= c;
            kappa[i] = c;
            rec(i + 1, weight * binomial(beta[i], c) * binomial(gamma[i], c) * factorial);
        }
        kappa[i] = 0;
    };
    rec(0, 1);
}

std::string monomial_text(const Monomial& m, const std::vector<std::string>& names)
{
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0)
            continue;
        if (!out.empty())
            out += "*";
        out += names[i];
        if (m[i] > 1)
            out += "^" + std::to_string(m[i]);
    }
    return out;
}

// d_i of a twisted element.
TwistedElement derive(const TwistedElement& e, std::size_t i)
{
    const std::size_t n = e.ambient();
    const Polynomial dq = lift_x(partial(e.Q(), i));
    const Polynomial s = Polynomial::variable(n + 1, n);
    std::map<unsigned, Polynomial> out;
    for (const auto& [j, g] : e.parts()) {
        auto& same = out.try_emplace(j, Polynomial(n + 1)).first->second;
        same += partial(g, i);
        auto& next = out.try_emplace(j + 1, Polynomial(n + 1)).first->second;
        next += (s - Polynomial::constant(n + 1, j)) * g * dq;
    }
    return TwistedElement(e.Q(), std::move(out));
}

// Caches d^beta e for the beta requested so far.
class DerivativeCache {
public:
    explicit DerivativeCache(TwistedElement base) { cache_.emplace(Monomial(base.ambient()), std::move(base)); }

    const TwistedElement& get(const Monomial& beta)
    {
        auto it = cache_.find(beta);
        if (it != cache_.end())
            return it->second;
        std::size_t i = 0;
        while (beta[i] == 0)
            ++i;
        const Monomial e = unit_vector(beta.size(), i);
        TwistedElement next = derive(get(beta / e), i);
        return cache_.emplace(beta, std::move(next)).first->second;
    }

private:
    std::map<Monomial, TwistedElement> cache_;
};

std::vector<Monomial> monomials_up_to(std::size_t n, unsigned d)
{
    std::vector<Monomial> out;
    for (unsigned t = 0; t <= d; ++t)
        for (auto& m : monomials_of_degree(n, t))
            out.push_back(std::move(m));
    return out;
}

// Zeroth-order operator multiplying by a polynomial in (x, s).
WeylOperator from_xs(const Polynomial& f, std::size_t n)
{
    WeylOperator out(n);
    for (const auto& [m, c] : f.terms()) {
        std::vector<unsigned> xs(m.exponents().begin(), m.exponents().begin() + static_cast<long>(n));
        SPoly coeff(1);
        coeff.add_term(Monomial(std::vector<unsigned>{m[n]}), c);
        out.add_term(Monomial(std::move(xs)), Monomial(n), coeff);
    }
    return out;
}

} // namespace

SPoly s_constant(const Rational& c)
{
    return Polynomial::constant(1, c);
}

SPoly s_variable()
{
    return Polynomial::variable(1, 0);
}

// ---------------------------------------------------------------- WeylOperator

WeylOperator WeylOperator::constant(std::size_t n, const Rational& c)
{
    WeylOperator p(n);
    p.add_term(Monomial(n), Monomial(n), s_constant(c));
    return p;
}

WeylOperator WeylOperator::x(std::size_t n, std::size_t i)
{
    WeylOperator p(n);
    p.add_term(unit_vector(n, i), Monomial(n), s_constant(1));
    return p;
}

WeylOperator WeylOperator::d(std::size_t n, std::size_t i)
{
    WeylOperator p(n);
    p.add_term(Monomial(n), unit_vector(n, i), s_constant(1));
    return p;
}

WeylOperator WeylOperator::s(std::size_t n)
{
    WeylOperator p(n);
    p.add_term(Monomial(n), Monomial(n), s_variable());
    return p;
}

WeylOperator WeylOperator::multiplication(const Polynomial& f)
{
    WeylOperator p(f.ambient());
    for (const auto& [m, c] : f.terms())
        p.add_term(m, Monomial(f.ambient()), s_constant(c));
    return p;
}

WeylOperator WeylOperator::field(const VectorField& v)
{
    WeylOperator p(v.size());
    for (std::size_t l = 0; l < v.size(); ++l)
        if (v[l] != 0)
            p.add_term(Monomial(v.size()), unit_vector(v.size(), l), s_constant(v[l]));
    return p;
}

WeylOperator WeylOperator::euler(std::size_t n)
{
    WeylOperator p(n);
    for (std::size_t i = 0; i < n; ++i)
        p.add_term(unit_vector(n, i), unit_vector(n, i), s_constant(1));
    return p;
}

int WeylOperator::order() const
{
    int best = -1;
    for (const auto& [key, c] : terms_)
        best = std::max(best, static_cast<int>(key.second.degree()));
    return best;
}

void WeylOperator::add_term(const Monomial& alpha, const Monomial& beta, const SPoly& c)
{
    if (alpha.size() != n_ || beta.size() != n_)
        throw DimensionError("WeylOperator: multi-index length differs from ambient dimension");
    if (c.ambient() != 1)
        throw DimensionError("WeylOperator: coefficients must be polynomials in s alone");
    if (c.is_zero())
        return;
    auto [it, inserted] = terms_.try_emplace({alpha, beta}, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

void WeylOperator::check_same(const WeylOperator& o) const
{
    if (n_ != o.n_)
        throw DimensionError("WeylOperator: mismatched ambient dimensions");
}

WeylOperator& WeylOperator::operator+=(const WeylOperator& o)
{
    check_same(o);
    for (const auto& [key, c] : o.terms_)
        add_term(key.first, key.second, c);
    return *this;
}

WeylOperator& WeylOperator::operator-=(const WeylOperator& o)
{
    check_same(o);
    for (const auto& [key, c] : o.terms_)
        add_term(key.first, key.second, -c);
    return *this;
}

WeylOperator operator*(const WeylOperator& a, const WeylOperator& b)
{
    a.check_same(b);
    WeylOperator out(a.n_);
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            const SPoly c = ca * cb;
            // x^alpha (d^beta x^gamma) d^delta
            for_each_contraction(ka.second, kb.first, [&](const Monomial& kappa, const Integer& w) {
                out.add_term(ka.first * (kb.first / kappa), (ka.second / kappa) * kb.second, c * Rational(w));
            });
        }
    }
    return out;
}

WeylOperator operator*(const SPoly& c, const WeylOperator& a)
{
    WeylOperator out(a.n_);
    for (const auto& [key, coeff] : a.terms_)
        out.add_term(key.first, key.second, c * coeff);
    return out;
}

std::string to_string(const WeylOperator& p)
{
    if (p.is_zero())
        return "0";
    const auto names = default_variable_names(p.ambient());
    std::vector<std::string> dnames;
    for (const auto& nm : names)
        dnames.push_back("d" + nm);
    const std::vector<std::string> sname{"s"};
    std::string out;
    for (const auto& [key, c] : p.terms()) {
        std::string xs = monomial_text(key.first, names);
        std::string ds = monomial_text(key.second, dnames);
        std::string body = xs;
        if (!ds.empty())
            body += (body.empty() ? "" : "*") + ds;
        std::string coeff = to_string(c, sname);
        std::string term;
        if (body.empty())
            term = c.size() > 1 ? "(" + coeff + ")" : coeff;
        else if (c.is_constant() && c.leading_coefficient() == 1)
            term = body;
        else if (c.is_constant() && c.leading_coefficient() == -1)
            term = "-" + body;
        else
            term = (c.size() > 1 ? "(" + coeff + ")" : coeff) + "*" + body;
        if (!out.empty())
            out += term.front() == '-' ? " - " + term.substr(1) : " + " + term;
        else
            out = term;
    }
    return out;
}

// -------------------------------------------------------------- TwistedElement

TwistedElement::TwistedElement(Polynomial Q, std::map<unsigned, Polynomial> parts)
    : q_(std::move(Q)), parts_(std::move(parts))
{
    if (q_.is_zero())
        throw std::invalid_argument("TwistedElement: Q must be nonzero");
    for (const auto& [j, g] : parts_)
        if (g.ambient() != q_.ambient() + 1)
            throw DimensionError("TwistedElement: numerators live in (x, s)");
    prune();
}

TwistedElement TwistedElement::power(const Polynomial& Q)
{
    return monomial_times(Q, Polynomial::constant(Q.ambient(), 1));
}

TwistedElement TwistedElement::monomial_times(const Polynomial& Q, const Polynomial& g, unsigned pole)
{
    if (g.ambient() != Q.ambient())
        throw DimensionError("TwistedElement: numerator and Q live in different rings");
    return TwistedElement(Q, {{pole, lift_x(g)}});
}

void TwistedElement::prune()
{
    std::erase_if(parts_, [](const auto& kv) { return kv.second.is_zero(); });
}

void TwistedElement::check_same(const TwistedElement& o) const
{
    if (!(q_ == o.q_))
        throw std::invalid_argument("TwistedElement: mismatched Q");
}

std::pair<unsigned, Polynomial> TwistedElement::common_numerator() const
{
    const std::size_t n = ambient();
    if (parts_.empty())
        return {0, Polynomial(n + 1)};
    const unsigned top = parts_.rbegin()->first;
    const Polynomial q = lift_x(q_);
    Polynomial num(n + 1);
    for (const auto& [j, g] : parts_)
        num += g * q.pow(top - j);
    return {top, num};
}

bool TwistedElement::is_zero() const
{
    return common_numerator().second.is_zero();
}

TwistedElement TwistedElement::at_s(const Rational& value) const
{
    std::map<unsigned, Polynomial> out;
    for (const auto& [j, g] : parts_)
        out.emplace(j, substitute(g, ambient(), value));
    return TwistedElement(q_, std::move(out));
}

TwistedElement TwistedElement::scaled(const Polynomial& xs) const
{
    std::map<unsigned, Polynomial> out;
    for (const auto& [j, g] : parts_)
        out.emplace(j, g * xs);
    return TwistedElement(q_, std::move(out));
}

TwistedElement& TwistedElement::operator+=(const TwistedElement& o)
{
    check_same(o);
    for (const auto& [j, g] : o.parts_) {
        auto [it, inserted] = parts_.try_emplace(j, g);
        if (!inserted)
            it->second += g;
    }
    prune();
    return *this;
}

TwistedElement operator-(const TwistedElement& a, const TwistedElement& b)
{
    return a + b.scaled(Polynomial::constant(b.ambient() + 1, -1));
}

bool operator==(const TwistedElement& a, const TwistedElement& b)
{
    a.check_same(b);
    const auto [ta, na] = a.common_numerator();
    const auto [tb, nb] = b.common_numerator();
    const Polynomial q = lift_x(a.q_);
    if (ta >= tb)
        return na == nb * q.pow(ta - tb);
    return na * q.pow(tb - ta) == nb;
}

Polynomial lift_x(const Polynomial& f)
{
    return embed(f, f.ambient() + 1, 0);
}

Polynomial lift_s(const SPoly& c, std::size_t n)
{
    return embed(c, n + 1, n);
}

Polynomial s_coefficient(const Polynomial& xs, unsigned t)
{
    const std::size_t n = xs.ambient() - 1;
    Polynomial out(n);
    for (const auto& [m, c] : xs.terms())
        if (m[n] == t)
            out.add_term(Monomial(std::vector<unsigned>(m.exponents().begin(), m.exponents().end() - 1)), c);
    return out;
}

TwistedElement apply(const WeylOperator& p, const TwistedElement& e)
{
    const std::size_t n = e.ambient();
    if (p.ambient() != n)
        throw DimensionError("apply: operator and element live in different rings");
    DerivativeCache cache(e);
    TwistedElement out(e.Q(), {});
    for (const auto& [key, c] : p.terms()) {
        const Polynomial factor = lift_x(Polynomial::term(key.first)) * lift_s(c, n);
        out += cache.get(key.second).scaled(factor);
    }
    return out;
}

SPoly as_s_polynomial(const BFunction& b)
{
    const auto coeffs = b.coefficients();
    SPoly out(1);
    for (unsigned t = 0; t < coeffs.size(); ++t)
        out.add_term(Monomial(std::vector<unsigned>{t}), coeffs[t]);
    return out;
}

// --------------------------------------------------------- functional equation

std::optional<WeylOperator> certify_functional_equation(const Polynomial& Q, const BFunction& b,
                                                        FunctionalEquationSearch caps)
{
    if (Q.is_zero() || Q.is_constant() || !Q.is_homogeneous())
        throw PreconditionError("certify_functional_equation: Q must be homogeneous of positive degree");
    const std::size_t n = Q.ambient();
    const unsigned k = static_cast<unsigned>(Q.degree());
    const std::size_t order_cap = caps.order_cap ? caps.order_cap : k + n;
    const unsigned s_cap = caps.s_degree_cap.value_or(b.degree());

    const TwistedElement shifted_power = TwistedElement::monomial_times(Q, Q);  // Q^{s+1}
    const TwistedElement target = TwistedElement::power(Q).scaled(lift_s(as_s_polynomial(b), n));
    DerivativeCache cache(shifted_power);
    const Polynomial q = lift_x(Q);
    const Polynomial s = Polynomial::variable(n + 1, n);

    for (unsigned ord = k; ord <= order_cap; ++ord) {
        struct Unknown {
            Monomial alpha, beta;
            unsigned t;
        };
        std::vector<Unknown> unknowns;
        std::vector<Polynomial> columns;
        for (const auto& beta : monomials_up_to(n, ord)) {
            if (beta.degree() < k)
                continue;
            const TwistedElement& db = cache.get(beta);
            for (const auto& alpha : monomials_of_degree(n, beta.degree() - k)) {
                auto [top, num] = db.scaled(lift_x(Polynomial::term(alpha))).common_numerator();
                const Polynomial over = num * q.pow(ord - top);
                Polynomial st = Polynomial::constant(n + 1, 1);
                for (unsigned t = 0; t <= s_cap; ++t) {
                    unknowns.push_back({alpha, beta, t});
                    columns.push_back(over * st);
                    st *= s;
                }
            }
        }
        const Polynomial rhs_poly = target.common_numerator().second * q.pow(ord);

        std::map<Monomial, std::size_t> row_of;
        auto row_index = [&](const Monomial& m) { return row_of.try_emplace(m, row_of.size()).first->second; };
        for (const auto& col : columns)
            for (const auto& [m, c] : col.terms())
                row_index(m);
        for (const auto& [m, c] : rhs_poly.terms())
            row_index(m);
        Matrix rows(row_of.size(), Vector(columns.size(), 0));
        Vector rhs(row_of.size(), 0);
        for (std::size_t u = 0; u < columns.size(); ++u)
            for (const auto& [m, c] : columns[u].terms())
                rows[row_of.at(m)][u] = c;
        for (const auto& [m, c] : rhs_poly.terms())
            rhs[row_of.at(m)] = c;

        const auto sol = solve(rows, rhs, columns.size());
        if (!sol)
            continue;
        WeylOperator p(n);
        for (std::size_t u = 0; u < unknowns.size(); ++u) {
            if ((*sol)[u] == 0)
                continue;
            SPoly c(1);
            c.add_term(Monomial(std::vector<unsigned>{unknowns[u].t}), (*sol)[u]);
            p.add_term(unknowns[u].alpha, unknowns[u].beta, c);
        }
        if (!(apply(p, shifted_power) == target))
            throw InternalError("certify_functional_equation: solved operator fails re-verification");
        return p;
    }
    return std::nullopt;
}

bool euler_identity_check(const Polynomial& Q, const Polynomial& g, const Monomial& m)
{
    if (!Q.is_homogeneous() || Q.is_zero())
        throw PreconditionError("euler_identity_check: Q must be homogeneous");
    if (!g.is_homogeneous())
        throw PreconditionError("euler_identity_check: g must be homogeneous");
    const std::size_t n = Q.ambient();
    const long k = Q.degree();
    WeylOperator op(n);
    for (std::size_t i = 0; i < n; ++i)
        op += WeylOperator::d(n, i) * WeylOperator::x(n, i);
    const Polynomial mg = g.shifted(m);
    const long deg = mg.is_zero() ? 0 : mg.degree();
    const TwistedElement lhs = apply(op, TwistedElement::monomial_times(Q, mg));
    const Polynomial factor = Polynomial::variable(n + 1, n) * Rational(k)
                              + Polynomial::constant(n + 1, static_cast<long>(n) + deg);
    const TwistedElement rhs = TwistedElement::monomial_times(Q, mg).scaled(factor);
    return lhs == rhs;
}

bool delta_production_check(const Arrangement& a, const Monomial& m, const IndexSet& I, const IndexSet& J,
                            const IndexSet& N)
{
    const Polynomial delta = delta_JIN(a, J, I, N);
    const std::size_t n = a.n();
    const Polynomial Q = defining_poly(a);
    const auto frame = dual_frame(a, N);
    std::vector<VectorField> v;
    for (auto j : J)
        v.push_back(frame[static_cast<std::size_t>(std::find(N.begin(), N.end(), j) - N.begin())]);

    const Polynomial hi = a.product(I);
    const Polynomial mhi = hi.shifted(m);
    const std::vector<Polynomial> qgen{Q};
    const GroebnerBasis principal = buchberger(qgen);

    // Pole residues of v_j(H_I Q^s) modulo Q, one column per j. The factor m
    // is left out: when m H_I is already a multiple of Q every residue
    // vanishes and the kernel would no longer single out the combination.
    std::vector<Polynomial> residues;
    for (const auto& vj : v)
        residues.push_back(normal_form(hi * apply_field(vj, Q), principal));
    std::map<Monomial, std::size_t> row_of;
    for (const auto& r : residues)
        for (const auto& [mono, c] : r.terms())
            row_of.try_emplace(mono, row_of.size());
    Matrix rows(row_of.size(), Vector(v.size(), 0));
    for (std::size_t j = 0; j < v.size(); ++j)
        for (const auto& [mono, c] : residues[j].terms())
            rows[row_of.at(mono)][j] = c;
    const Matrix lambdas = kernel(rows, v.size());
    if (lambdas.empty())
        return false;

    const TwistedElement start = TwistedElement::monomial_times(Q, mhi);
    const Polynomial q = lift_x(Q);
    const Polynomial md = delta.shifted(m);
    for (const auto& lambda : lambdas) {
        TwistedElement combo(Q, {});
        Polynomial vm(n);
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (lambda[j] == 0)
                continue;
            const Polynomial scale = Polynomial::constant(n + 1, lambda[j]);
            combo += apply(WeylOperator::field(v[j]), start).scaled(scale);
            vm += apply_field(v[j], Polynomial::term(m)) * lambda[j];
        }
        auto [top, num] = combo.common_numerator();
        Polynomial pole_free = num;
        for (unsigned t = 0; t < top; ++t) {
            auto quotient = divide_exact(pole_free, q);
            if (!quotient)
                return false;
            pole_free = std::move(*quotient);
        }
        const Polynomial A = s_coefficient(pole_free, 1);
        const Polynomial B = s_coefficient(pole_free, 0);
        if (!(lift_x(B) + lift_x(A) * Polynomial::variable(n + 1, n) == pole_free))
            return false;
        if (md.is_zero()) {
            if (!A.is_zero())
                return false;
        } else {
            if (A.is_zero() || !(A.leading_monomial() == md.leading_monomial()))
                return false;
            const Rational c = A.leading_coefficient() / md.leading_coefficient();
            if (!(A == md * c))
                return false;
        }
        if (!(B - A == vm * hi))
            return false;
    }
    return true;
}

WeylOperator pij_operator(const Arrangement& a, std::size_t i, std::size_t j, const IndexSet& sub)
{
    const std::size_t n = a.n(), k = a.k();
    if (i == j || i >= n || j >= n)
        throw PreconditionError("pij_operator: need distinct frame indices below n");
    for (auto t : sub)
        if (t >= k)
            throw PreconditionError("pij_operator: sub-arrangement index out of range");
    if (!std::is_sorted(sub.begin(), sub.end()) || std::adjacent_find(sub.begin(), sub.end()) != sub.end())
        throw PreconditionError("pij_operator: sub-arrangement must be a sorted set of indices");

    IndexSet frame;
    for (auto t : sub) {
        IndexSet trial = frame;
        trial.push_back(t);
        if (a.rank_of(trial) == trial.size())
            frame = std::move(trial);
        if (frame.size() == n)
            break;
    }
    if (frame.size() < n)
        throw PreconditionError("pij_operator: sub-arrangement has rank below n");

    const auto v = dual_frame(a, frame);
    const Polynomial qp = a.product(sub);
    const Polynomial rest = a.product(complement(sub, k));
    const Polynomial hn = a.product(frame);
    const Polynomial hij = a.form(frame[i]) * a.form(frame[j]);

    auto coefficient = [&](const VectorField& field) {
        auto c = divide_exact(hij * apply_field(field, qp), hn);
        if (!c)
            throw InternalError("pij_operator: coefficient is not a polynomial");
        return *c;
    };
    const WeylOperator core = WeylOperator::multiplication(coefficient(v[i])) * WeylOperator::field(v[j])
                              - WeylOperator::multiplication(coefficient(v[j])) * WeylOperator::field(v[i]);
    return core * WeylOperator::multiplication(rest);
}

WeylOperator conjugate_first_order(const WeylOperator& p, const Polynomial& q2)
{
    if (p.order() > 1)
        throw PreconditionError("conjugate_first_order: operator has order above one");
    const std::size_t n = p.ambient();
    if (q2.ambient() != n)
        throw DimensionError("conjugate_first_order: mismatched rings");
    Polynomial applied(n + 1);
    for (const auto& [key, c] : p.terms()) {
        if (key.second.degree() != 1)
            continue;
        std::size_t i = 0;
        while (key.second[i] == 0)
            ++i;
        applied += lift_x(partial(q2, i).shifted(key.first)) * lift_s(c, n);
    }
    return WeylOperator::multiplication(q2) * p - WeylOperator::s(n) * from_xs(applied, n);
}

bool weighted_euler_check(const Polynomial& f, const std::vector<Rational>& w)
{
    if (w.size() != f.ambient())
        throw DimensionError("weighted_euler_check: one weight per variable");
    Polynomial xi(f.ambient());
    for (std::size_t i = 0; i < w.size(); ++i)
        xi += Polynomial::variable(f.ambient(), i) * partial(f, i) * w[i];
    return xi == f;
}

} // namespace bsat
