#include "bsat/polynomial.hpp"

#include "bsat/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace bsat {

Monomial Monomial::variable(std::size_t n, std::size_t i, unsigned power)
{
    if (i >= n)
        throw std::out_of_range("variable index out of range");
    Monomial m(n);
    m.exps_[i] = power;
    return m;
}

unsigned Monomial::degree() const
{
    return std::accumulate(exps_.begin(), exps_.end(), 0u);
}

bool Monomial::divides(const Monomial& other) const
{
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] > other.exps_[i])
            return false;
    return true;
}

Monomial Monomial::lcm(const Monomial& other) const
{
    Monomial r(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i)
        r.exps_[i] = std::max(exps_[i], other.exps_[i]);
    return r;
}

Monomial operator*(const Monomial& a, const Monomial& b)
{
    Monomial r(a);
    for (std::size_t i = 0; i < r.exps_.size(); ++i)
        r.exps_[i] += b.exps_[i];
    return r;
}

Monomial operator/(const Monomial& a, const Monomial& b)
{
    Monomial r(a);
    for (std::size_t i = 0; i < r.exps_.size(); ++i)
        r.exps_[i] -= b.exps_[i];
    return r;
}

int grevlex_compare(const Monomial& a, const Monomial& b)
{
    const unsigned da = a.degree(), db = b.degree();
    if (da != db)
        return da > db ? 1 : -1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i])
            return a[i] < b[i] ? 1 : -1;
    }
    return 0;
}

namespace {

void enumerate_monomials(std::vector<unsigned>& exps, std::size_t pos, unsigned remaining,
                         std::vector<Monomial>& out)
{
    if (pos + 1 == exps.size()) {
        exps[pos] = remaining;
        out.emplace_back(exps);
        return;
    }
    for (unsigned e = remaining + 1; e-- > 0;) {
        exps[pos] = e;
        enumerate_monomials(exps, pos + 1, remaining - e, out);
    }
    exps[pos] = 0;
}

} // namespace

std::vector<Monomial> monomials_of_degree(std::size_t n, unsigned d)
{
    std::vector<Monomial> out;
    if (n == 0) {
        if (d == 0)
            out.emplace_back(0);
        return out;
    }
    std::vector<unsigned> exps(n, 0);
    enumerate_monomials(exps, 0, d, out);
    std::sort(out.begin(), out.end(), GrevlexGreater{});
    return out;
}

Polynomial Polynomial::constant(std::size_t n, const Rational& c)
{
    Polynomial p(n);
    p.add_term(Monomial(n), c);
    return p;
}

Polynomial Polynomial::variable(std::size_t n, std::size_t i)
{
    Polynomial p(n);
    p.add_term(Monomial::variable(n, i), 1);
    return p;
}

Polynomial Polynomial::term(const Monomial& m, const Rational& c)
{
    Polynomial p(m.size());
    p.add_term(m, c);
    return p;
}

Rational Polynomial::coefficient(const Monomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& c)
{
    if (m.size() != n_)
        throw DimensionError("monomial length does not match ambient variable count");
    if (c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

int Polynomial::degree() const
{
    if (terms_.empty())
        return -1;
    return static_cast<int>(terms_.begin()->first.degree());
}

bool Polynomial::is_homogeneous() const
{
    if (terms_.empty())
        return true;
    const unsigned d = terms_.begin()->first.degree();
    for (const auto& [m, c] : terms_)
        if (m.degree() != d)
            return false;
    return true;
}

void Polynomial::check_same_ring(const Polynomial& o) const
{
    if (n_ != o.n_)
        throw DimensionError("polynomials live in rings with " + std::to_string(n_) + " and "
                             + std::to_string(o.n_) + " variables");
}

Polynomial& Polynomial::operator+=(const Polynomial& o)
{
    check_same_ring(o);
    for (const auto& [m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o)
{
    check_same_ring(o);
    for (const auto& [m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    a.check_same_ring(b);
    Polynomial r(a.n_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_)
            r.add_term(ma * mb, ca * cb);
    return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& o)
{
    *this = *this * o;
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, coeff] : terms_)
        coeff *= c;
    return *this;
}

Polynomial Polynomial::operator-() const
{
    Polynomial r(*this);
    for (auto& [m, c] : r.terms_)
        c = -c;
    return r;
}

bool operator==(const Polynomial& a, const Polynomial& b)
{
    return a.n_ == b.n_ && a.terms_ == b.terms_;
}

Polynomial Polynomial::pow(unsigned e) const
{
    Polynomial result = constant(n_, 1);
    Polynomial base = *this;
    while (e) {
        if (e & 1u)
            result *= base;
        e >>= 1;
        if (e)
            base *= base;
    }
    return result;
}

Polynomial Polynomial::shifted(const Monomial& m) const
{
    Polynomial r(n_);
    for (const auto& [t, c] : terms_)
        r.terms_.emplace_hint(r.terms_.end(), t * m, c);
    return r;
}

Polynomial partial(const Polynomial& f, std::size_t i)
{
    if (i >= f.ambient())
        throw std::out_of_range("partial: variable index out of range");
    Polynomial r(f.ambient());
    for (const auto& [m, c] : f.terms()) {
        const unsigned e = m[i];
        if (e == 0)
            continue;
        auto exps = std::vector<unsigned>(m.exponents().begin(), m.exponents().end());
        exps[i] = e - 1;
        r.add_term(Monomial(std::move(exps)), c * e);
    }
    return r;
}

Polynomial homogeneous_component(const Polynomial& f, unsigned d)
{
    Polynomial r(f.ambient());
    for (const auto& [m, c] : f.terms())
        if (m.degree() == d)
            r.add_term(m, c);
    return r;
}

Polynomial substitute(const Polynomial& f, std::size_t var, const Rational& value)
{
    if (var >= f.ambient())
        throw std::out_of_range("substitute: variable index out of range");
    Polynomial r(f.ambient());
    for (const auto& [m, c] : f.terms()) {
        auto exps = std::vector<unsigned>(m.exponents().begin(), m.exponents().end());
        Rational factor = 1;
        for (unsigned e = 0; e < exps[var]; ++e)
            factor *= value;
        exps[var] = 0;
        r.add_term(Monomial(std::move(exps)), c * factor);
    }
    return r;
}

std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& g)
{
    if (g.is_zero())
        throw std::invalid_argument("divide_exact: division by zero polynomial");
    if (f.ambient() != g.ambient())
        throw DimensionError("divide_exact: mismatched rings");
    Polynomial rest = f;
    Polynomial quotient(f.ambient());
    const Monomial& lg = g.leading_monomial();
    const Rational& cg = g.leading_coefficient();
    while (!rest.is_zero()) {
        const Monomial& lr = rest.leading_monomial();
        if (!lg.divides(lr))
            return std::nullopt;
        Polynomial step = Polynomial::term(lr / lg, rest.leading_coefficient() / cg);
        quotient += step;
        rest -= step * g;
    }
    return quotient;
}

Polynomial embed(const Polynomial& f, std::size_t new_n, std::size_t offset)
{
    if (f.ambient() + offset > new_n)
        throw DimensionError("embed: target ring too small");
    Polynomial r(new_n);
    for (const auto& [m, c] : f.terms()) {
        std::vector<unsigned> exps(new_n, 0);
        for (std::size_t i = 0; i < m.size(); ++i)
            exps[i + offset] = m[i];
        r.add_term(Monomial(std::move(exps)), c);
    }
    return r;
}

std::vector<std::string> default_variable_names(std::size_t n)
{
    static const char* small[] = {"x", "y", "z", "w"};
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i)
        names.push_back(n <= 4 ? std::string(small[i]) : "x" + std::to_string(i + 1));
    return names;
}

std::string to_string(const Polynomial& f, std::span<const std::string> names)
{
    std::vector<std::string> fallback;
    if (names.size() < f.ambient()) {
        fallback = default_variable_names(f.ambient());
        names = fallback;
    }
    if (f.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : f.terms()) {
        Rational mag = abs(c);
        const bool negative = c < 0;
        if (first)
            os << (negative ? "-" : "");
        else
            os << (negative ? " - " : " + ");
        first = false;
        const bool unit = mag == 1;
        if (!unit || m.is_one())
            os << to_string(mag);
        bool need_star = !unit || m.is_one();
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0)
                continue;
            if (need_star)
                os << '*';
            os << names[i];
            if (m[i] > 1)
                os << '^' << m[i];
            need_star = true;
        }
    }
    return os.str();
}

} // namespace bsat
