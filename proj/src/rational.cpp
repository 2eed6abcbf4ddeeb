#include "bsat/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace bsat {

namespace {

bool is_integer_literal(std::string_view s)
{
    if (!s.empty() && (s.front() == '-' || s.front() == '+'))
        s.remove_prefix(1);
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

Integer parse_integer(std::string_view s)
{
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    return Integer(std::string(s), 10);
}

} // namespace

Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    const auto num = text.substr(0, slash);
    if (!is_integer_literal(num))
        throw std::invalid_argument("not an exact rational: \"" + std::string(text) + "\"");
    Rational q;
    q.get_num() = parse_integer(num);
    if (slash == std::string_view::npos) {
        q.get_den() = 1;
        return q;
    }
    const auto den = text.substr(slash + 1);
    if (!is_integer_literal(den) || den.front() == '-' || den.front() == '+')
        throw std::invalid_argument("not an exact rational: \"" + std::string(text) + "\"");
    q.get_den() = parse_integer(den);
    if (q.get_den() == 0)
        throw std::invalid_argument("zero denominator in \"" + std::string(text) + "\"");
    q.canonicalize();
    return q;
}

Rational ratio(long num, long den)
{
    if (den == 0)
        throw std::invalid_argument("ratio: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q)
{
    return q.get_str(10);
}

Integer binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

} // namespace bsat
