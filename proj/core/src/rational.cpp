#include "sieveconst/rational.hpp"

#include <charconv>
#include <limits>
#include <numeric>

#include "sieveconst/error.hpp"

namespace sieveconst {

__extension__ typedef __int128 i128;

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole)
{
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw Error(ErrorKind::InvalidInput, "not a rational: '" + std::string(whole) + "'");
    return v;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
        s.remove_suffix(1);
    return s;
}

} // namespace

Rational::Rational(std::int64_t num, std::int64_t den)
{
    if (den == 0)
        throw Error(ErrorKind::InvalidInput, "zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    num_ = num / (g == 0 ? 1 : g);
    den_ = den / (g == 0 ? 1 : g);
}

Rational Rational::parse(std::string_view text)
{
    const auto s = trim(text);
    if (auto slash = s.find('/'); slash != std::string_view::npos)
        return Rational(parse_int(trim(s.substr(0, slash)), text), parse_int(trim(s.substr(slash + 1)), text));

    auto dot = s.find('.');
    if (dot == std::string_view::npos)
        return Rational(parse_int(s, text));

    auto ip = s.substr(0, dot);
    auto fp = s.substr(dot + 1);
    if (fp.size() > 15 || fp.empty())
        throw Error(ErrorKind::InvalidInput, "decimal has too many digits: '" + std::string(text) + "'");
    bool neg = !ip.empty() && ip.front() == '-';
    if (neg)
        ip.remove_prefix(1);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < fp.size(); ++i)
        den *= 10;
    std::int64_t whole = ip.empty() ? 0 : parse_int(ip, text);
    std::int64_t frac = parse_int(fp, text);
    std::int64_t num = whole * den + frac;
    return Rational(neg ? -num : num, den);
}

namespace {

Rational make_checked(i128 num, i128 den)
{
    if (den < 0) {
        num = -num;
        den = -den;
    }
    i128 a = num < 0 ? -num : num, b = den;
    while (b != 0) {
        const i128 t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        num /= a;
        den /= a;
    }
    constexpr i128 lim = std::numeric_limits<std::int64_t>::max();
    if (num > lim || num < -lim || den > lim)
        throw Error(ErrorKind::InvalidInput, "rational arithmetic overflow");
    return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

} // namespace

Rational operator+(const Rational& x, const Rational& y)
{
    return make_checked(static_cast<i128>(x.num_) * y.den_ + static_cast<i128>(y.num_) * x.den_,
                        static_cast<i128>(x.den_) * y.den_);
}

Rational operator-(const Rational& x, const Rational& y)
{
    return make_checked(static_cast<i128>(x.num_) * y.den_ - static_cast<i128>(y.num_) * x.den_,
                        static_cast<i128>(x.den_) * y.den_);
}

Rational operator*(const Rational& x, const Rational& y)
{
    return make_checked(static_cast<i128>(x.num_) * y.num_, static_cast<i128>(x.den_) * y.den_);
}

Rational operator/(const Rational& x, const Rational& y)
{
    if (y.num_ == 0)
        throw Error(ErrorKind::InvalidInput, "division by zero");
    return make_checked(static_cast<i128>(x.num_) * y.den_, static_cast<i128>(x.den_) * y.num_);
}

int Rational::compare(const Rational& other) const
{
    const i128 l = static_cast<i128>(num_) * other.den_;
    const i128 r = static_cast<i128>(other.num_) * den_;
    return l < r ? -1 : (l > r ? 1 : 0);
}

std::string Rational::str() const
{
    if (den_ == 1)
        return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

} // namespace sieveconst
