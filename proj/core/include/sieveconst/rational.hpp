#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace sieveconst {

// exact parameter values such as 29/250; kept reduced with positive denominator
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    // accepts "p/q", integers and plain decimals ("0.332")
    static Rational parse(std::string_view text);

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }
    double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const;

    friend bool operator==(const Rational&, const Rational&) = default;
    friend bool operator<(const Rational& x, const Rational& y) { return x.compare(y) < 0; }
    friend bool operator<=(const Rational& x, const Rational& y) { return x.compare(y) <= 0; }
    friend bool operator>(const Rational& x, const Rational& y) { return x.compare(y) > 0; }
    friend bool operator>=(const Rational& x, const Rational& y) { return x.compare(y) >= 0; }

    // throw invalid-input on int64 overflow
    friend Rational operator+(const Rational& x, const Rational& y);
    friend Rational operator-(const Rational& x, const Rational& y);
    friend Rational operator*(const Rational& x, const Rational& y);
    friend Rational operator/(const Rational& x, const Rational& y);

    int compare(const Rational& other) const;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

} // namespace sieveconst
