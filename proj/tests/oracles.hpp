#pragma once

// Reference computations used by the tests. They deliberately avoid the
// library's quadrature and tables so agreement means something.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

// dilogarithm by its power series, fine for 0 <= z <= 1/2
inline double dilog_small(double z)
{
    double term = z, sum = 0.0;
    for (int k = 1; k < 400; ++k) {
        sum += term / (static_cast<double>(k) * k);
        term *= z;
        if (term < 1e-20)
            break;
    }
    return sum;
}

// integral from 2 to x of log(t-1)/t, x >= 2, via the dilogarithm identity
inline double log_integral(double x)
{
    const double l = std::log(x);
    return 0.5 * l * l + dilog_small(1.0 / x) - std::numbers::pi * std::numbers::pi / 12.0;
}

// integral of log(c/(t-1))/t over [a, b] for a, b >= 2
inline double sigma(double a, double b, double c)
{
    return std::log(c) * std::log(b / a) - (log_integral(b) - log_integral(a));
}

inline double sigma0(double t)
{
    return sigma(3.0, t + 2.0, t + 1.0) / (1.0 - sigma(3.0, 5.0, 4.0));
}

// composite Simpson with n (even) panels
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 2000)
{
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i)
        s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// midpoint Riemann sum
inline double riemann(const std::function<double(double)>& f, double a, double b, long n)
{
    const double h = (b - a) / static_cast<double>(n);
    long double s = 0.0L;
    for (long i = 0; i < n; ++i)
        s += f(a + (static_cast<double>(i) + 0.5) * h);
    return static_cast<double>(s * h);
}

inline bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

// prime factors with multiplicity; Omega(1) = 0
inline int big_omega(std::uint64_t n)
{
    int k = 0;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        while (n % d == 0) {
            n /= d;
            ++k;
        }
    return n > 1 ? k + 1 : k;
}

// Buchstab omega on [1, 3] in closed form
inline double buchstab_closed(double u)
{
    return u <= 2.0 ? 1.0 / u : (1.0 + std::log(u - 1.0)) / u;
}

} // namespace oracle
