#pragma once

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

namespace sieveconst {

// how the Buchstab function is replaced by its tail bounds inside integrals
enum class OmegaMode {
    Exact,
    Bound3_5, // 0.561522 for u >= 3.5
    Bound2,   // 0.567144 for u >= 2
    BoundBoth // 0.567144 on [2, 3.5), 0.561522 from 3.5 on
};

std::string_view to_string(OmegaMode mode) noexcept;
OmegaMode parse_omega_mode(std::string_view text);

// Chebyshev expansion on [lo, lo + width]
class ChebSeries {
public:
    ChebSeries() = default;
    ChebSeries(double lo, double width, std::vector<double> coef);

    // interpolates g at Chebyshev points, doubling the degree until the tail drops below tol
    static ChebSeries fit(const std::function<double(double)>& g, double lo, double width, double tol);

    double operator()(double x) const noexcept;
    // antiderivative vanishing at lo, plus value_at_lo
    ChebSeries integral(double value_at_lo) const;

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return lo_ + width_; }
    std::size_t degree() const noexcept { return coef_.empty() ? 0 : coef_.size() - 1; }

private:
    double lo_ = 0.0;
    double width_ = 1.0;
    std::vector<double> coef_;
};

// solves g' = derivative on [left, left + 1] with g(left) = value_at_left
ChebSeries continue_segment(double left, double value_at_left,
                            const std::function<double(double)>& derivative, double tol);

// upper and lower linear sieve functions, stored through A(s) = sF(s)/2e^gamma and a(s) = sf(s)/2e^gamma
class SieveFnTable {
public:
    static SieveFnTable build(double u_max, double tol);

    double A(double s) const;
    double a(double s) const;
    double F(double u) const;
    double f(double u) const;

    double u_max() const noexcept { return u_max_; }
    double tolerance() const noexcept { return tol_; }
    std::size_t max_degree() const noexcept;

private:
    double u_max_ = 0.0;
    double tol_ = 0.0;
    std::vector<ChebSeries> upper_; // A on [3,4], [4,5], ...
    std::vector<ChebSeries> lower_; // a on [4,5], [5,6], ...

    void check_domain(double s) const;
    static const ChebSeries& pick(const std::vector<ChebSeries>& segs, double first, double s);
};

class BuchstabTable {
public:
    static BuchstabTable build(double u_max, double step);

    // closed forms on [1,3], grid beyond; zero below 1
    double operator()(double u) const;
    // grid interpolant, also on [2,3] where it was obtained by marching
    double marched(double u) const;
    // value used inside integrals for the given mode
    double upper(double u, OmegaMode mode) const;
    // sup over v >= u of upper(v, mode), for tail estimates
    double sup_from(double u, OmegaMode mode) const;

    double u_max() const noexcept { return u_max_; }
    double step() const noexcept { return step_; }
    std::size_t size() const noexcept { return values_.size(); }
    double node(std::size_t i) const noexcept { return 2.0 + static_cast<double>(i) * step_; }
    double node_value(std::size_t i) const noexcept { return values_[i]; }

private:
    double u_max_ = 0.0;
    double step_ = 0.0;
    std::size_t per_unit_ = 0;
    std::vector<double> values_;   // omega at 2 + i*step
    std::vector<double> suffix_max_;

    double interpolate(double u) const noexcept;
};

// L(x) = integral from 2 to x of log(t-1)/t dt, oriented
double log_integral(double x);

// oriented integral of log(c/(t-1))/t over [a, b]
double sigma(double a, double b, double c);
double sigma0(double t);

// level of distribution for well-factorable weights as a function of nu
double theta_of_nu(double nu);

// shared tables at default resolution, built on first use
const SieveFnTable& default_sieve_table();
const BuchstabTable& default_buchstab_table();

inline constexpr double default_sieve_u_max = 16.0;
inline constexpr double default_sieve_tol = 1e-13;
inline constexpr double default_buchstab_u_max = 40.0;
inline constexpr double default_buchstab_step = 5e-4;

} // namespace sieveconst
