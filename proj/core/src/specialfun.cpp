#include "sieveconst/specialfun.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sieveconst/constants.hpp"
#include "sieveconst/error.hpp"
#include "sieveconst/quadrature.hpp"

namespace sieveconst {

std::string_view to_string(OmegaMode mode) noexcept
{
    switch (mode) {
    case OmegaMode::Exact: return "exact";
    case OmegaMode::Bound3_5: return "paper-bound-3.5";
    case OmegaMode::Bound2: return "paper-bound-2";
    case OmegaMode::BoundBoth: return "paper-bound-both";
    }
    return "exact";
}

OmegaMode parse_omega_mode(std::string_view text)
{
    for (auto m : {OmegaMode::Exact, OmegaMode::Bound3_5, OmegaMode::Bound2, OmegaMode::BoundBoth})
        if (text == to_string(m))
            return m;
    throw Error(ErrorKind::InvalidInput, "unknown omega mode '" + std::string(text) + "'");
}

// ---- Chebyshev series

ChebSeries::ChebSeries(double lo, double width, std::vector<double> coef)
    : lo_(lo), width_(width), coef_(std::move(coef))
{
}

ChebSeries ChebSeries::fit(const std::function<double(double)>& g, double lo, double width, double tol)
{
    for (std::size_t n = 16; n <= 512; n *= 2) {
        std::vector<double> vals(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double y = std::cos(pi * (static_cast<double>(k) + 0.5) / static_cast<double>(n));
            vals[k] = g(lo + 0.5 * width * (y + 1.0));
        }
        std::vector<double> c(n, 0.0);
        double scale = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                s += vals[k] * std::cos(pi * static_cast<double>(j) * (static_cast<double>(k) + 0.5) / static_cast<double>(n));
            c[j] = 2.0 * s / static_cast<double>(n);
            scale = std::max(scale, std::abs(c[j]));
        }
        c[0] *= 0.5;
        const double tail = std::max({std::abs(c[n - 1]), std::abs(c[n - 2]), std::abs(c[n - 3])});
        if (tail <= 0.1 * tol * std::max(1.0, scale)) {
            while (c.size() > 2 && std::abs(c.back()) < 1e-3 * tol)
                c.pop_back();
            return ChebSeries(lo, width, std::move(c));
        }
    }
    throw Error(ErrorKind::InvalidTolerance, "Chebyshev fit did not reach the requested tolerance");
}

double ChebSeries::operator()(double x) const noexcept
{
    const double y = 2.0 * (x - lo_) / width_ - 1.0;
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t k = coef_.size(); k-- > 1;) {
        const double b0 = 2.0 * y * b1 - b2 + coef_[k];
        b2 = b1;
        b1 = b0;
    }
    return y * b1 - b2 + (coef_.empty() ? 0.0 : coef_[0]);
}

ChebSeries ChebSeries::integral(double value_at_lo) const
{
    const std::size_t n = coef_.size();
    std::vector<double> b(n + 1, 0.0);
    auto c = [&](std::size_t k) { return k < n ? coef_[k] : 0.0; };
    b[1] = c(0) - 0.5 * c(2);
    for (std::size_t k = 2; k <= n; ++k)
        b[k] = (c(k - 1) - c(k + 1)) / (2.0 * static_cast<double>(k));
    double at_minus_one = 0.0;
    for (std::size_t k = 1; k <= n; ++k)
        at_minus_one += (k % 2 == 0 ? 1.0 : -1.0) * b[k];
    for (auto& v : b)
        v *= 0.5 * width_;
    b[0] = value_at_lo - 0.5 * width_ * at_minus_one;
    return ChebSeries(lo_, width_, std::move(b));
}

ChebSeries continue_segment(double left, double value_at_left,
                            const std::function<double(double)>& derivative, double tol)
{
    return ChebSeries::fit(derivative, left, 1.0, tol).integral(value_at_left);
}

// ---- sieve functions

SieveFnTable SieveFnTable::build(double u_max, double tol)
{
    if (!(u_max >= 4.0))
        throw Error(ErrorKind::DomainTooSmall, "sieve table needs u_max >= 4");
    if (!(tol > 0.0 && tol <= 1e-6))
        throw Error(ErrorKind::InvalidTolerance, "tolerance must lie in (0, 1e-6]");
    if (u_max > 64.0)
        throw Error(ErrorKind::ResourceLimit, "sieve table limited to u_max <= 64");

    SieveFnTable t;
    t.u_max_ = u_max;
    t.tol_ = tol;
    const int last = static_cast<int>(std::ceil(u_max));

    auto lower_partial = [&t](double x) {
        if (x <= 2.0)
            return 0.0;
        if (x <= 4.0)
            return std::log(x - 1.0);
        return pick(t.lower_, 4.0, x)(x);
    };
    auto upper_partial = [&t](double x) {
        if (x <= 3.0)
            return 1.0;
        return pick(t.upper_, 3.0, x)(x);
    };

    for (int n = 3; n < last; ++n) {
        const double left = n;
        const double start = (n == 3) ? 1.0 : t.upper_.back()(left);
        t.upper_.push_back(continue_segment(left, start, [&](double u) { return lower_partial(u - 1.0) / (u - 1.0); }, tol));
        if (n + 1 < last) {
            const double l2 = n + 1;
            const double s2 = (n + 1 == 4) ? std::log(3.0) : t.lower_.back()(l2);
            t.lower_.push_back(continue_segment(l2, s2, [&](double u) { return upper_partial(u - 1.0) / (u - 1.0); }, tol));
        }
    }
    return t;
}

const ChebSeries& SieveFnTable::pick(const std::vector<ChebSeries>& segs, double first, double s)
{
    auto idx = static_cast<std::ptrdiff_t>(std::floor(s - first));
    idx = std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(segs.size()) - 1);
    return segs[static_cast<std::size_t>(idx)];
}

void SieveFnTable::check_domain(double s) const
{
    if (!(s >= 1.0 && s <= u_max_))
        throw Error(ErrorKind::OutOfDomain, "sieve function argument " + std::to_string(s) + " outside [1, " + std::to_string(u_max_) + "]");
}

double SieveFnTable::A(double s) const
{
    check_domain(s);
    if (s <= 3.0)
        return 1.0;
    return pick(upper_, 3.0, s)(s);
}

double SieveFnTable::a(double s) const
{
    check_domain(s);
    if (s <= 2.0)
        return 0.0;
    if (s <= 4.0)
        return std::log(s - 1.0);
    return pick(lower_, 4.0, s)(s);
}

double SieveFnTable::F(double u) const { return 2.0 * exp_euler_gamma * A(u) / u; }
double SieveFnTable::f(double u) const { return 2.0 * exp_euler_gamma * a(u) / u; }

std::size_t SieveFnTable::max_degree() const noexcept
{
    std::size_t d = 0;
    for (const auto& s : upper_)
        d = std::max(d, s.degree());
    for (const auto& s : lower_)
        d = std::max(d, s.degree());
    return d;
}

// ---- Buchstab function

namespace {

inline double lagrange4(const double* y, double x) noexcept
{
    const double x0 = x, x1 = x - 1.0, x2 = x - 2.0, x3 = x - 3.0;
    return -y[0] * x1 * x2 * x3 / 6.0 + y[1] * x0 * x2 * x3 / 2.0 - y[2] * x0 * x1 * x3 / 2.0 + y[3] * x0 * x1 * x2 / 6.0;
}

double omega_head(double u) noexcept
{
    if (u < 1.0)
        return 0.0;
    if (u <= 2.0)
        return 1.0 / u;
    return (1.0 + std::log(u - 1.0)) / u;
}

} // namespace

BuchstabTable BuchstabTable::build(double u_max, double step)
{
    if (!(u_max >= 3.5))
        throw Error(ErrorKind::DomainTooSmall, "Buchstab table needs u_max >= 3.5");
    if (!(step > 0.0 && step <= 1e-3))
        throw Error(ErrorKind::InvalidStep, "grid step must lie in (0, 1e-3]");
    const double inv = 1.0 / step;
    const double per = std::round(inv);
    if (std::abs(inv - per) > 1e-6 * per)
        throw Error(ErrorKind::InvalidStep, "grid step must divide 1");
    if (u_max > 200.0)
        throw Error(ErrorKind::ResourceLimit, "Buchstab table limited to u_max <= 200");

    BuchstabTable t;
    t.per_unit_ = static_cast<std::size_t>(per);
    t.step_ = 1.0 / per;
    const auto units = static_cast<std::size_t>(std::ceil(u_max - 2.0 - 1e-12));
    t.u_max_ = 2.0 + static_cast<double>(units);
    const std::size_t n = units * t.per_unit_ + 1;
    t.values_.assign(n, 0.0);
    t.values_[0] = 0.5;

    const auto& gl = gauss_legendre(4);
    const double h = t.step_;
    double y = 1.0; // u*omega(u) at u = 2
    for (std::size_t i = 1; i < n; ++i) {
        const double a = t.node(i - 1);
        double acc = 0.0;
        for (std::size_t g = 0; g < gl.nodes.size(); ++g) {
            const double x = a + 0.5 * h * (gl.nodes[g] + 1.0) - 1.0;
            double w;
            if (i <= t.per_unit_)
                w = 1.0 / x;
            else
                w = t.interpolate(x);
            acc += gl.weights[g] * w;
        }
        y += 0.5 * h * acc;
        t.values_[i] = y / t.node(i);
    }

    t.suffix_max_.assign(n, 0.0);
    double m = 0.0;
    for (std::size_t i = n; i-- > 0;) {
        m = std::max(m, t.values_[i]);
        t.suffix_max_[i] = m;
    }
    return t;
}

double BuchstabTable::interpolate(double u) const noexcept
{
    const double p = (u - 2.0) * static_cast<double>(per_unit_);
    const std::size_t last = values_.size() - 1;
    std::size_t i = p <= 0.0 ? 0 : std::min(static_cast<std::size_t>(p), last - 1);
    const std::size_t seg_start = (i / per_unit_) * per_unit_;
    const std::size_t seg_end = std::min(seg_start + per_unit_, last);
    std::size_t s = i > 0 ? i - 1 : 0;
    s = std::clamp(s, seg_start, seg_end - 3);
    return lagrange4(&values_[s], p - static_cast<double>(s));
}

double BuchstabTable::marched(double u) const
{
    if (!(u >= 2.0 && u <= u_max_))
        throw Error(ErrorKind::OutOfDomain, "marched grid covers [2, " + std::to_string(u_max_) + "]");
    return interpolate(u);
}

double BuchstabTable::operator()(double u) const
{
    if (u <= 3.0)
        return omega_head(u);
    if (u > u_max_)
        throw Error(ErrorKind::OutOfDomain, "Buchstab argument " + std::to_string(u) + " beyond table end " + std::to_string(u_max_));
    return interpolate(u);
}

double BuchstabTable::upper(double u, OmegaMode mode) const
{
    switch (mode) {
    case OmegaMode::Exact:
        break;
    case OmegaMode::Bound3_5:
        if (u >= 3.5)
            return omega_bound_from_3_5;
        break;
    case OmegaMode::Bound2:
        if (u >= 2.0)
            return omega_bound_from_2;
        break;
    case OmegaMode::BoundBoth:
        if (u >= 3.5)
            return omega_bound_from_3_5;
        if (u >= 2.0)
            return omega_bound_from_2;
        break;
    }
    return (*this)(u);
}

double BuchstabTable::sup_from(double u, OmegaMode mode) const
{
    // sup of the exact function over [x, y) sampled on the grid, y clipped to the table
    auto grid_sup = [this](double x, double y) {
        double m = 0.0;
        const auto lo = static_cast<std::size_t>(std::max(0.0, std::floor((x - 2.0) * static_cast<double>(per_unit_))));
        for (std::size_t i = lo; i < values_.size() && node(i) < y; ++i)
            m = std::max(m, values_[i]);
        return m;
    };
    double head = 0.0;
    if (u < 2.0)
        head = 1.0 / std::max(u, 1.0);
    const double from = std::max(u, 2.0);

    switch (mode) {
    case OmegaMode::Exact: {
        if (from >= u_max_)
            return std::max(head, suffix_max_[values_.size() - per_unit_]);
        const auto i = static_cast<std::size_t>(std::floor((from - 2.0) * static_cast<double>(per_unit_)));
        return std::max(head, suffix_max_[i]);
    }
    case OmegaMode::Bound2:
        return std::max(head, omega_bound_from_2);
    case OmegaMode::Bound3_5:
        if (from >= 3.5)
            return std::max(head, omega_bound_from_3_5);
        return std::max({head, grid_sup(from, 3.5), omega_bound_from_3_5});
    case OmegaMode::BoundBoth:
        if (from >= 3.5)
            return std::max(head, omega_bound_from_3_5);
        return std::max(head, omega_bound_from_2);
    }
    return head;
}

// ---- elementary integrals

double log_integral(double x)
{
    if (!(x > 1.0))
        throw Error(ErrorKind::OutOfDomain, "log integral needs x > 1");
    return integrate_1d([](double t) { return std::log(t - 1.0) / t; }, 2.0, x, 1e-14).value;
}

double sigma(double a, double b, double c)
{
    if (!(a > 1.0 && b > 1.0))
        throw Error(ErrorKind::OutOfDomain, "sigma needs both endpoints > 1");
    if (!(c > 0.0))
        throw Error(ErrorKind::OutOfDomain, "sigma needs c > 0");
    return integrate_1d([c](double t) { return std::log(c / (t - 1.0)) / t; }, a, b, 1e-14).value;
}

double sigma0(double t)
{
    if (!(t >= 1.0))
        throw Error(ErrorKind::OutOfDomain, "sigma0 needs t >= 1");
    static const double denom = 1.0 - sigma(3.0, 5.0, 4.0);
    return sigma(3.0, t + 2.0, t + 1.0) / denom;
}

double theta_of_nu(double nu)
{
    if (!(nu > 0.0 && nu <= 1.0))
        throw Error(ErrorKind::OutOfDomain, "nu must lie in (0, 1]");
    if (nu <= 1.0 / 15.0)
        return (6.0 - 5.0 * nu) / 10.0;
    if (nu <= 0.1)
        return 0.5 + nu;
    if (nu <= 3.0 / 14.0)
        return (5.0 - 2.0 * nu) / 8.0;
    if (nu <= 0.25)
        return (3.0 + 2.0 * nu) / 6.0;
    if (nu <= 2.0 / 7.0)
        return (2.0 - nu) / 3.0;
    if (nu <= 0.4)
        return (2.0 + nu) / 4.0;
    if (nu <= 0.5)
        return 1.0 - nu;
    return 0.5;
}

const SieveFnTable& default_sieve_table()
{
    static const SieveFnTable table = SieveFnTable::build(default_sieve_u_max, default_sieve_tol);
    return table;
}

const BuchstabTable& default_buchstab_table()
{
    static const BuchstabTable table = BuchstabTable::build(default_buchstab_u_max, default_buchstab_step);
    return table;
}

} // namespace sieveconst
