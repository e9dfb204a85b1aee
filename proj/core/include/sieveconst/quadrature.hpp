#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "sieveconst/specialfun.hpp"

namespace sieveconst {

struct Estimate {
    double value = 0.0;
    double error = 0.0;
};

// Gauss-Legendre rule on [-1, 1]
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// cached, n in [1, 256]
const GaussRule& gauss_legendre(std::size_t n);

// adaptive Gauss-Kronrod 7/15 bisection; absolute tolerance; oriented
Estimate integrate_1d(const std::function<double(double)>& f, double a, double b, double tol);
// same, never letting a panel straddle one of the breakpoints
Estimate integrate_1d(const std::function<double(double)>& f, double a, double b,
                      std::span<const double> breakpoints, double tol);

// fixed-order Gauss-Legendre on [a, b]
double gauss_fixed(const std::function<double(double)>& f, double a, double b, std::size_t order);

// ---- nested integration over ordered regions

using Point = std::span<const double>;
using LimitFn = std::function<double(Point)>; // receives the variables fixed so far

struct SimplexSpec {
    std::vector<std::pair<LimitFn, LimitFn>> limits;
    std::function<double(Point)> integrand;

    std::size_t dim() const noexcept { return limits.size(); }
};

struct SimplexResult {
    double value = 0.0;     // at the requested order
    double refined = 0.0;   // at order + extra
    double difference = 0.0;
};

inline constexpr std::size_t default_refine_extra = 8;

double integrate_simplex_once(const SimplexSpec& spec, std::size_t order);
SimplexResult integrate_simplex(const SimplexSpec& spec, std::size_t order,
                                std::size_t extra = default_refine_extra);

// default nodes per nesting level
std::size_t default_simplex_order(std::size_t dim) noexcept;
double default_refine_threshold(std::size_t dim) noexcept;

// ---- phi-indexed Buchstab families

// one variable of an ordered chain: lower limit is a constant or the previous variable
struct ChainBound {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_is_previous = false;

    static ChainBound fixed(double lo, double hi) { return {lo, hi, false}; }
    static ChainBound after_previous(double hi) { return {0.0, hi, true}; }
};

// integral of omega((phi - sum x)/x_pivot) / (prod x * x_pivot) over the chain region
struct ChainDomain {
    std::vector<ChainBound> bounds;
    std::size_t pivot = 1;
};

// quadrature nodes of a chain integral, flattened for fast phi sweeps
class BuchstabCloud {
public:
    BuchstabCloud(const ChainDomain& domain, std::size_t order);

    double operator()(double phi, const BuchstabTable& omega, OmegaMode mode) const;
    // sum of weights * sup of omega beyond the argument at phi
    double tail(double phi, const BuchstabTable& omega, OmegaMode mode) const;

    bool empty() const noexcept { return weight_.empty(); }
    std::size_t size() const noexcept { return weight_.size(); }
    double total_weight() const noexcept;
    // the family vanishes below phi_low() and is constant above phi_settled(threshold)
    double phi_low() const noexcept { return phi_low_; }
    double phi_settled(double threshold) const noexcept;

private:
    std::vector<double> sum_;
    std::vector<double> inv_pivot_;
    std::vector<double> pivot_;
    std::vector<double> weight_;
    double phi_low_ = std::numeric_limits<double>::infinity();
};

// the same integral evaluated without storing nodes, for high orders;
// omega_of maps the argument (phi - sum)/pivot to the value used
double chain_integral(const ChainDomain& domain, std::size_t order, double phi,
                      const std::function<double(double)>& omega_of);

struct PhiScanSpec {
    double phi_min = 2.0;
    double phi_max = 6.0;
    double scan_step = 1e-3;
    OmegaMode tail_mode = OmegaMode::Bound3_5;
};

struct PhiFamily {
    std::function<double(double)> value;
    // value is 0 below active_lo and constant above active_hi
    double active_lo = 2.0;
    double active_hi = std::numeric_limits<double>::infinity();
    // upper bound for the family on [phi_max, inf); may be empty
    std::function<double(double)> tail;
};

struct PhiMaximum {
    double value = 0.0;
    double phi = 2.0;
    double tail = 0.0;
    bool from_tail = false;
    std::size_t evaluations = 0;
};

PhiMaximum maximize_over_phi(const PhiFamily& family, const PhiScanSpec& scan);

} // namespace sieveconst
