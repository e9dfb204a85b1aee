#include "sieveconst/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>

#include "sieveconst/constants.hpp"
#include "sieveconst/error.hpp"

namespace sieveconst {

// ---- Gauss-Legendre

namespace {

GaussRule make_gauss_legendre(std::size_t n)
{
    GaussRule r;
    r.nodes.assign(n, 0.0);
    r.weights.assign(n, 0.0);
    if (n == 1) {
        r.weights[0] = 2.0;
        return r;
    }
    const auto nd = static_cast<double>(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(pi * (static_cast<double>(i) + 0.75) / (nd + 0.5));
        double pp = 1.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (std::size_t j = 1; j <= n; ++j) {
                const double jd = static_cast<double>(j);
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * jd - 1.0) * z * p2 - (jd - 1.0) * p3) / jd;
            }
            pp = nd * (z * p1 - p2) / (z * z - 1.0);
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-16)
                break;
        }
        const double w = 2.0 / ((1.0 - z * z) * pp * pp);
        r.nodes[i] = -z;
        r.nodes[n - 1 - i] = z;
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1)
        r.nodes[n / 2] = 0.0;
    return r;
}

constexpr std::size_t max_gauss_order = 256;

} // namespace

const GaussRule& gauss_legendre(std::size_t n)
{
    static std::array<GaussRule, max_gauss_order + 1> rules;
    static std::array<std::once_flag, max_gauss_order + 1> flags;
    if (n == 0 || n > max_gauss_order)
        throw Error(ErrorKind::InvalidInput, "Gauss-Legendre order must lie in [1, 256]");
    std::call_once(flags[n], [n] { rules[n] = make_gauss_legendre(n); });
    return rules[n];
}

double gauss_fixed(const std::function<double(double)>& f, double a, double b, std::size_t order)
{
    const auto& g = gauss_legendre(order);
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    double s = 0.0;
    for (std::size_t i = 0; i < order; ++i)
        s += g.weights[i] * f(mid + half * g.nodes[i]);
    return half * s;
}

// ---- adaptive Gauss-Kronrod

namespace {

constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b)
{
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    std::array<double, 15> fv{};
    fv[7] = f(mid);
    for (int j = 0; j < 7; ++j) {
        fv[j] = f(mid - half * xgk[j]);
        fv[14 - j] = f(mid + half * xgk[j]);
    }
    double kr = wgk[7] * fv[7];
    double ga = wg[3] * fv[7];
    double resabs = std::abs(kr);
    for (int j = 0; j < 7; ++j) {
        const double pair = fv[j] + fv[14 - j];
        kr += wgk[j] * pair;
        resabs += wgk[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
        if (j % 2 == 1)
            ga += wg[j / 2] * pair;
    }
    const double mean = 0.5 * kr;
    double resasc = wgk[7] * std::abs(fv[7] - mean);
    for (int j = 0; j < 7; ++j)
        resasc += wgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));

    const double ah = std::abs(half);
    double err = std::abs((kr - ga) * half);
    resasc *= ah;
    resabs *= ah;
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(50.0 * eps * resabs, err);
    return {a, b, kr * half, err};
}

Estimate adaptive(const std::function<double(double)>& f, double a, double b, double tol)
{
    constexpr std::size_t max_panels = 4000;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    auto by_error = [](const Panel& x, const Panel& y) { return x.error < y.error; };

    std::vector<Panel> heap{gk15(f, a, b)};
    double total = heap[0].value, err = heap[0].error;
    while (err > std::max(tol, 50.0 * eps * std::abs(total))) {
        if (heap.size() >= max_panels)
            throw QuadratureFailure("adaptive quadrature did not converge", total, err);
        std::pop_heap(heap.begin(), heap.end(), by_error);
        const Panel worst = heap.back();
        heap.pop_back();
        const double m = 0.5 * (worst.a + worst.b);
        if (!(m > std::min(worst.a, worst.b) && m < std::max(worst.a, worst.b)))
            throw QuadratureFailure("adaptive quadrature hit floating-point resolution", total, err);
        const Panel l = gk15(f, worst.a, m), r = gk15(f, m, worst.b);
        heap.push_back(l);
        std::push_heap(heap.begin(), heap.end(), by_error);
        heap.push_back(r);
        std::push_heap(heap.begin(), heap.end(), by_error);
        total = 0.0;
        err = 0.0;
        for (const auto& p : heap) {
            total += p.value;
            err += p.error;
        }
    }
    if (!std::isfinite(total))
        throw QuadratureFailure("integrand produced a non-finite value", total, err);
    return {total, err};
}

} // namespace

Estimate integrate_1d(const std::function<double(double)>& f, double a, double b, double tol)
{
    if (!(tol > 0.0))
        throw Error(ErrorKind::InvalidTolerance, "quadrature tolerance must be positive");
    if (a == b)
        return {0.0, 0.0};
    if (b < a) {
        const auto r = adaptive(f, b, a, tol);
        return {-r.value, r.error};
    }
    return adaptive(f, a, b, tol);
}

Estimate integrate_1d(const std::function<double(double)>& f, double a, double b,
                      std::span<const double> breakpoints, double tol)
{
    if (b < a) {
        const auto r = integrate_1d(f, b, a, breakpoints, tol);
        return {-r.value, r.error};
    }
    std::vector<double> cuts{a};
    for (double x : breakpoints)
        if (x > a && x < b)
            cuts.push_back(x);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    const double share = tol / static_cast<double>(cuts.size() - 1);
    Estimate sum;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const auto r = integrate_1d(f, cuts[i], cuts[i + 1], share);
        sum.value += r.value;
        sum.error += r.error;
    }
    return sum;
}

// ---- nested Gauss over ordered regions

namespace {

void check_spec(const SimplexSpec& spec)
{
    if (spec.dim() < 1 || spec.dim() > 6)
        throw Error(ErrorKind::InvalidDomain, "simplex dimension must lie in [1, 6]");
    for (const auto& [lo, hi] : spec.limits)
        if (!lo || !hi)
            throw Error(ErrorKind::InvalidDomain, "missing limit function");
    if (!spec.integrand)
        throw Error(ErrorKind::InvalidDomain, "missing integrand");
}

double nest(const SimplexSpec& spec, const GaussRule& g, std::vector<double>& x, std::size_t level)
{
    const Point fixed(x.data(), level);
    const double lo = spec.limits[level].first(fixed);
    const double hi = spec.limits[level].second(fixed);
    if (std::isnan(lo) || std::isnan(hi))
        throw Error(ErrorKind::InvalidDomain, "limit function returned NaN");
    if (!(hi > lo))
        return 0.0;
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    double s = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        x[level] = mid + half * g.nodes[i];
        if (level + 1 == spec.dim())
            s += g.weights[i] * spec.integrand(Point(x.data(), spec.dim()));
        else
            s += g.weights[i] * nest(spec, g, x, level + 1);
    }
    return half * s;
}

} // namespace

double integrate_simplex_once(const SimplexSpec& spec, std::size_t order)
{
    check_spec(spec);
    if (order < 1)
        throw Error(ErrorKind::InvalidInput, "order must be positive");
    std::vector<double> x(spec.dim(), 0.0);
    return nest(spec, gauss_legendre(order), x, 0);
}

SimplexResult integrate_simplex(const SimplexSpec& spec, std::size_t order, std::size_t extra)
{
    if (order < 8)
        throw Error(ErrorKind::InvalidInput, "simplex order must be at least 8");
    SimplexResult r;
    r.value = integrate_simplex_once(spec, order);
    r.refined = integrate_simplex_once(spec, order + extra);
    r.difference = std::abs(r.refined - r.value);
    return r;
}

std::size_t default_simplex_order(std::size_t dim) noexcept
{
    if (dim <= 3)
        return 24;
    if (dim <= 5)
        return 16;
    return 12;
}

double default_refine_threshold(std::size_t dim) noexcept
{
    return dim <= 3 ? 1e-7 : 1e-6;
}

// ---- Buchstab clouds

namespace {

template <class Leaf>
void walk_chain(const ChainDomain& d, const GaussRule& g, std::vector<double>& x, std::size_t level,
                double w, Leaf&& leaf)
{
    const auto& b = d.bounds[level];
    const double lo = b.lo_is_previous ? x[level - 1] : b.lo;
    const double hi = b.hi;
    if (!(hi > lo))
        return;
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        x[level] = mid + half * g.nodes[i];
        const double wi = w * half * g.weights[i];
        if (level + 1 == d.bounds.size())
            leaf(x, wi);
        else
            walk_chain(d, g, x, level + 1, wi, leaf);
    }
}

void check_chain(const ChainDomain& d)
{
    if (d.bounds.empty() || d.bounds.size() > 6)
        throw Error(ErrorKind::InvalidDomain, "chain dimension must lie in [1, 6]");
    if (d.bounds[0].lo_is_previous)
        throw Error(ErrorKind::InvalidDomain, "first variable has no predecessor");
    if (d.pivot >= d.bounds.size())
        throw Error(ErrorKind::InvalidDomain, "pivot index out of range");
    for (const auto& b : d.bounds)
        if (std::isnan(b.hi) || (!b.lo_is_previous && std::isnan(b.lo)))
            throw Error(ErrorKind::InvalidDomain, "NaN chain bound");
}

} // namespace

BuchstabCloud::BuchstabCloud(const ChainDomain& domain, std::size_t order)
{
    check_chain(domain);
    const auto& g = gauss_legendre(order);
    std::vector<double> x(domain.bounds.size(), 0.0);
    walk_chain(domain, g, x, 0, 1.0, [&](const std::vector<double>& v, double w) {
        double s = 0.0, prod = 1.0;
        for (double t : v) {
            s += t;
            prod *= t;
        }
        const double m = v[domain.pivot];
        sum_.push_back(s);
        pivot_.push_back(m);
        inv_pivot_.push_back(1.0 / m);
        weight_.push_back(w / (prod * m));
        phi_low_ = std::min(phi_low_, s + m);
    });
}

double BuchstabCloud::operator()(double phi, const BuchstabTable& omega, OmegaMode mode) const
{
    double acc = 0.0;
    for (std::size_t i = 0; i < weight_.size(); ++i)
        acc += weight_[i] * omega.upper((phi - sum_[i]) * inv_pivot_[i], mode);
    return acc;
}

double BuchstabCloud::tail(double phi, const BuchstabTable& omega, OmegaMode mode) const
{
    double acc = 0.0;
    for (std::size_t i = 0; i < weight_.size(); ++i)
        acc += weight_[i] * omega.sup_from((phi - sum_[i]) * inv_pivot_[i], mode);
    return acc;
}

double BuchstabCloud::total_weight() const noexcept
{
    double s = 0.0;
    for (double w : weight_)
        s += w;
    return s;
}

double BuchstabCloud::phi_settled(double threshold) const noexcept
{
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < weight_.size(); ++i)
        hi = std::max(hi, sum_[i] + threshold * pivot_[i]);
    return hi;
}

double chain_integral(const ChainDomain& domain, std::size_t order, double phi,
                      const std::function<double(double)>& omega_of)
{
    check_chain(domain);
    const auto& g = gauss_legendre(order);
    std::vector<double> x(domain.bounds.size(), 0.0);
    double acc = 0.0;
    walk_chain(domain, g, x, 0, 1.0, [&](const std::vector<double>& v, double w) {
        double s = 0.0, prod = 1.0;
        for (double t : v) {
            s += t;
            prod *= t;
        }
        const double m = v[domain.pivot];
        acc += w / (prod * m) * omega_of((phi - s) / m);
    });
    return acc;
}

// ---- phi maximization

PhiMaximum maximize_over_phi(const PhiFamily& family, const PhiScanSpec& scan)
{
    if (!(scan.scan_step > 0.0) || !(scan.phi_min <= scan.phi_max))
        throw Error(ErrorKind::InvalidInput, "bad phi scan settings");

    PhiMaximum best;
    best.value = -std::numeric_limits<double>::infinity();
    auto probe = [&](double phi) {
        const double v = family.value(phi);
        ++best.evaluations;
        if (v > best.value) {
            best.value = v;
            best.phi = phi;
        }
        return v;
    };

    const double lo = std::max(scan.phi_min, family.active_lo);
    const double hi = std::min(scan.phi_max, family.active_hi);
    probe(scan.phi_min);
    if (lo < hi) {
        probe(lo);
        probe(hi);
        const auto k0 = static_cast<long>(std::ceil((lo - scan.phi_min) / scan.scan_step));
        for (long k = k0;; ++k) {
            const double phi = scan.phi_min + static_cast<double>(k) * scan.scan_step;
            if (phi > hi)
                break;
            probe(phi);
        }
        // golden-section polish around the best grid point
        double a = std::max(lo, best.phi - scan.scan_step);
        double b = std::min(hi, best.phi + scan.scan_step);
        const double r = 0.5 * (std::sqrt(5.0) - 1.0);
        double c = b - r * (b - a), d = a + r * (b - a);
        double fc = probe(c), fd = probe(d);
        for (int it = 0; it < 40 && b - a > 1e-10; ++it) {
            if (fc >= fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - r * (b - a);
                fc = probe(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + r * (b - a);
                fd = probe(d);
            }
        }
    }

    if (family.active_hi > scan.phi_max && family.tail) {
        best.tail = family.tail(scan.phi_max);
        if (best.tail > best.value) {
            best.value = best.tail;
            best.phi = scan.phi_max;
            best.from_tail = true;
        }
    } else {
        best.tail = family.value(std::max(scan.phi_min, std::min(family.active_hi, scan.phi_max)));
    }
    return best;
}

} // namespace sieveconst
