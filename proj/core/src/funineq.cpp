#include "sieveconst/funineq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

#include "sieveconst/error.hpp"
#include "sieveconst/parallel.hpp"

namespace sieveconst {

std::string_view to_string(Level level) noexcept
{
    return level == Level::Half ? "half" : "four-sevenths";
}

std::string_view to_string(RowKind kind) noexcept
{
    return kind == RowKind::Psi1 ? "psi1" : "psi2";
}

Level parse_level(std::string_view text)
{
    if (text == "half" || text == "1/2")
        return Level::Half;
    if (text == "four-sevenths" || text == "4/7")
        return Level::FourSevenths;
    throw Error(ErrorKind::InvalidInput, "unknown level '" + std::string(text) + "'");
}

RowKind parse_row_kind(std::string_view text)
{
    if (text == "psi1")
        return RowKind::Psi1;
    if (text == "psi2")
        return RowKind::Psi2;
    throw Error(ErrorKind::InvalidInput, "unknown row kind '" + std::string(text) + "'");
}

RowParams RowParams::psi1(double s, double s_prime, Level level)
{
    RowParams p;
    p.s = s;
    p.s_prime = s_prime;
    p.kind = RowKind::Psi1;
    p.level = level;
    return p;
}

RowParams RowParams::psi2(double s, double s_prime, double kappa1, double kappa2, double kappa3, Level level)
{
    RowParams p = psi1(s, s_prime, level);
    p.kind = RowKind::Psi2;
    p.kappa1 = kappa1;
    p.kappa2 = kappa2;
    p.kappa3 = kappa3;
    return p;
}

double buchstab_factor(RowKind kind, Level level) noexcept
{
    if (kind == RowKind::Psi1)
        return level == Level::Half ? 1.0 : 7.0 / 8.0;
    return level == Level::Half ? 2.0 / 5.0 : 7.0 / 20.0;
}

Alphas compute_alphas(const RowParams& p)
{
    const double sp = p.s_prime, k1 = p.kappa1, k2 = p.kappa2, k3 = p.kappa3;
    Alphas a;
    a.values = {
        k1 - 2.0,
        sp - 2.0,
        sp - sp / p.s - 1.0,
        sp - sp / k2 - 1.0,
        sp - sp / k3 - 1.0,
        sp - 2.0 * sp / k2,
        sp - sp / k1 - sp / k3,
        sp - sp / k1 - sp / k2,
        k1 - k1 / k2 - 1.0,
    };
    return a;
}

std::vector<std::string> validate_row(const RowParams& p)
{
    constexpr double slack = 1e-12;
    std::vector<std::string> bad;
    auto need = [&](bool ok, const char* what) {
        if (!ok)
            bad.emplace_back(std::string(what) + " fails");
    };
    need(std::isfinite(p.s) && std::isfinite(p.s_prime), "finite parameters");
    need(p.s >= 2.0 - slack, "2 <= s");
    need(p.s <= 3.0 + slack, "s <= 3");
    need(p.s_prime >= 3.0 - slack, "3 <= s'");
    need(p.s_prime <= 5.0 + slack, "s' <= 5");
    need(p.s <= p.s_prime + slack, "s <= s'");
    need(p.s_prime - p.s_prime / p.s >= 2.0 - slack, "s' - s'/s >= 2");
    if (p.kind == RowKind::Psi1 || !bad.empty())
        return bad;

    need(p.s <= p.kappa3 + slack, "s <= kappa3");
    need(p.kappa3 < p.kappa2, "kappa3 < kappa2");
    need(p.kappa2 < p.kappa1, "kappa2 < kappa1");
    need(p.kappa1 <= p.s_prime + slack, "kappa1 <= s'");
    if (!bad.empty())
        return bad;
    const auto a = compute_alphas(p);
    for (std::size_t i = 1; i <= 9; ++i)
        if (!(a[i] >= 1.0 - slack && a[i] <= 3.0 + slack))
            bad.push_back("1 <= alpha" + std::to_string(i) + " <= 3 fails");
    need(a[1] < a[4], "alpha1 < alpha4");
    need(a[5] < a[8], "alpha5 < alpha8");
    return bad;
}

namespace {

void check_t(double t)
{
    if (!(t >= 1.0 - 1e-12 && t <= 3.0 + 1e-12))
        throw Error(ErrorKind::OutOfDomain, "kernel argument must lie in [1, 3]");
}

inline bool within(double t, double lo, double hi) noexcept
{
    return lo <= hi && t >= lo && t <= hi;
}

} // namespace

double xi1(double t, double s, double s_prime)
{
    check_t(t);
    const double sp = s_prime;
    const double a2 = sp - 2.0, a3 = sp - sp / s - 1.0;
    const double q = (s - 1.0) * (sp - 1.0);
    double v = sigma0(t) / (2.0 * t) * std::log(16.0 / q);
    if (within(t, a2, 3.0))
        v += std::log((t + 1.0) * (t + 1.0) / q) / (2.0 * t);
    if (within(t, a3, a2))
        v += std::log((t + 1.0) / ((s - 1.0) * (sp - 1.0 - t))) / (2.0 * t);
    return v;
}

double xi2(double t, const RowParams& p)
{
    check_t(t);
    const double s = p.s, sp = p.s_prime, k1 = p.kappa1, k2 = p.kappa2, k3 = p.kappa3;
    const auto a = compute_alphas(p);
    const double prod = (s - 1.0) * (sp - 1.0) * (k1 - 1.0) * (k2 - 1.0) * (k3 - 1.0);
    const double t1 = t + 1.0;
    const double w = 1.0 / (5.0 * t);
    const double wv = 1.0 / (5.0 * t * (1.0 - t / sp));

    double v = sigma0(t) * w * std::log(1024.0 / prod);
    if (within(t, a[2], 3.0))
        v += w * std::log(std::pow(t1, 5) / prod);
    if (within(t, a[9], a[1]))
        v += w * std::log(t1 / ((k2 - 1.0) * (k1 - 1.0 - t)));
    if (within(t, a[5], a[2]))
        v += w * std::log(t1 / ((k3 - 1.0) * (sp - 1.0 - t)));
    if (within(t, a[3], a[2]))
        v += w * std::log(t1 / ((s - 1.0) * (sp - 1.0 - t)));
    if (within(t, a[1], a[2]))
        v += w * std::log(t1 * t1 / ((k1 - 1.0) * (k2 - 1.0)));
    if (within(t, a[7], a[5]))
        v += wv * std::log(sp * sp / ((k1 * sp - sp - k1 * t) * (k3 * sp - sp - k3 * t)));
    if (within(t, a[5], a[8]))
        v += wv * std::log(sp * (sp - 1.0 - t) / (k1 * sp - sp - k1 * t));
    if (within(t, a[6], a[8]))
        v += wv * std::log(sp / (k2 * sp - sp - k2 * t));
    if (within(t, a[8], a[2]))
        v += wv * std::log(sp - 1.0 - t);
    return v;
}

double xi(double t, const RowParams& p)
{
    return p.kind == RowKind::Psi1 ? xi1(t, p.s, p.s_prime) : xi2(t, p);
}

std::vector<double> xi_breakpoints(const RowParams& p)
{
    std::vector<double> pts;
    if (p.kind == RowKind::Psi1) {
        pts = {p.s_prime - 2.0, p.s_prime - p.s_prime / p.s - 1.0};
    } else {
        const auto a = compute_alphas(p);
        pts.assign(a.values.begin(), a.values.end());
    }
    std::erase_if(pts, [](double x) { return !(x > 1.0 && x < 3.0); });
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

// ---- Buchstab integrals

std::size_t BuchstabSettings::order(std::size_t dim) const noexcept
{
    if (dim <= 3)
        return order3;
    if (dim <= 5)
        return order45;
    return order6;
}

ChainDomain i1_domain(double s, double s_prime)
{
    const double lo = 1.0 / s_prime, hi = 1.0 / s;
    return {{ChainBound::fixed(lo, hi), ChainBound::after_previous(hi), ChainBound::after_previous(hi)}, 1};
}

ChainDomain i2_domain(int i, const RowParams& p)
{
    const double a = 1.0 / p.s_prime, b = 1.0 / p.kappa1, c = 1.0 / p.kappa2, d = 1.0 / p.kappa3, e = 1.0 / p.s;
    auto F = [](double lo, double hi) { return ChainBound::fixed(lo, hi); };
    auto P = [](double hi) { return ChainBound::after_previous(hi); };
    switch (i) {
    case 9: return {{F(b, d), P(d), P(d)}, 1};
    case 10: return {{F(b, c), P(c), F(c, e)}, 1};
    case 11: return {{F(b, c), F(c, d), P(d)}, 1};
    case 12: return {{F(a, b), P(b), F(d, e)}, 1};
    case 13: return {{F(a, b), F(b, c), F(c, e)}, 1};
    case 14: return {{F(a, b), F(c, e), P(e)}, 1};
    case 15: return {{F(b, c), F(c, d), F(d, e)}, 1};
    case 16: return {{F(c, d), P(d), P(d), P(d)}, 2};
    case 17: return {{F(c, d), P(d), P(d), F(d, e)}, 2};
    case 18: return {{F(c, d), P(d), F(d, e), P(e)}, 2};
    case 19: return {{F(b, c), F(d, e), P(e), P(e)}, 2};
    case 20: return {{F(c, d), F(d, e), P(e), P(e), P(e)}, 3};
    case 21: return {{F(d, e), P(e), P(e), P(e), P(e), P(e)}, 4};
    default: break;
    }
    throw Error(ErrorKind::UnknownTerm, "Buchstab term index must lie in 9..21, got " + std::to_string(i));
}

namespace {

double settle_threshold(OmegaMode mode) noexcept
{
    switch (mode) {
    case OmegaMode::Bound2: return 2.0;
    case OmegaMode::Bound3_5:
    case OmegaMode::BoundBoth: return 3.5;
    case OmegaMode::Exact: break;
    }
    return std::numeric_limits<double>::infinity();
}

} // namespace

BuchstabTerm buchstab_term(int index, const ChainDomain& domain, const BuchstabTable& omega,
                           const BuchstabSettings& settings)
{
    BuchstabTerm term;
    term.index = index;
    term.dim = domain.bounds.size();
    const std::size_t order = settings.order(term.dim);
    const BuchstabCloud cloud(domain, order);
    if (cloud.empty())
        return term;

    const OmegaMode mode = settings.mode;
    PhiFamily family;
    family.value = [&](double phi) { return cloud(phi, omega, mode); };
    family.active_lo = cloud.phi_low();
    const double thr = settle_threshold(mode);
    family.active_hi = std::isfinite(thr) ? cloud.phi_settled(thr) : std::numeric_limits<double>::infinity();
    family.tail = [&](double phi) { return cloud.tail(phi, omega, mode); };

    PhiScanSpec scan = settings.scan;
    scan.tail_mode = mode;
    if (term.dim >= 4)
        scan.scan_step = std::max(scan.scan_step, settings.high_dim_step);
    const auto best = maximize_over_phi(family, scan);
    term.value = std::max(0.0, best.value);
    term.phi = best.phi;
    term.from_tail = best.from_tail;

    term.refined = term.value;
    if (settings.refine) {
        const std::size_t fine = order + settings.refine_extra;
        if (best.from_tail)
            term.refined = chain_integral(domain, fine, best.phi, [&](double u) { return omega.sup_from(u, mode); });
        else
            term.refined = chain_integral(domain, fine, best.phi, [&](double u) { return omega.upper(u, mode); });
        term.difference = std::abs(term.refined - term.value);
    }
    return term;
}

BuchstabTerm I1(double s, double s_prime, const BuchstabTable& omega, const BuchstabSettings& settings)
{
    if (!(s <= s_prime))
        throw Error(ErrorKind::InvalidParams, "I1 needs s <= s'");
    return buchstab_term(1, i1_domain(s, s_prime), omega, settings);
}

BuchstabTerm I2(int i, const RowParams& p, const BuchstabTable& omega, const BuchstabSettings& settings)
{
    return buchstab_term(i, i2_domain(i, p), omega, settings);
}

// ---- main terms

namespace {

constexpr double main_tol = 1e-13;

// integral over [1 - 1/lo, 1 - 1/hi] of log(k t - 1)/(t(1 - t))
double log_ratio_integral(double k, double lo, double hi)
{
    return integrate_1d([k](double t) { return std::log(k * t - 1.0) / (t * (1.0 - t)); },
                        1.0 - 1.0 / lo, 1.0 - 1.0 / hi, main_tol)
        .value;
}

void require_valid(const RowParams& p)
{
    const auto bad = validate_row(p);
    if (bad.empty())
        return;
    std::ostringstream os;
    os << "row (s=" << p.s << ", s'=" << p.s_prime << ") rejected:";
    for (const auto& b : bad)
        os << ' ' << b << ';';
    throw Error(ErrorKind::InvalidParams, os.str());
}

} // namespace

double psi1_main(double s, double s_prime)
{
    return -log_integral(s_prime - 1.0) + 0.5 * log_ratio_integral(s_prime, s, s_prime);
}

double psi2_main(const RowParams& p)
{
    return -0.4 * log_integral(p.s_prime - 1.0) - 0.4 * log_integral(p.kappa1 - 1.0)
        - 0.2 * log_integral(p.kappa2 - 1.0) + 0.2 * log_ratio_integral(p.s_prime, p.s, p.s_prime)
        + 0.2 * log_ratio_integral(p.kappa1, p.kappa3, p.kappa1);
}

PsiResult psi1(double s, double s_prime, Level level, const BuchstabTable& omega,
               const BuchstabSettings& settings)
{
    require_valid(RowParams::psi1(s, s_prime, level));
    PsiResult r;
    r.mode = settings.mode;
    r.factor = buchstab_factor(RowKind::Psi1, level);
    r.main_term = psi1_main(s, s_prime);
    r.terms.push_back(I1(s, s_prime, omega, settings));
    r.buchstab_sum = r.terms[0].value;
    r.max_refine_difference = r.terms[0].difference;
    r.value = r.main_term - r.factor * r.buchstab_sum;
    return r;
}

PsiResult psi2(const RowParams& p, const BuchstabTable& omega, const BuchstabSettings& settings)
{
    if (p.kind != RowKind::Psi2)
        throw Error(ErrorKind::InvalidParams, "psi2 needs a psi2 row");
    require_valid(p);
    PsiResult r;
    r.mode = settings.mode;
    r.factor = buchstab_factor(RowKind::Psi2, p.level);
    r.main_term = psi2_main(p);
    r.terms = parallel_map<BuchstabTerm>(13, [&](std::size_t k) {
        return I2(static_cast<int>(k) + 9, p, omega, settings);
    });
    for (const auto& t : r.terms) {
        r.buchstab_sum += t.value;
        r.max_refine_difference = std::max(r.max_refine_difference, t.difference);
    }
    r.value = r.main_term - r.factor * r.buchstab_sum;
    return r;
}

PsiResult psi(const RowParams& p, const BuchstabTable& omega, const BuchstabSettings& settings)
{
    return p.kind == RowKind::Psi1 ? psi1(p.s, p.s_prime, p.level, omega, settings) : psi2(p, omega, settings);
}

// ---- row optimization

namespace {

double snap(double x, double step)
{
    return std::round(x / step) * step;
}

class Objective {
public:
    Objective(const BuchstabTable& omega, const BuchstabSettings& settings) : omega_(omega), settings_(settings) {}

    double operator()(const RowParams& p)
    {
        const auto key = std::make_tuple(std::llround(p.s_prime * 1e6), std::llround(p.kappa1 * 1e6),
                                         std::llround(p.kappa2 * 1e6), std::llround(p.kappa3 * 1e6));
        if (auto it = cache_.find(key); it != cache_.end())
            return it->second;
        double v = -std::numeric_limits<double>::infinity();
        if (validate_row(p).empty()) {
            v = psi(p, omega_, settings_).value;
            ++evaluations;
        }
        cache_.emplace(key, v);
        return v;
    }

    std::size_t evaluations = 0;

private:
    const BuchstabTable& omega_;
    const BuchstabSettings& settings_;
    std::map<std::tuple<long long, long long, long long, long long>, double> cache_;
};

// compass search over the coordinates selected by fields; returns the best point found
RowParams compass(RowParams x, double& fx, std::span<double RowParams::* const> fields, double step,
                  double final_step, std::size_t max_iterations, Objective& obj)
{
    std::size_t iterations = 0;
    while (step >= final_step * (1.0 - 1e-9) && iterations < max_iterations) {
        ++iterations;
        RowParams best = x;
        double fbest = fx;
        for (auto field : fields) {
            for (double dir : {1.0, -1.0}) {
                RowParams y = x;
                y.*field = snap(y.*field + dir * step, final_step);
                const double fy = obj(y);
                if (fy > fbest + 1e-13) {
                    best = y;
                    fbest = fy;
                }
            }
        }
        if (fbest > fx) {
            x = best;
            fx = fbest;
        } else {
            step *= 0.5;
        }
    }
    return x;
}

} // namespace

OptimizeResult optimize_row(double s, RowKind kind, Level level, const BuchstabTable& omega,
                            const BuchstabSettings& settings, const OptimizeSettings& opt, const RowParams* seed)
{
    if (!(s >= 2.0 && s <= 3.0))
        throw Error(ErrorKind::InvalidParams, "s must lie in [2, 3]");
    Objective obj(omega, opt.search);
    OptimizeResult out;

    // smallest s' allowed by s' >= 3, s' >= s and s' - s'/s >= 2
    const double sp_min = std::max({3.0, s, 2.0 * s / (s - 1.0)});
    if (sp_min > opt.s_prime_max + 1e-12)
        throw Error(ErrorKind::NoFeasiblePoint, "no admissible s' for s = " + std::to_string(s));

    RowParams x;
    double fx = -std::numeric_limits<double>::infinity();
    if (kind == RowKind::Psi1) {
        const double first = std::ceil(sp_min / opt.grid_step - 1e-9) * opt.grid_step;
        for (double sp = first; sp <= opt.s_prime_max + 1e-9; sp += opt.grid_step) {
            RowParams y = RowParams::psi1(s, snap(sp, opt.final_step), level);
            const double fy = obj(y);
            if (fy > fx) {
                x = y;
                fx = fy;
            }
        }
        if (!std::isfinite(fx))
            throw Error(ErrorKind::NoFeasiblePoint, "no admissible psi1 row for s = " + std::to_string(s));
        static constexpr double RowParams::*fields[] = {&RowParams::s_prime};
        x = compass(x, fx, fields, opt.grid_step, opt.final_step, opt.max_iterations, obj);
    } else {
        if (seed) {
            x = *seed;
            x.s = s;
            x.kind = RowKind::Psi2;
            x.level = level;
        } else {
            x = RowParams::psi2(s, std::max(4.5, sp_min), 3.55, 2.88, std::max(s, 2.44), level);
        }
        fx = obj(x);
        if (!std::isfinite(fx)) {
            // walk kappa3 up from s until the row becomes admissible
            for (double k3 = s; k3 < x.kappa2 && !std::isfinite(fx); k3 += opt.grid_step) {
                x.kappa3 = snap(k3, opt.final_step);
                fx = obj(x);
            }
        }
        if (!std::isfinite(fx))
            throw Error(ErrorKind::NoFeasiblePoint, "no admissible psi2 starting row for s = " + std::to_string(s));
        static constexpr double RowParams::*fields[] = {&RowParams::s_prime, &RowParams::kappa1, &RowParams::kappa2,
                                                        &RowParams::kappa3};
        x = compass(x, fx, fields, opt.psi2_start_step, opt.final_step, opt.max_iterations, obj);
    }

    out.params = x;
    out.evaluations = obj.evaluations;
    out.psi = psi(x, omega, settings);
    return out;
}

} // namespace sieveconst
