#include "sieveconst/chenweights.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "sieveconst/constants.hpp"
#include "sieveconst/error.hpp"
#include "sieveconst/parallel.hpp"
#include "sieveconst/quadrature.hpp"

namespace sieveconst {

std::string_view to_string(WeightProblem p) noexcept
{
    switch (p) {
    case WeightProblem::Goldbach12: return "goldbach12";
    case WeightProblem::Twin12: return "twin12";
    case WeightProblem::ShortInterval: return "short-interval";
    }
    return "goldbach12";
}

WeightParams WeightParams::goldbach_default()
{
    return {Rational(1, 12), Rational(29, 250), Rational(1, 4), Rational(141, 500), Rational(41, 125),
            WeightProblem::Goldbach12, Rational(1)};
}

WeightParams WeightParams::twin_default()
{
    return {Rational(2, 21), Rational(13, 100), Rational(2, 7), Rational(36, 125), Rational(332, 1000),
            WeightProblem::Twin12, Rational(1)};
}

WeightParams WeightParams::short_interval_default(Rational theta)
{
    const Rational span = Rational(2) * theta - Rational(1);
    return {span / Rational(12), Rational(111, 1000), span / Rational(4), Rational(271, 1000), Rational(313, 1000),
            WeightProblem::ShortInterval, theta};
}

WeightParams WeightParams::short_interval_full()
{
    WeightParams p = goldbach_default();
    p.problem = WeightProblem::ShortInterval;
    return p;
}

std::vector<std::string> validate_weights(const WeightParams& p)
{
    std::vector<std::string> bad;
    auto need = [&](bool ok, const char* what) {
        if (!ok)
            bad.emplace_back(std::string(what) + " fails");
    };
    const Rational third(1, 3);
    need(p.kappa1 < p.kappa2, "kappa1 < kappa2");
    need(p.sigma2 < p.sigma1, "sigma2 < sigma1");
    need(p.sigma1 < third, "sigma1 < 1/3");
    need(p.rho < p.sigma2, "rho < sigma2");
    need(Rational(3) * p.sigma1 + p.kappa1 > Rational(1), "3 sigma1 + kappa1 > 1");
    need(Rational(2) * p.sigma1 + p.sigma2 + p.kappa2 > Rational(1), "2 sigma1 + sigma2 + kappa2 > 1");
    switch (p.problem) {
    case WeightProblem::Goldbach12:
        need(p.kappa1 == Rational(1, 12), "kappa1 = 1/12");
        need(p.kappa2 <= Rational(1, 8), "kappa2 <= 1/8");
        need(p.rho == Rational(1, 4), "rho = 1/4");
        break;
    case WeightProblem::Twin12:
        need(p.kappa1 == Rational(2, 21), "kappa1 = 2/21");
        need(p.kappa2 <= Rational(1, 7), "kappa2 <= 1/7");
        need(p.rho == Rational(2, 7), "rho = 2/7");
        need(p.sigma2 < Rational(29, 100) && Rational(29, 100) < p.sigma1, "sigma2 < 29/100 < sigma1");
        break;
    case WeightProblem::ShortInterval: {
        need(Rational(3, 5) < p.theta && p.theta <= Rational(1), "3/5 < theta <= 1");
        const Rational span = Rational(2) * p.theta - Rational(1);
        need(p.kappa1 == span / Rational(12), "kappa1 = (2 theta - 1)/12");
        need(p.rho == span / Rational(4), "rho = (2 theta - 1)/4");
        need(p.kappa2 < p.rho, "kappa2 < rho");
        break;
    }
    }
    return bad;
}

double TermReport::max_refine_difference() const noexcept
{
    double d = 0.0;
    for (std::size_t i = 0; i < weight_term_count; ++i)
        d = std::max(d, std::abs(refined[i] - terms[i]));
    return d;
}

double combine_terms(const std::array<double, weight_term_count>& t) noexcept
{
    return 0.25 * (4.0 * t[0] - t[1] - t[2] - t[3] + t[4] + t[5] - 2.0 * t[7] - 2.0 * t[8] - t[9] - t[10] - t[13] - t[14]);
}

namespace {

using Fn = std::function<double(double)>;

struct Context {
    const SieveFnTable& sieve;
    const BuchstabTable& omega;
    OmegaMode mode;
    WeightSettings st;

    // f vanishes up to 2; keeps the table lookup inside its domain
    double f(double x) const { return x <= 2.0 ? 0.0 : sieve.f(x); }
    double F(double x) const { return sieve.F(x); }

    double integral(const Fn& g, double lo, double hi, double tol = -1.0) const
    {
        if (!(hi > lo))
            return 0.0;
        return integrate_1d(g, lo, hi, tol > 0 ? tol : st.tol).value;
    }

    double integral(const Fn& g, double lo, double hi, std::span<const double> cuts, double tol) const
    {
        if (!(hi > lo))
            return 0.0;
        return integrate_1d(g, lo, hi, cuts, tol).value;
    }
};

// (c / lvl) * integral of F(t) over [lo, hi] weighted by 1 / (1 - kappa1 t / lvl), lvl the level
double shifted_sum(const Context& cx, double lvl, double k1, double lo, double hi)
{
    return cx.integral([&](double t) { return cx.F(t) / (1.0 - k1 * t / lvl); }, lo, hi);
}

// integral over t in [k1, k2] dt/t, u in [u_lo(t), u_hi(t)] du/u of f((lvl - t - u)/k1)
double f_pair(const Context& cx, double lvl, double k1, double k2, const Fn& u_lo, const Fn& u_hi)
{
    auto inner = [&](double t) {
        const double lo = u_lo(t), hi = u_hi(t);
        if (!(hi > lo))
            return 0.0;
        // kinks of f where the argument crosses 2, 3, 4, 5
        std::vector<double> cuts;
        for (double b = 2.0; b <= 6.0; b += 1.0)
            cuts.push_back(lvl - t - b * k1);
        return cx.integral([&](double u) { return cx.f((lvl - t - u) / k1) / u; }, lo, hi, cuts, 1e-13) / t;
    };
    return cx.integral(inner, k1, k2, std::vector<double>{}, cx.st.tol);
}

struct WeightPiece {
    double lo, hi;
    Fn weight; // weight of the outermost variable
};

// sum over pieces of integral w(t1) dt1 int_{t1}^{k2} dt2/t2^2 int_{t2}^{k2} dt3/t3
//   int_{lo4}^{hi4} omega((1 - t1 - t2 - t3 - t4)/t2) dt4/t4
double nested_buchstab(const Context& cx, const std::vector<WeightPiece>& pieces, double k2,
                       const std::function<std::pair<double, double>(double)>& t4_range, std::size_t order)
{
    const auto& g = gauss_legendre(order);
    static constexpr double crossings[] = {1.0, 2.0, 3.0, 3.5, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0, 11.0, 12.0};

    auto inner = [&](double t1, double t2, double t3) {
        auto [lo, hi] = t4_range(t3);
        if (!(hi > lo))
            return 0.0;
        double pts[16];
        std::size_t np = 0;
        pts[np++] = lo;
        for (double b : crossings) {
            const double x = 1.0 - t1 - t2 - t3 - b * t2;
            if (x > lo && x < hi)
                pts[np++] = x;
        }
        pts[np++] = hi;
        std::sort(pts, pts + np);
        double s = 0.0;
        for (std::size_t k = 0; k + 1 < np; ++k) {
            const double a = pts[k], b = pts[k + 1];
            const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
            double acc = 0.0;
            for (std::size_t i = 0; i < order; ++i) {
                const double t4 = mid + half * g.nodes[i];
                acc += g.weights[i] * cx.omega.upper((1.0 - t1 - t2 - t3 - t4) / t2, cx.mode) / t4;
            }
            s += half * acc;
        }
        return s;
    };

    auto gl = [&](double a, double b, auto&& body) {
        if (!(b > a))
            return 0.0;
        const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        double acc = 0.0;
        for (std::size_t i = 0; i < order; ++i)
            acc += g.weights[i] * body(mid + half * g.nodes[i]);
        return half * acc;
    };

    double total = 0.0;
    for (const auto& pc : pieces) {
        total += gl(pc.lo, pc.hi, [&](double t1) {
            return pc.weight(t1) * gl(t1, k2, [&](double t2) {
                return gl(t2, k2, [&](double t3) { return inner(t1, t2, t3) / t3; }) / (t2 * t2);
            });
        });
    }
    return total;
}

// integral of c / (t u (1 - t - u) w(t,u)) over t in [t_lo, t_hi], u in [max(lo(t), sig), min(hi(t), (1-t)/2)]
double region(const Context& cx, double c, const std::function<double(double, double)>& w, double t_lo, double t_hi,
              double sig, const Fn& u_lo, const Fn& u_hi, std::vector<double> t_cuts = {})
{
    auto inner = [&](double t) {
        const double lo = std::max(u_lo(t), sig);
        const double hi = std::min(u_hi(t), 0.5 * (1.0 - t));
        if (!(hi > lo))
            return 0.0;
        return integrate_1d([&](double u) { return 1.0 / (t * u * (1.0 - t - u) * w(t, u)); }, lo, hi, 1e-13).value;
    };
    return c * cx.integral(inner, t_lo, t_hi, t_cuts, cx.st.tol);
}

constexpr double none_lo = -1e300;
constexpr double none_hi = 1e300;

TermReport f_terms_at_level(const WeightParams& p, double lvl, const Context& cx)
{
    const double k1 = p.kappa1.value(), k2 = p.kappa2.value(), s2 = p.sigma2.value(), s1 = p.sigma1.value();
    const double eg = exp_euler_gamma;

    TermReport r;
    r.prefix = 'F';
    r.mode = cx.mode;
    r.level = lvl;

    auto t9_log = [](double sg) {
        return [sg](double t) { return std::log(1.0 / sg - 1.0 - t / sg); };
    };
    const std::vector<WeightPiece> pieces = {
        {k1, 0.1, [](double t) { return 7.2 / (t * (1.0 - t)); }},
        {0.1, k2, [](double t) { return 8.0 / t; }},
    };
    auto range13 = [k2](double t3) { return std::pair{t3, k2}; };
    auto range14 = [k1, k2, lvl](double t3) { return std::pair{k2, lvl - 2.0 * k1 - t3}; };

    std::vector<std::function<void()>> jobs = {
        [&] { r.terms[0] = 2.0 * cx.f(lvl / k1) / (k1 * eg); },
        [&] { r.terms[1] = 2.0 / (lvl * eg) * cx.integral([&](double t) { return cx.F(t); }, lvl / k2 - 1.0, lvl / k1 - 1.0); },
        [&] { r.terms[2] = 2.0 / (lvl * eg) * shifted_sum(cx, lvl, k1, (lvl - s1) / k1, (lvl - k1) / k1); },
        [&] { r.terms[3] = 2.0 / (lvl * eg) * shifted_sum(cx, lvl, k1, (lvl - s2) / k1, (lvl - k1) / k1); },
        [&] {
            r.terms[4] = 2.0 / (k1 * eg) * f_pair(cx, lvl, k1, k2, [](double t) { return t; }, [k2](double) { return k2; });
        },
        [&] {
            r.terms[5] = 2.0 / (k1 * eg)
                * f_pair(cx, lvl, k1, k2, [k2](double) { return k2; }, [=](double t) { return lvl - 2.0 * k1 - t; });
        },
        [&] { r.terms[7] = 8.0 * log_integral(1.0 / s1 - 1.0); },
        [&] { r.terms[8] = 8.0 * log_integral(1.0 / s2 - 1.0); },
        [&] {
            const auto g = t9_log(s1);
            r.terms[9] = 7.2 * cx.integral([&](double t) { return g(t) / (t * (1.0 - t) * (1.0 - t)); }, k1, std::min(0.1, s1))
                + 8.0 * cx.integral([&](double t) { return g(t) / (t * (1.0 - t)); }, std::max(0.1, k1), s1);
        },
        [&] {
            const auto g = t9_log(s2);
            r.terms[10] = 8.0 * cx.integral([&](double t) { return g(t) / (t * (1.0 - t)); }, k2, s2);
        },
        [&] {
            r.terms[13] = nested_buchstab(cx, pieces, k2, range13, cx.st.nested_order);
            r.refined[13] = nested_buchstab(cx, pieces, k2, range13, cx.st.nested_order + cx.st.nested_refine);
        },
        [&] {
            r.terms[14] = nested_buchstab(cx, pieces, k2, range14, cx.st.nested_order);
            r.refined[14] = nested_buchstab(cx, pieces, k2, range14, cx.st.nested_order + cx.st.nested_refine);
        },
    };
    parallel_for(jobs.size(), [&](std::size_t i) { jobs[i](); });
    for (std::size_t i = 0; i < weight_term_count; ++i)
        if (i != 13 && i != 14)
            r.refined[i] = r.terms[i];
    r.combined = combine_terms(r.terms);
    return r;
}

void require(const WeightParams& p, WeightProblem expected)
{
    if (p.problem != expected)
        throw Error(ErrorKind::InvalidParams, "weight parameters are for " + std::string(to_string(p.problem)));
    if (auto bad = validate_weights(p); !bad.empty())
        throw Error(ErrorKind::InvalidParams, "weight parameters rejected: " + bad.front());
}

void require_sieve_range(const SieveFnTable& sieve, double needed)
{
    if (sieve.u_max() < needed)
        throw Error(ErrorKind::DomainTooSmall, "sieve table must reach " + std::to_string(needed));
}

} // namespace

TermReport compute_F_terms(const WeightParams& p, const SieveFnTable& sieve, const BuchstabTable& omega, OmegaMode mode,
                           const WeightSettings& settings)
{
    require(p, WeightProblem::Goldbach12);
    require_sieve_range(sieve, 0.5 / p.kappa1.value());
    const Context cx{sieve, omega, mode, settings};
    return f_terms_at_level(p, 0.5, cx);
}

TermReport short_interval_terms(const WeightParams& p, const SieveFnTable& sieve, const BuchstabTable& omega,
                                OmegaMode mode, const WeightSettings& settings)
{
    require(p, WeightProblem::ShortInterval);
    const double lvl = (2.0 * p.theta.value() - 1.0) / 2.0;
    require_sieve_range(sieve, lvl / p.kappa1.value());
    const Context cx{sieve, omega, mode, settings};
    auto r = f_terms_at_level(p, lvl, cx);
    r.reconstruction = true;
    return r;
}

double short_interval_bound(const WeightParams& p, const SieveFnTable& sieve, const BuchstabTable& omega,
                            OmegaMode mode, const WeightSettings& settings)
{
    return short_interval_terms(p, sieve, omega, mode, settings).combined;
}

TermReport compute_G_terms(const WeightParams& p, const SieveFnTable& sieve, const BuchstabTable& omega, OmegaMode mode,
                           const WeightSettings& settings)
{
    require(p, WeightProblem::Twin12);
    const double k1 = p.kappa1.value(), k2 = p.kappa2.value(), s2 = p.sigma2.value(), s1 = p.sigma1.value();
    const double lvl = 4.0 / 7.0;
    const double eg = exp_euler_gamma;
    require_sieve_range(sieve, lvl / k1);
    const Context cx{sieve, omega, mode, settings};

    TermReport r;
    r.prefix = 'G';
    r.mode = mode;
    r.level = lvl;

    // F(t) / (c/k1 - t), the level c written in units of kappa1
    auto over = [&](double c) { return [&cx, c, k1](double t) { return cx.F(t) / (c / k1 - t); }; };

    using W = std::function<double(double, double)>;
    const W w_plus_2t = [](double t, double) { return 1.0 + 2.0 * t; };
    const W w_5 = [](double t, double) { return 5.0 - 2.0 * t; };
    const W w_1u = [](double, double u) { return 1.0 - u; };
    const W w_2u = [](double, double u) { return 2.0 + u; };
    auto cst = [](double v) { return [v](double) { return v; }; };
    const auto lo_none = cst(none_lo);
    const auto hi_none = cst(none_hi);
    auto half_minus = [](double t) { return 0.5 - t; };
    auto eight = [](double t) { return (2.0 * t + 3.0) / 8.0; };

    const std::vector<WeightPiece> pieces = {
        {k1, 0.1, [](double t) { return 4.0 / (t * (1.0 + 2.0 * t)); }},
        {0.1, k2, [](double t) { return 16.0 / (t * (5.0 - 2.0 * t)); }},
    };
    auto range13 = [k2](double t3) { return std::pair{t3, k2}; };
    auto range14 = [k1, k2, lvl](double t3) { return std::pair{k2, lvl - 2.0 * k1 - t3}; };

    std::vector<std::function<void()>> jobs = {
        [&] { r.terms[0] = cx.f(lvl / k1) / (k1 * eg); },
        [&] { r.terms[1] = 7.0 / (4.0 * eg) * cx.integral([&](double t) { return cx.F(t); }, lvl / k2 - 1.0, lvl / k1 - 1.0); },
        [&] {
            r.terms[2] = (cx.integral(over(lvl), 2.0 / (7.0 * k1), lvl / k1 - 1.0)
                          + cx.integral(over(2.0), 13.0 / (50.0 * k1), 2.0 / (7.0 * k1))
                          + cx.integral(over(11.0 / 20.0), (11.0 / 20.0 - s1) / k1, 13.0 / (50.0 * k1)))
                / (k1 * eg);
        },
        [&] {
            r.terms[3] = (cx.integral(over(lvl), 2.0 / (7.0 * k1), (lvl - k1) / k1)
                          + cx.integral(over(2.0), (2.0 - 6.0 * s2) / k1, 2.0 / (7.0 * k1)))
                / (k1 * eg);
        },
        [&] { r.terms[4] = f_pair(cx, lvl, k1, k2, [](double t) { return t; }, cst(k2)) / (k1 * eg); },
        [&] {
            r.terms[5] = f_pair(cx, lvl, k1, k2, cst(k2), [=](double t) { return lvl - 2.0 * k1 - t; }) / (k1 * eg);
        },
        [&] { r.terms[7] = region(cx, 8.0, w_2u, s1, 1.0 / 3.0, s1, [](double t) { return t; }, hi_none); },
        [&] { r.terms[8] = region(cx, 8.0, w_2u, s2, 1.0 / 3.0, s2, [](double t) { return t; }, hi_none); },
        [&] {
            const std::vector<double> cuts = {0.1, 0.5 - s1, 1.0 / 6.0, 0.5 - (1.0 - s1) / 2.0};
            r.terms[9] = region(cx, 4.0, w_plus_2t, k1, 0.1, s1, lo_none, hi_none)
                + region(cx, 16.0, w_5, 0.1, s1, s1, lo_none, half_minus, cuts)
                + region(cx, 16.0, w_5, 0.1, s1, s1, eight, hi_none, cuts)
                + region(cx, 2.0, w_1u, k1, s1, s1, cst(0.4), eight, cuts)
                + region(cx, 8.0, w_2u, k1, s1, s1,
                         [=](double t) { return std::max((1.0 - s1) / 2.0, 0.5 - t); }, cst(0.4), cuts)
                + region(cx, 8.0, w_2u, k1, s1, s1, half_minus, cst((1.0 - s1) / 2.0), cuts);
        },
        [&] {
            const double top = (2.0 * k2 + 3.0) / 8.0;
            const std::vector<double> cuts = {0.5 - s2, 1.0 / 6.0, k2 + 0.0, 0.5 - (1.0 - s2) / 2.0};
            r.terms[10] = region(cx, 16.0, w_5, k2, s2, s2, lo_none, half_minus, cuts)
                + region(cx, 16.0, w_5, k2, s2, s2, eight, hi_none, cuts)
                + region(cx, 2.0, w_1u, k2, s2, s2, cst(0.4), cst(top), cuts)
                + region(cx, 2.0, w_1u, k2, s2, s2, cst(top), eight, cuts)
                + region(cx, 8.0, w_2u, k2, s2, s2, [=](double t) { return std::max(0.5 - k2, 0.5 - t); }, cst(0.4), cuts)
                + region(cx, 8.0, w_2u, k2, s2, s2,
                         [=](double t) { return std::max((1.0 - s2) / 2.0, 0.5 - t); }, cst(0.5 - k2), cuts)
                + region(cx, 8.0, w_2u, k2, s2, s2, half_minus, cst((1.0 - s2) / 2.0), cuts);
        },
        [&] {
            r.terms[13] = nested_buchstab(cx, pieces, k2, range13, cx.st.nested_order);
            r.refined[13] = nested_buchstab(cx, pieces, k2, range13, cx.st.nested_order + cx.st.nested_refine);
        },
        [&] {
            r.terms[14] = nested_buchstab(cx, pieces, k2, range14, cx.st.nested_order);
            r.refined[14] = nested_buchstab(cx, pieces, k2, range14, cx.st.nested_order + cx.st.nested_refine);
        },
    };
    parallel_for(jobs.size(), [&](std::size_t i) { jobs[i](); });
    for (std::size_t i = 0; i < weight_term_count; ++i)
        if (i != 13 && i != 14)
            r.refined[i] = r.terms[i];
    r.combined = combine_terms(r.terms);
    return r;
}

} // namespace sieveconst
