#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "sieveconst/funineq.hpp"
#include "sieveconst/published.hpp"
#include "test_support.hpp"

using namespace sieveconst;

namespace {

const RowParams wide_row = RowParams::psi2(2.2, 4.54, 3.53, 2.90, 2.44);

bool inside(double t, double lo, double hi)
{
    return lo <= t && t <= hi;
}

// kernel of a psi1 row written as (weight, interval, log argument) pieces
double xi1_oracle(double t, double s, double sp)
{
    const double q = (s - 1.0) * (sp - 1.0);
    double v = oracle::sigma0(t) * std::log(16.0 / q);
    if (inside(t, sp - 2.0, 3.0))
        v += std::log((t + 1.0) * (t + 1.0) / q);
    if (inside(t, sp - sp / s - 1.0, sp - 2.0))
        v += std::log((t + 1.0) / ((s - 1.0) * (sp - 1.0 - t)));
    return v / (2.0 * t);
}

double xi2_oracle(double t, const RowParams& p)
{
    const double s = p.s, sp = p.s_prime, k1 = p.kappa1, k2 = p.kappa2, k3 = p.kappa3;
    const double al1 = k1 - 2.0, al2 = sp - 2.0, al3 = sp - sp / s - 1.0, al5 = sp - sp / k3 - 1.0,
                 al6 = sp - 2.0 * sp / k2, al7 = sp - sp / k1 - sp / k3, al8 = sp - sp / k1 - sp / k2,
                 al9 = k1 - k1 / k2 - 1.0;
    const double prod = (s - 1.0) * (sp - 1.0) * (k1 - 1.0) * (k2 - 1.0) * (k3 - 1.0);
    struct Piece {
        double lo, hi;
        bool shrunk; // divided by 1 - t/s'
        double arg;
    };
    const double lin1 = k1 * sp - sp - k1 * t, lin2 = k2 * sp - sp - k2 * t, lin3 = k3 * sp - sp - k3 * t;
    const std::array<Piece, 9> pieces{{
        {al2, 3.0, false, std::pow(t + 1.0, 5) / prod},
        {al9, al1, false, (t + 1.0) / ((k2 - 1.0) * (k1 - 1.0 - t))},
        {al5, al2, false, (t + 1.0) / ((k3 - 1.0) * (sp - 1.0 - t))},
        {al3, al2, false, (t + 1.0) / ((s - 1.0) * (sp - 1.0 - t))},
        {al1, al2, false, (t + 1.0) * (t + 1.0) / ((k1 - 1.0) * (k2 - 1.0))},
        {al7, al5, true, sp * sp / (lin1 * lin3)},
        {al5, al8, true, sp * (sp - 1.0 - t) / lin1},
        {al6, al8, true, sp / lin2},
        {al8, al2, true, sp - 1.0 - t},
    }};
    double v = oracle::sigma0(t) * std::log(1024.0 / prod);
    for (const auto& pc : pieces)
        if (inside(t, pc.lo, pc.hi))
            v += std::log(pc.arg) / (pc.shrunk ? 1.0 - t / sp : 1.0);
    return v / (5.0 * t);
}

double psi1_main_oracle(double s, double sp)
{
    const double part = oracle::simpson([sp](double t) { return std::log(sp * t - 1.0) / (t * (1.0 - t)); },
                                        1.0 - 1.0 / s, 1.0 - 1.0 / sp, 20000);
    return -oracle::log_integral(sp - 1.0) + 0.5 * part;
}

BuchstabSettings with_mode(OmegaMode m)
{
    BuchstabSettings b;
    b.mode = m;
    return b;
}

} // namespace

TEST_SUITE("funineq")
{
    TEST_CASE("switch points of a wide row")
    {
        const auto a = compute_alphas(wide_row);
        CHECK(a[1] == doctest::Approx(1.53).epsilon(1e-14));
        CHECK(a[2] == doctest::Approx(2.54).epsilon(1e-14));
        CHECK(std::abs(a[9] - 1.31276) < 5e-6);
        CHECK(a[3] == doctest::Approx(4.54 - 4.54 / 2.2 - 1.0));
        CHECK_THROWS(a[0]);
        CHECK_THROWS(a[10]);
        for (double b : xi_breakpoints(wide_row)) {
            CHECK(b > 1.0);
            CHECK(b < 3.0);
        }
    }

    TEST_CASE("row validation names the failing constraint")
    {
        CHECK(validate_row(wide_row).empty());
        CHECK(validate_row(RowParams::psi1(2.6, 3.58)).empty());
        auto has = [](const std::vector<std::string>& v, const std::string& m) {
            return std::find(v.begin(), v.end(), m) != v.end();
        };
        CHECK(has(validate_row(RowParams::psi1(1.9, 3.5)), "2 <= s fails"));
        CHECK(has(validate_row(RowParams::psi1(2.5, 5.5)), "s' <= 5 fails"));
        CHECK(has(validate_row(RowParams::psi1(2.9, 2.95)), "3 <= s' fails"));
        CHECK(has(validate_row(RowParams::psi1(2.0, 3.5)), "s' - s'/s >= 2 fails"));
        CHECK(has(validate_row(RowParams::psi2(2.2, 4.54, 2.90, 3.53, 2.44)), "kappa2 < kappa1 fails"));
        CHECK(has(validate_row(RowParams::psi2(2.5, 4.54, 3.53, 2.90, 2.44)), "s <= kappa3 fails"));
        CHECK_ERROR_KIND(psi1(1.9, 3.5, Level::Half, default_buchstab_table(), {}), ErrorKind::InvalidParams);
    }

    TEST_CASE("kernels agree with an independent evaluation")
    {
        const std::array<RowParams, 3> rows{RowParams::psi1(2.6, 3.58), RowParams::psi1(2.5, 3.72),
                                            RowParams::psi1(3.0, 3.0)};
        for (const auto& r : rows)
            for (double t = 1.0; t <= 3.0; t += 1.0 / 64)
                CHECK(std::abs(xi1(t, r.s, r.s_prime) - xi1_oracle(t, r.s, r.s_prime)) < 1e-12);
        const std::array<RowParams, 3> wide{wide_row, RowParams::psi2(2.5, 4.12, 3.56, 2.91, 2.50),
                                            RowParams::psi2(2.1, 4.93, 3.62, 2.86, 2.34)};
        for (const auto& r : wide)
            for (double t = 1.0; t <= 3.0; t += 1.0 / 64)
                CHECK(std::abs(xi2(t, r) - xi2_oracle(t, r)) < 1e-12);
        CHECK_ERROR_KIND(xi1(0.5, 2.6, 3.58), ErrorKind::OutOfDomain);
        CHECK_ERROR_KIND(xi2(3.5, wide_row), ErrorKind::OutOfDomain);
    }

    TEST_CASE("kernels are nonnegative on the default rows")
    {
        for (auto r : {wide_row, RowParams::psi2(2.4, 4.52, 3.64, 2.87, 2.40), RowParams::psi1(2.6, 3.58),
                       RowParams::psi1(2.9, 3.19), RowParams::psi1(3.0, 3.0)})
            for (double t = 1.0; t <= 3.0; t += 1e-3)
                CHECK(xi(t, r) >= -1e-15);
    }

    TEST_CASE("main term against Simpson")
    {
        for (auto [s, sp] : {std::pair{2.6, 3.58}, {2.5, 3.72}, {2.9, 3.19}})
            CHECK(std::abs(psi1_main(s, sp) - psi1_main_oracle(s, sp)) < 1e-10);
        CHECK(std::abs(psi1_main(3.0, 3.0)) < 1e-14);
    }

    TEST_CASE("six-fold chain integral against Monte Carlo")
    {
        const auto dom = i2_domain(21, wide_row);
        REQUIRE(dom.bounds.size() == 6);
        REQUIRE(dom.pivot == 4);
        const auto& omega = default_buchstab_table();
        const double lo = 1.0 / wide_row.kappa3, hi = 1.0 / wide_row.s, phi = 4.0;
        const double quad = chain_integral(dom, 12, phi, [&](double u) { return omega(u); });

        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> uni(lo, hi);
        const int n = 400'000;
        double sum = 0.0, sum2 = 0.0;
        std::array<double, 6> x{};
        for (int k = 0; k < n; ++k) {
            for (auto& v : x)
                v = uni(rng);
            std::sort(x.begin(), x.end());
            double prod = 1.0, total = 0.0;
            for (double v : x) {
                prod *= v;
                total += v;
            }
            const double f = omega((phi - total) / x[4]) / (prod * x[4]);
            sum += f;
            sum2 += f * f;
        }
        const double vol = std::pow(hi - lo, 6) / 720.0;
        const double mean = sum / n;
        const double se = std::sqrt((sum2 / n - mean * mean) / n);
        CHECK(std::abs(quad - vol * mean) <= 5.0 * vol * se + 1e-15);
        CHECK(quad > 0.0);
    }

    TEST_CASE("degenerate and unknown Buchstab terms")
    {
        const auto& omega = default_buchstab_table();
        const auto t = I1(3.0, 3.0, omega, {});
        CHECK(t.value == 0.0);
        CHECK_ERROR_KIND(I2(8, wide_row, omega, {}), ErrorKind::UnknownTerm);
        CHECK_ERROR_KIND(I2(22, wide_row, omega, {}), ErrorKind::UnknownTerm);
        CHECK_ERROR_KIND(I1(3.0, 2.9, omega, {}), ErrorKind::InvalidParams);
    }

    TEST_CASE("psi1 rows reproduce the reference table")
    {
        const auto& omega = default_buchstab_table();
        const BuchstabSettings b;
        CHECK(std::abs(psi1(2.6, 3.58, Level::Half, omega, b).value - published::goldbach_psi[4]) < 1e-4);
        CHECK(std::abs(psi1(3.0, 3.0, Level::Half, omega, b).value) < 1e-12);
        CHECK(std::abs(psi1(2.5, 3.72, Level::FourSevenths, omega, b).value - published::twin_psi[4]) < 1e-4);
    }

    TEST_CASE("looser omega bounds give larger Buchstab terms")
    {
        const auto& omega = default_buchstab_table();
        const auto ex = psi1(2.6, 3.58, Level::Half, omega, with_mode(OmegaMode::Exact));
        const auto b35 = psi1(2.6, 3.58, Level::Half, omega, with_mode(OmegaMode::Bound3_5));
        const auto b2 = psi1(2.6, 3.58, Level::Half, omega, with_mode(OmegaMode::Bound2));
        CHECK(ex.buchstab_sum <= b35.buchstab_sum + 1e-12);
        CHECK(b35.buchstab_sum <= b2.buchstab_sum + 1e-12);
        CHECK(ex.value >= b2.value - 1e-12);

        // coarse phi scan keeps the exact-mode run short; the ordering holds at any resolution
        auto coarse = [](OmegaMode m) {
            auto b = with_mode(m);
            b.scan.scan_step = 1e-2;
            b.high_dim_step = 5e-2;
            b.refine = false;
            return b;
        };
        const auto w_ex = psi2(wide_row, omega, coarse(OmegaMode::Exact));
        const auto w_b2 = psi2(wide_row, omega, coarse(OmegaMode::Bound2));
        REQUIRE(w_ex.terms.size() == 13);
        for (std::size_t k = 0; k < 13; ++k)
            CHECK(w_ex.terms[k].value <= w_b2.terms[k].value + 1e-12);
    }

    TEST_CASE("doubling the quadrature order barely moves psi")
    {
        const auto& omega = default_buchstab_table();
        BuchstabSettings base;
        BuchstabSettings fine = base;
        fine.order3 *= 2;
        fine.order45 *= 2;
        fine.order6 *= 2;
        const double a = psi1(2.7, 3.47, Level::Half, omega, base).value;
        const double b = psi1(2.7, 3.47, Level::Half, omega, fine).value;
        CHECK(std::abs(a - b) < 1e-7);
    }

    TEST_CASE("prefactors")
    {
        CHECK(buchstab_factor(RowKind::Psi1, Level::Half) == 1.0);
        CHECK(buchstab_factor(RowKind::Psi1, Level::FourSevenths) == 0.875);
        CHECK(buchstab_factor(RowKind::Psi2, Level::Half) == 0.4);
        CHECK(buchstab_factor(RowKind::Psi2, Level::FourSevenths) == 0.35);
        CHECK(parse_level(to_string(Level::FourSevenths)) == Level::FourSevenths);
        CHECK(parse_row_kind(to_string(RowKind::Psi2)) == RowKind::Psi2);
        CHECK_ERROR_KIND(parse_level("third"), ErrorKind::InvalidInput);
    }
}
