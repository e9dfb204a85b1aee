#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "sieveconst/quadrature.hpp"
#include "test_support.hpp"

using namespace sieveconst;

namespace {

// 0 < x1 < x2 < ... < xd < 1
SimplexSpec ordered_cube(std::size_t dim, std::function<double(Point)> f)
{
    SimplexSpec spec;
    for (std::size_t k = 0; k < dim; ++k)
        spec.limits.emplace_back([k](Point x) { return k == 0 ? 0.0 : x[k - 1]; }, [](Point) { return 1.0; });
    spec.integrand = std::move(f);
    return spec;
}

double factorial(std::size_t n)
{
    double r = 1.0;
    for (std::size_t k = 2; k <= n; ++k)
        r *= static_cast<double>(k);
    return r;
}

} // namespace

TEST_SUITE("quadrature")
{
    TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly")
    {
        for (std::size_t n : {1u, 2u, 5u, 12u, 24u}) {
            const auto& g = gauss_legendre(n);
            REQUIRE(g.nodes.size() == n);
            for (std::size_t deg = 0; deg < 2 * n; ++deg) {
                double s = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                    s += g.weights[i] * std::pow(g.nodes[i], static_cast<double>(deg));
                const double exact = deg % 2 ? 0.0 : 2.0 / static_cast<double>(deg + 1);
                CHECK(std::abs(s - exact) < 1e-13);
            }
        }
        CHECK_ERROR_KIND(gauss_legendre(0), ErrorKind::InvalidInput);
        CHECK_ERROR_KIND(gauss_legendre(257), ErrorKind::InvalidInput);
    }

    TEST_CASE("adaptive integration on known integrals")
    {
        CHECK(std::abs(integrate_1d([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 1e-13).value - 2.0) < 1e-12);
        CHECK(std::abs(integrate_1d([](double x) { return 1.0 / x; }, 1.0, std::exp(1.0), 1e-13).value - 1.0) < 1e-12);
        CHECK(std::abs(integrate_1d([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-12).value - 2.0 / 3.0) < 1e-10);
        // oriented
        const double fwd = integrate_1d([](double x) { return std::exp(x); }, 0.0, 2.0, 1e-13).value;
        const double back = integrate_1d([](double x) { return std::exp(x); }, 2.0, 0.0, 1e-13).value;
        CHECK(fwd == doctest::Approx(-back).epsilon(1e-15));
        CHECK(integrate_1d([](double x) { return x; }, 1.0, 1.0, 1e-13).value == 0.0);
    }

    TEST_CASE("adaptive integration against a fine Riemann sum")
    {
        auto g = [](double t) { return std::log(t - 1.0) / t * std::cos(t); };
        const double r = oracle::riemann(g, 2.0, 5.0, 10'000'000);
        CHECK(std::abs(integrate_1d(g, 2.0, 5.0, 1e-13).value - r) < 1e-9);
    }

    TEST_CASE("breakpoints handle kinks")
    {
        auto g = [](double x) { return std::abs(x - 0.3); };
        const double bp[] = {0.3};
        const auto e = integrate_1d(g, 0.0, 1.0, bp, 1e-14);
        CHECK(std::abs(e.value - (0.045 + 0.245)) < 1e-14);
    }

    TEST_CASE("integration failures are reported")
    {
        CHECK_ERROR_KIND(integrate_1d([](double x) { return 1.0 / x; }, 0.0, 1.0, 1e-10), ErrorKind::QuadratureFailure);
        CHECK_ERROR_KIND(integrate_1d([](double x) { return x; }, 0.0, 1.0, 0.0), ErrorKind::InvalidTolerance);
        try {
            integrate_1d([](double x) { return 1.0 / x; }, 0.0, 1.0, 1e-10);
        } catch (const QuadratureFailure& e) {
            CHECK(e.estimate() > 0.0);
            CHECK(e.error_bound() > 0.0);
        }
    }

    TEST_CASE("ordered cubes have volume 1/d!")
    {
        for (std::size_t d = 2; d <= 6; ++d) {
            const auto spec = ordered_cube(d, [](Point) { return 1.0; });
            CHECK(std::abs(integrate_simplex_once(spec, 8) - 1.0 / factorial(d)) < 1e-10);
        }
        // t*u over 0 < t < u < 1
        const auto spec = ordered_cube(2, [](Point x) { return x[0] * x[1]; });
        CHECK(std::abs(integrate_simplex_once(spec, 8) - 0.125) < 1e-14);
    }

    TEST_CASE("empty regions integrate to zero")
    {
        SimplexSpec spec;
        spec.limits.emplace_back([](Point) { return 0.5; }, [](Point) { return 0.2; });
        spec.limits.emplace_back([](Point x) { return x[0]; }, [](Point) { return 1.0; });
        spec.integrand = [](Point) { return 1.0; };
        CHECK(integrate_simplex_once(spec, 10) == 0.0);
    }

    TEST_CASE("malformed regions are rejected")
    {
        SimplexSpec none;
        none.integrand = [](Point) { return 1.0; };
        CHECK_ERROR_KIND(integrate_simplex_once(none, 10), ErrorKind::InvalidDomain);
        auto seven = ordered_cube(7, [](Point) { return 1.0; });
        CHECK_ERROR_KIND(integrate_simplex_once(seven, 10), ErrorKind::InvalidDomain);
        SimplexSpec nan_limit = ordered_cube(2, [](Point) { return 1.0; });
        nan_limit.limits[1].second = [](Point) { return std::nan(""); };
        CHECK_ERROR_KIND(integrate_simplex_once(nan_limit, 10), ErrorKind::InvalidDomain);
        ChainDomain bad{{ChainBound::after_previous(1.0)}, 0};
        CHECK_ERROR_KIND(BuchstabCloud(bad, 8), ErrorKind::InvalidDomain);
        ChainDomain pivot{{ChainBound::fixed(0.1, 0.2), ChainBound::after_previous(0.3)}, 2};
        CHECK_ERROR_KIND(BuchstabCloud(pivot, 8), ErrorKind::InvalidDomain);
    }

    TEST_CASE("nested rule agrees with iterated adaptive integration")
    {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> coef(-1.0, 1.0);
        for (int trial = 0; trial < 10; ++trial) {
            const double a = coef(rng), b = coef(rng), c = coef(rng);
            auto f = [=](double x, double y) { return std::exp(a * x + b * y) * std::cos(c * x * y); };
            const auto spec = ordered_cube(2, [&](Point p) { return f(p[0], p[1]); });
            const auto res = integrate_simplex(spec, 12);
            const double ref = integrate_1d(
                                   [&](double x) {
                                       return integrate_1d([&](double y) { return f(x, y); }, x, 1.0, 1e-14).value;
                                   },
                                   0.0, 1.0, 1e-13)
                                   .value;
            CHECK(std::abs(res.value - ref) < 1e-12);
            CHECK(std::abs(res.refined - ref) < 1e-12);
            CHECK(res.difference < 1e-12);
        }
        CHECK_ERROR_KIND(integrate_simplex(ordered_cube(2, [](Point) { return 1.0; }), 4), ErrorKind::InvalidInput);
    }

    TEST_CASE("stored chain nodes match the streaming evaluation")
    {
        const auto& omega = default_buchstab_table();
        ChainDomain d{{ChainBound::fixed(0.1, 0.2), ChainBound::after_previous(0.3), ChainBound::after_previous(0.3)}, 1};
        const BuchstabCloud cloud(d, 16);
        for (double phi : {0.5, 0.8, 1.0, 1.4}) {
            const double streamed = chain_integral(d, 16, phi, [&](double u) { return omega(u); });
            CHECK(std::abs(cloud(phi, omega, OmegaMode::Exact) - streamed) < 1e-12);
        }
        CHECK(cloud(cloud.phi_low() - 1e-9, omega, OmegaMode::Exact) == 0.0);
        // omega = 1 gives the bare weight
        const double w = chain_integral(d, 16, 100.0, [](double) { return 1.0; });
        CHECK(std::abs(w - cloud.total_weight()) < 1e-12 * w);
    }

    TEST_CASE("chain weight against a closed form")
    {
        // 1/(x y^2) over 0.1 < x < 0.2, x < y < 0.3
        ChainDomain d{{ChainBound::fixed(0.1, 0.2), ChainBound::after_previous(0.3)}, 1};
        const double exact = integrate_1d([](double x) { return (1.0 / x - 1.0 / 0.3) / x; }, 0.1, 0.2, 1e-14).value;
        CHECK(std::abs(chain_integral(d, 24, 1e3, [](double) { return 1.0; }) - exact) < 1e-11);
    }

    TEST_CASE("phi scan never reports less than a sampled value")
    {
        PhiFamily fam;
        fam.value = [](double phi) { return std::sin(7.0 * phi) * std::exp(-0.3 * phi); };
        PhiScanSpec scan{2.0, 6.0, 1e-3, OmegaMode::Bound3_5};
        const auto m = maximize_over_phi(fam, scan);
        double sampled = -1.0;
        for (double phi = 2.0; phi <= 6.0; phi += 1e-5)
            sampled = std::max(sampled, fam.value(phi));
        CHECK(m.value >= sampled - 1e-14);
        CHECK(m.phi >= 2.0);
        CHECK(m.phi <= 6.0);

        // a tail that dominates is used
        fam.tail = [](double) { return 5.0; };
        const auto t = maximize_over_phi(fam, scan);
        CHECK(t.from_tail);
        CHECK(t.value == 5.0);

        CHECK_ERROR_KIND(maximize_over_phi(fam, PhiScanSpec{2.0, 6.0, 0.0}), ErrorKind::InvalidInput);
    }

    TEST_CASE("default orders")
    {
        for (std::size_t d = 1; d <= 6; ++d) {
            CHECK(default_simplex_order(d) >= 8);
            CHECK(default_refine_threshold(d) > 0.0);
        }
    }
}
