#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "sieveconst/chenweights.hpp"
#include "sieveconst/published.hpp"
#include "test_support.hpp"

using namespace sieveconst;

namespace {

const TermReport& goldbach_terms()
{
    static const TermReport r =
        compute_F_terms(WeightParams::goldbach_default(), default_sieve_table(), default_buchstab_table());
    return r;
}

const TermReport& twin_terms()
{
    static const TermReport r =
        compute_G_terms(WeightParams::twin_default(), default_sieve_table(), default_buchstab_table());
    return r;
}

double short_bound(Rational theta, OmegaMode mode = OmegaMode::Bound3_5)
{
    return short_interval_bound(WeightParams::short_interval_default(theta), default_sieve_table(),
                                default_buchstab_table(), mode);
}

bool mentions(const std::vector<std::string>& v, const std::string& m)
{
    for (const auto& s : v)
        if (s == m)
            return true;
    return false;
}

} // namespace

TEST_SUITE("chenweights")
{
    TEST_CASE("default parameter sets are admissible")
    {
        CHECK(validate_weights(WeightParams::goldbach_default()).empty());
        CHECK(validate_weights(WeightParams::twin_default()).empty());
        CHECK(validate_weights(WeightParams::short_interval_full()).empty());
        for (int k = 971; k <= 1000; k += 5)
            CHECK(validate_weights(WeightParams::short_interval_default(Rational(k, 1000))).empty());
    }

    TEST_CASE("validation names each broken constraint")
    {
        auto p = WeightParams::goldbach_default();
        p.sigma1 = Rational(1, 3);
        CHECK(mentions(validate_weights(p), "sigma1 < 1/3 fails"));
        p = WeightParams::goldbach_default();
        p.kappa1 = Rational(1, 10);
        CHECK(mentions(validate_weights(p), "kappa1 = 1/12 fails"));
        p = WeightParams::twin_default();
        p.sigma2 = Rational(3, 10);
        CHECK(mentions(validate_weights(p), "sigma2 < 29/100 < sigma1 fails"));
        p = WeightParams::short_interval_default(Rational(3, 5));
        CHECK(mentions(validate_weights(p), "3/5 < theta <= 1 fails"));
        p = WeightParams::goldbach_default();
        p.rho = Rational(3, 10);
        CHECK_ERROR_KIND(compute_F_terms(p, default_sieve_table(), default_buchstab_table()), ErrorKind::InvalidParams);
        CHECK_ERROR_KIND(compute_F_terms(WeightParams::twin_default(), default_sieve_table(), default_buchstab_table()),
                         ErrorKind::InvalidParams);
    }

    TEST_CASE("combination weights")
    {
        const std::array<double, weight_term_count> sign{4, -1, -1, -1, 1, 1, 0, -2, -2, -1, -1, 0, 0, -1, -1, 0};
        for (std::size_t i = 0; i < weight_term_count; ++i) {
            std::array<double, weight_term_count> unit{};
            unit[i] = 1.0;
            CHECK(combine_terms(unit) == 0.25 * sign[i]);
        }
    }

    TEST_CASE("Goldbach terms")
    {
        const auto& r = goldbach_terms();
        CHECK(std::abs(r.terms[0] - 8.0 * default_sieve_table().a(6.0)) < 1e-9);
        const double l = oracle::log_integral(125.0 / 41.0 - 1.0);
        CHECK(r.terms[7] == doctest::Approx(8.0 * l).epsilon(1e-12));
        for (std::size_t i = 0; i < 15; ++i) {
            const double ref = published::f_terms[i];
            CHECK(std::abs(r.terms[i] - ref) <= std::max(1e-3, 0.005 * std::abs(ref)));
        }
        for (std::size_t i : {6u, 11u, 12u, 15u})
            CHECK(r.terms[i] == 0.0);
        CHECK(r.combined == combine_F(r));
        CHECK(r.combined >= 0.835);
        CHECK(std::abs(r.combined - published::f_combined) < 2e-4);
        CHECK(r.max_refine_difference() < 1e-4);
    }

    TEST_CASE("twin terms")
    {
        const auto& r = twin_terms();
        CHECK(r.prefix == 'G');
        for (std::size_t i = 0; i < 15; ++i) {
            const double ref = published::g_terms[i];
            CHECK(std::abs(r.terms[i] - ref) <= std::max(1e-3, 0.005 * std::abs(ref)));
        }
        for (std::size_t i : {6u, 11u, 12u, 15u})
            CHECK(r.terms[i] == 0.0);
        CHECK(r.combined >= 1.102);
        CHECK(std::abs(r.combined - published::g_combined) < 3e-3);
    }

    TEST_CASE("short-interval bound at theta = 1 is the Goldbach bound")
    {
        const double full = short_interval_bound(WeightParams::short_interval_full(), default_sieve_table(),
                                                 default_buchstab_table());
        CHECK(std::abs(full - goldbach_terms().combined) <= 1e-9);
    }

    TEST_CASE("short-interval bound grows with theta and stays positive")
    {
        double prev = 0.0;
        for (int k : {971, 981, 991, 1000}) {
            const double v = short_bound(Rational(k, 1000));
            CHECK(v > 0.0);
            CHECK(v > prev);
            prev = v;
        }
    }

    TEST_CASE("replacing omega by its bound can only lower the combination")
    {
        const double bounded = short_bound(Rational(971, 1000), OmegaMode::Bound3_5);
        const double exact = short_bound(Rational(971, 1000), OmegaMode::Exact);
        CHECK(bounded <= exact + 1e-12);
    }
}
