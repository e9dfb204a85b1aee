#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "sieveconst/rational.hpp"
#include "sieveconst/specialfun.hpp"

namespace sieveconst {

enum class WeightProblem { Goldbach12, Twin12, ShortInterval };

std::string_view to_string(WeightProblem p) noexcept;

struct WeightParams {
    Rational kappa1, kappa2, rho, sigma2, sigma1;
    WeightProblem problem = WeightProblem::Goldbach12;
    Rational theta{1}; // short interval exponent

    static WeightParams goldbach_default();
    static WeightParams twin_default();
    // (theta, (2theta-1)/12, 0.111, (2theta-1)/4, 0.271, 0.313)
    static WeightParams short_interval_default(Rational theta);
    // goldbach parameters re-labelled as a short-interval run at theta = 1
    static WeightParams short_interval_full();
};

std::vector<std::string> validate_weights(const WeightParams& p);

inline constexpr std::size_t weight_term_count = 16;

struct TermReport {
    char prefix = 'F';
    std::array<double, weight_term_count> terms{}; // index 6, 11, 12, 15 stay 0
    std::array<double, weight_term_count> refined{}; // second resolution for the nested terms
    double combined = 0.0;
    OmegaMode mode = OmegaMode::Bound3_5;
    double level = 0.5;
    bool reconstruction = false;

    double max_refine_difference() const noexcept;
};

// (4T0 - T1 - T2 - T3 + T4 + T5 - 2T7 - 2T8 - T9 - T10 - T13 - T14)/4
double combine_terms(const std::array<double, weight_term_count>& t) noexcept;

struct WeightSettings {
    double tol = 1e-11;
    std::size_t nested_order = 20;     // per level for the 4-fold terms
    std::size_t nested_refine = 8;
};

TermReport compute_F_terms(const WeightParams& p, const SieveFnTable& sieve, const BuchstabTable& omega,
                           OmegaMode mode = OmegaMode::Bound3_5, const WeightSettings& settings = {});
TermReport compute_G_terms(const WeightParams& p, const SieveFnTable& sieve, const BuchstabTable& omega,
                           OmegaMode mode = OmegaMode::BoundBoth, const WeightSettings& settings = {});

inline double combine_F(const TermReport& r) noexcept { return combine_terms(r.terms); }

// F-term pipeline with level (2theta - 1)/2 in place of 1/2
TermReport short_interval_terms(const WeightParams& p, const SieveFnTable& sieve, const BuchstabTable& omega,
                                OmegaMode mode = OmegaMode::Bound3_5, const WeightSettings& settings = {});
double short_interval_bound(const WeightParams& p, const SieveFnTable& sieve, const BuchstabTable& omega,
                            OmegaMode mode = OmegaMode::Bound3_5, const WeightSettings& settings = {});

} // namespace sieveconst
