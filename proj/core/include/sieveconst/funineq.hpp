#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "sieveconst/quadrature.hpp"
#include "sieveconst/specialfun.hpp"

namespace sieveconst {

// level of distribution: 1/2 (Bombieri-Vinogradov) or 4/7 (well-factorable weights)
enum class Level { Half, FourSevenths };
enum class RowKind { Psi1, Psi2 };

std::string_view to_string(Level level) noexcept;
std::string_view to_string(RowKind kind) noexcept;
Level parse_level(std::string_view text);
RowKind parse_row_kind(std::string_view text);

struct RowParams {
    double s = 0.0;
    double s_prime = 0.0;
    double kappa1 = 0.0; // psi2 only
    double kappa2 = 0.0;
    double kappa3 = 0.0;
    RowKind kind = RowKind::Psi1;
    Level level = Level::Half;

    static RowParams psi1(double s, double s_prime, Level level = Level::Half);
    static RowParams psi2(double s, double s_prime, double kappa1, double kappa2, double kappa3,
                          Level level = Level::Half);
};

// prefactor in front of the Buchstab part: 1 or 7/8 (psi1), 2/5 or 7/20 (psi2)
double buchstab_factor(RowKind kind, Level level) noexcept;

struct Alphas {
    std::array<double, 9> values{};
    // 1-based, matching the usual numbering
    double operator[](std::size_t i) const { return values.at(i - 1); }
};

Alphas compute_alphas(const RowParams& p);
// empty when the row is admissible
std::vector<std::string> validate_row(const RowParams& p);

double xi1(double t, double s, double s_prime);
double xi2(double t, const RowParams& p);
double xi(double t, const RowParams& p);
// indicator switch points inside [1, 3]
std::vector<double> xi_breakpoints(const RowParams& p);

struct BuchstabSettings {
    OmegaMode mode = OmegaMode::Bound2;
    PhiScanSpec scan{};
    double high_dim_step = 1e-2; // phi step for dimension >= 4
    std::size_t order3 = 24;
    std::size_t order45 = 16;
    std::size_t order6 = 12;
    std::size_t refine_extra = default_refine_extra;
    bool refine = true;

    std::size_t order(std::size_t dim) const noexcept;
};

struct BuchstabTerm {
    int index = 0; // 1 for I1, 9..21 for the I2 family
    std::size_t dim = 0;
    double value = 0.0;
    double phi = 2.0;
    double refined = 0.0;
    double difference = 0.0;
    bool from_tail = false;
};

ChainDomain i1_domain(double s, double s_prime);
ChainDomain i2_domain(int i, const RowParams& p);

BuchstabTerm buchstab_term(int index, const ChainDomain& domain, const BuchstabTable& omega,
                           const BuchstabSettings& settings);
BuchstabTerm I1(double s, double s_prime, const BuchstabTable& omega, const BuchstabSettings& settings);
BuchstabTerm I2(int i, const RowParams& p, const BuchstabTable& omega, const BuchstabSettings& settings);

struct PsiResult {
    double value = 0.0;
    double main_term = 0.0;
    double buchstab_sum = 0.0;
    double factor = 0.0;
    double max_refine_difference = 0.0;
    OmegaMode mode = OmegaMode::Bound2;
    std::vector<BuchstabTerm> terms;
};

// main terms without the Buchstab integrals
double psi1_main(double s, double s_prime);
double psi2_main(const RowParams& p);

PsiResult psi1(double s, double s_prime, Level level, const BuchstabTable& omega,
               const BuchstabSettings& settings);
PsiResult psi2(const RowParams& p, const BuchstabTable& omega, const BuchstabSettings& settings);
PsiResult psi(const RowParams& p, const BuchstabTable& omega, const BuchstabSettings& settings);

struct OptimizeSettings {
    double grid_step = 0.01;
    double final_step = 1e-3;
    double psi2_start_step = 0.04;
    double s_prime_max = 5.0;
    std::size_t max_iterations = 400;
    BuchstabSettings search{}; // quadrature used while searching
};

struct OptimizeResult {
    RowParams params;
    PsiResult psi;
    std::size_t evaluations = 0;
};

// seed is used for psi2 when given; otherwise a default starting point is derived from s
OptimizeResult optimize_row(double s, RowKind kind, Level level, const BuchstabTable& omega,
                            const BuchstabSettings& settings, const OptimizeSettings& opt = {},
                            const RowParams* seed = nullptr);

} // namespace sieveconst
