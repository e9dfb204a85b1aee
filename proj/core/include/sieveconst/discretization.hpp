#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "sieveconst/funineq.hpp"

namespace sieveconst {

enum class Problem { Goldbach, Twin };

std::string_view to_string(Problem p) noexcept;
Problem parse_problem(std::string_view text);

// grid s_0 = 1 < s_1 < ... < s_n = 3
std::vector<double> default_grid(Problem p);
// optimized row parameters for each grid point (psi2 rows first)
std::vector<RowParams> default_rows(Problem p);
Level problem_level(Problem p) noexcept;
// 8 for Goldbach, 3.5 for twin primes
double linear_sieve_constant(Problem p) noexcept;

struct DiscretizationSystem {
    Problem problem = Problem::Goldbach;
    std::vector<double> grid;
    std::vector<RowParams> rows;
    std::vector<PsiResult> psi;
    std::vector<double> matrix; // row-major n x n, a_ij = integral of the kernel over [s_{j-1}, s_j]
    std::vector<double> rhs;
    std::vector<double> solution;
    std::vector<double> inverse; // (I - A)^{-1}, row-major
    double residual = std::numeric_limits<double>::quiet_NaN();
    double inverse_min = std::numeric_limits<double>::quiet_NaN();
    double max_quadrature_error = 0.0;

    std::size_t size() const noexcept { return rows.size(); }
    // 1-based like the usual a_{i,j}
    double a(std::size_t i, std::size_t j) const { return matrix.at((i - 1) * size() + (j - 1)); }
    bool solved() const noexcept { return !solution.empty(); }
};

struct SystemSettings {
    BuchstabSettings buchstab{};
    double cell_tol = 1e-12;
};

DiscretizationSystem build_system(Problem problem, const BuchstabTable& omega, const SystemSettings& settings = {},
                                  const std::optional<std::vector<RowParams>>& rows = std::nullopt,
                                  const std::optional<std::vector<double>>& grid = std::nullopt);

// dense LU with one refinement step; fills solution, inverse, residual
void solve_system(DiscretizationSystem& sys);

// 8(1 - X_1) or 3.5(1 - X_1)
double theorem_constant(const DiscretizationSystem& sys);
// same with X_1 rounded down to 7 decimals
double theorem_constant_truncated(const DiscretizationSystem& sys);

} // namespace sieveconst
