#include "sieveconst/discretization.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "sieveconst/error.hpp"
#include "sieveconst/parallel.hpp"

namespace sieveconst {

std::string_view to_string(Problem p) noexcept
{
    return p == Problem::Goldbach ? "goldbach" : "twin";
}

Problem parse_problem(std::string_view text)
{
    if (text == "goldbach")
        return Problem::Goldbach;
    if (text == "twin")
        return Problem::Twin;
    throw Error(ErrorKind::InvalidInput, "unknown problem '" + std::string(text) + "'");
}

std::vector<double> default_grid(Problem p)
{
    std::vector<double> g{1.0};
    if (p == Problem::Goldbach) {
        for (int i = 1; i <= 9; ++i)
            g.push_back(2.0 + 0.1 * (i + 1));
    } else {
        for (int i = 1; i <= 10; ++i)
            g.push_back(2.0 + 0.1 * i);
    }
    return g;
}

Level problem_level(Problem p) noexcept
{
    return p == Problem::Goldbach ? Level::Half : Level::FourSevenths;
}

double linear_sieve_constant(Problem p) noexcept
{
    return p == Problem::Goldbach ? 8.0 : 3.5;
}

std::vector<RowParams> default_rows(Problem p)
{
    const Level lv = problem_level(p);
    if (p == Problem::Goldbach) {
        return {
            RowParams::psi2(2.2, 4.54, 3.53, 2.90, 2.44, lv),
            RowParams::psi2(2.3, 4.50, 3.54, 2.88, 2.43, lv),
            RowParams::psi2(2.4, 4.46, 3.57, 2.87, 2.40, lv),
            RowParams::psi2(2.5, 4.12, 3.56, 2.91, 2.50, lv),
            RowParams::psi1(2.6, 3.58, lv),
            RowParams::psi1(2.7, 3.47, lv),
            RowParams::psi1(2.8, 3.34, lv),
            RowParams::psi1(2.9, 3.19, lv),
            RowParams::psi1(3.0, 3.00, lv),
        };
    }
    return {
        RowParams::psi2(2.1, 4.93, 3.62, 2.86, 2.34, lv),
        RowParams::psi2(2.2, 4.91, 3.62, 2.85, 2.33, lv),
        RowParams::psi2(2.3, 5.00, 3.63, 2.82, 2.30, lv),
        RowParams::psi2(2.4, 4.52, 3.64, 2.87, 2.40, lv),
        RowParams::psi1(2.5, 3.72, lv),
        RowParams::psi1(2.6, 3.62, lv),
        RowParams::psi1(2.7, 3.49, lv),
        RowParams::psi1(2.8, 3.35, lv),
        RowParams::psi1(2.9, 3.19, lv),
        RowParams::psi1(3.0, 3.00, lv),
    };
}

DiscretizationSystem build_system(Problem problem, const BuchstabTable& omega, const SystemSettings& settings,
                                  const std::optional<std::vector<RowParams>>& rows,
                                  const std::optional<std::vector<double>>& grid)
{
    DiscretizationSystem sys;
    sys.problem = problem;
    sys.grid = grid ? *grid : default_grid(problem);
    sys.rows = rows ? *rows : default_rows(problem);
    const std::size_t n = sys.rows.size();
    if (sys.grid.size() != n + 1)
        throw Error(ErrorKind::InvalidParams, "grid must have one more point than there are rows");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(sys.grid[i] < sys.grid[i + 1]))
            throw Error(ErrorKind::InvalidParams, "grid must be increasing");
        if (std::abs(sys.rows[i].s - sys.grid[i + 1]) > 1e-12)
            throw Error(ErrorKind::InvalidParams, "row " + std::to_string(i + 1) + " does not sit on its grid point");
        if (auto bad = validate_row(sys.rows[i]); !bad.empty())
            throw Error(ErrorKind::InvalidParams, "row " + std::to_string(i + 1) + ": " + bad.front());
    }
    if (sys.grid.front() < 1.0 || sys.grid.back() > 3.0)
        throw Error(ErrorKind::InvalidParams, "grid must stay inside [1, 3]");

    // rows are independent; the Buchstab terms inside a psi2 row run inline when nested
    sys.psi = parallel_map<PsiResult>(n, [&](std::size_t i) { return psi(sys.rows[i], omega, settings.buchstab); });
    sys.rhs.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        sys.rhs[i] = sys.psi[i].value;

    sys.matrix.assign(n * n, 0.0);
    std::vector<double> errors(n * n, 0.0);
    parallel_for(n * n, [&](std::size_t k) {
        const std::size_t i = k / n, j = k % n;
        const auto& row = sys.rows[i];
        const auto cuts = xi_breakpoints(row);
        const auto r = integrate_1d([&row](double t) { return xi(t, row); }, sys.grid[j], sys.grid[j + 1], cuts,
                                    settings.cell_tol);
        sys.matrix[k] = r.value;
        errors[k] = r.error;
    });
    sys.max_quadrature_error = *std::max_element(errors.begin(), errors.end());
    return sys;
}

void solve_system(DiscretizationSystem& sys)
{
    const auto n = static_cast<Eigen::Index>(sys.size());
    if (n == 0)
        throw Error(ErrorKind::InvalidParams, "empty system");
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        b(i) = sys.rhs[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < n; ++j)
            m(i, j) -= sys.matrix[static_cast<std::size_t>(i * n + j)];
    }
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
    if (!(lu.rcond() > 1e-14))
        throw Error(ErrorKind::SingularSystem, "I - A is numerically singular");
    Eigen::VectorXd x = lu.solve(b);
    x += lu.solve(b - m * x);
    const Eigen::MatrixXd inv = lu.inverse();

    sys.solution.assign(x.data(), x.data() + n);
    sys.residual = (m * x - b).cwiseAbs().maxCoeff();
    sys.inverse.resize(static_cast<std::size_t>(n * n));
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            sys.inverse[static_cast<std::size_t>(i * n + j)] = inv(i, j);
    sys.inverse_min = inv.minCoeff();
}

double theorem_constant(const DiscretizationSystem& sys)
{
    if (!sys.solved())
        throw Error(ErrorKind::InvalidParams, "system not solved");
    return linear_sieve_constant(sys.problem) * (1.0 - sys.solution.front());
}

double theorem_constant_truncated(const DiscretizationSystem& sys)
{
    if (!sys.solved())
        throw Error(ErrorKind::InvalidParams, "system not solved");
    const double x1 = std::floor(sys.solution.front() * 1e7) / 1e7;
    return linear_sieve_constant(sys.problem) * (1.0 - x1);
}

} // namespace sieveconst
