// sieveconst: reproduce the sieve constants and tables from the command line.
// exit 0 on success, 2 when a result misses its reference tolerance, 1 on usage or config errors

#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "commands.hpp"
#include "sieveconst/error.hpp"

using namespace sieveconst;
using namespace sieveconst::cli;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_tolerance = 2;

int emit(const Report& r, const RunConfig& cfg)
{
    const std::string text = render(r, cfg.format);
    if (cfg.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(cfg.output, std::ios::binary);
        if (!out)
            throw Error(ErrorKind::InvalidInput, "cannot write '" + cfg.output + "'");
        out << text;
    }
    return r.passed() ? exit_ok : exit_tolerance;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Numerical sieve constants: tables, theorem constants, special functions and prime counts"};
    app.require_subcommand(1);
    app.fallthrough(); // global options may follow the subcommand
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    std::string config_path, format, output, omega_mode;
    app.add_option("--config", config_path, "Run configuration file (key = value with [sections])");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "md"}));
    app.add_option("--output", output, "Write the report to this file instead of stdout");
    app.add_option("--omega-mode", omega_mode, "exact, paper-bound-2, paper-bound-3.5 or paper-bound-both");

    std::string problem = "goldbach";
    auto* tables = app.add_subcommand("tables", "Parameter table, solution vector and constant");
    tables->add_option("--problem", problem)->check(CLI::IsMember({"goldbach", "twin"}));

    int which = 1;
    double theta = 0.0;
    auto* theorem = app.add_subcommand("theorem", "Constant of theorem 1..5");
    theorem->add_option("which", which)->required()->check(CLI::Range(1, 5));
    auto* theta_opt = theorem->add_option("--theta", theta, "Exponent for theorem 5");

    SpecialRequest special_req;
    double at = 0.0;
    auto* special = app.add_subcommand("special", "Evaluate or tabulate a special function");
    special->add_option("--fn", special_req.fn)->required()->check(CLI::IsMember({"A", "a", "F", "f", "omega", "sigma0"}));
    auto* at_opt = special->add_option("--at", at, "Single point");
    special->add_option("--from", special_req.from, "Grid start");
    special->add_option("--to", special_req.to, "Grid end");
    special->add_option("--step", special_req.step, "Grid step");

    EmpiricalRequest emp_req;
    auto* empirical = app.add_subcommand("empirical", "Exact prime counts against their main terms");
    empirical->add_option("--task", emp_req.task)
        ->required()
        ->check(CLI::IsMember({"D", "D12", "pi2", "pi12", "D12-short", "pi12-short"}));
    empirical->add_option("--n", emp_req.n, "N or x; repeat for a table")->required();
    empirical->add_option("--alpha", emp_req.alpha, "Interval start as a fraction of N");
    empirical->add_option("--theta", emp_req.theta, "Interval length exponent");

    int max_omega = 9;
    double kappa = 1.0 / 12.0, sigma = 41.0 / 125.0;
    auto* verify = app.add_subcommand("verify-weights", "Check the weight inequality over every factor pattern");
    verify->add_option("--max-omega", max_omega)->check(CLI::Range(1, 12));
    verify->add_option("--kappa", kappa);
    verify->add_option("--sigma", sigma);

    double opt_s = 0.0;
    std::string kind = "psi1", level = "half";
    auto* optimize = app.add_subcommand("optimize", "Search row parameters for one grid point");
    optimize->add_option("--s", opt_s)->required();
    optimize->add_option("--kind", kind)->check(CLI::IsMember({"psi1", "psi2"}));
    optimize->add_option("--level", level)->check(CLI::IsMember({"half", "four-sevenths"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    RunConfig cfg;
    try {
        if (!config_path.empty())
            cfg = load_config(config_path);
        if (!format.empty())
            cfg.format = parse_format(format);
        if (!output.empty())
            cfg.output = output;
        if (!omega_mode.empty())
            cfg.omega_mode = parse_omega_mode(omega_mode);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_usage;
    }

    try {
        if (*tables)
            return emit(run_tables(cfg, parse_problem(problem)), cfg);
        if (*theorem)
            return emit(run_theorem(cfg, which, *theta_opt ? std::optional<double>(theta) : std::nullopt), cfg);
        if (*special) {
            if (*at_opt)
                special_req.at = at;
            return emit(run_special(cfg, special_req), cfg);
        }
        if (*empirical)
            return emit(run_empirical(cfg, emp_req), cfg);
        if (*verify)
            return emit(run_verify_weights(cfg, max_omega, kappa, sigma), cfg);
        if (*optimize)
            return emit(run_optimize(cfg, opt_s, parse_row_kind(kind), parse_level(level)), cfg);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_usage;
    }
    return exit_usage;
}
