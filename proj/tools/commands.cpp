#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "sieveconst/chenweights.hpp"
#include "sieveconst/discretization.hpp"
#include "sieveconst/empirical.hpp"
#include "sieveconst/error.hpp"
#include "sieveconst/published.hpp"

namespace sieveconst::cli {

namespace {

constexpr double psi_tol = 1e-4;
constexpr double solution_tol = 2e-4;
constexpr double constant_tol = 2e-3;
constexpr double twin_combined_tol = 3e-3;
constexpr double short_full_tol = 1e-9;

Cell blank()
{
    return std::string();
}

std::string label(const char* fmt, std::size_t i)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, i);
    return buf;
}

double term_tolerance(double reference)
{
    return std::max(1e-3, 0.005 * std::abs(reference));
}

void add_settings(Report& r, const RunConfig& cfg, OmegaMode mode)
{
    r.field("omega_mode", std::string(to_string(mode)));
    r.field("order3", static_cast<std::int64_t>(cfg.buchstab.order3));
    r.field("order45", static_cast<std::int64_t>(cfg.buchstab.order45));
    r.field("order6", static_cast<std::int64_t>(cfg.buchstab.order6));
    r.field("refine_extra", static_cast<std::int64_t>(cfg.buchstab.refine_extra));
    r.field("phi_step", cfg.buchstab.scan.scan_step);
    r.field("phi_step_high_dim", cfg.buchstab.high_dim_step);
}

} // namespace

Report run_tables(const RunConfig& cfg, Problem problem)
{
    const bool goldbach = problem == Problem::Goldbach;
    const auto& custom = goldbach ? cfg.goldbach_rows : cfg.twin_rows;
    const OmegaMode mode = cfg.omega_mode.value_or(OmegaMode::Bound2);

    SystemSettings settings;
    settings.buchstab = cfg.buchstab;
    settings.buchstab.mode = mode;
    settings.cell_tol = cfg.cell_tol;
    auto sys = build_system(problem, default_buchstab_table(), settings, custom);
    solve_system(sys);

    Report r;
    r.command = "tables";
    r.field("problem", std::string(to_string(problem)));
    r.field("level", std::string(to_string(problem_level(problem))));
    if (problem_level(problem) == Level::FourSevenths)
        r.field("kernel_assumption", std::string("kernels taken unchanged at level 4/7; only the main terms and prefactors change"));
    add_settings(r, cfg, mode);
    r.field("cell_tol", cfg.cell_tol);
    r.field("residual", sys.residual);
    r.field("inverse_min", sys.inverse_min);
    r.field("max_quadrature_error", sys.max_quadrature_error);
    double refine = 0.0;
    for (const auto& p : sys.psi)
        refine = std::max(refine, p.max_refine_difference);
    r.field("max_refine_difference", refine);
    r.field("constant", theorem_constant(sys));
    r.field("constant_truncated", theorem_constant_truncated(sys));

    Table params{"parameters", {"i", "s", "s_prime", "kappa1", "kappa2", "kappa3", "psi1", "psi2"}, {}};
    Table solution{"solution", {"i", "s", "x"}, {}};
    for (std::size_t i = 0; i < sys.size(); ++i) {
        const auto& row = sys.rows[i];
        const bool two = row.kind == RowKind::Psi2;
        const double v = sys.psi[i].value;
        params.add({static_cast<std::int64_t>(i + 1), row.s, row.s_prime, two ? Cell(row.kappa1) : blank(),
                    two ? Cell(row.kappa2) : blank(), two ? Cell(row.kappa3) : blank(), two ? blank() : Cell(v),
                    two ? Cell(v) : blank()});
        solution.add({static_cast<std::int64_t>(i + 1), row.s, sys.solution[i]});
    }
    r.tables.push_back(std::move(params));
    r.tables.push_back(std::move(solution));

    if (!custom) {
        const double* psi = goldbach ? published::goldbach_psi.data() : published::twin_psi.data();
        for (std::size_t i = 0; i < sys.size(); ++i)
            r.check(label("psi row %zu", i + 1), sys.psi[i].value, psi[i], psi_tol);
        if (goldbach) {
            for (std::size_t i = 0; i < sys.size(); ++i)
                r.check(label("x %zu", i + 1), sys.solution[i], published::goldbach_solution[i], solution_tol);
            r.check("constant", theorem_constant(sys), published::goldbach_constant, constant_tol);
        } else {
            r.check("x 1", sys.solution[0], published::twin_solution_first, solution_tol);
            r.check("constant", theorem_constant(sys), published::twin_constant, constant_tol);
        }
        r.check_at_least("inverse entries positive", sys.inverse_min, std::numeric_limits<double>::min());
    }
    return r;
}

namespace {

void term_table(Report& r, const TermReport& t, const std::array<double, 15>* reference)
{
    Table tab{"terms", {"term", "value", "refined"}, {}};
    if (reference)
        tab.columns.push_back("published");
    for (std::size_t i = 0; i < 15; ++i) {
        if (i == 6 || i == 11 || i == 12)
            continue;
        std::vector<Cell> row{label(t.prefix == 'F' ? "F%zu" : "G%zu", i), t.terms[i], t.refined[i]};
        if (reference)
            row.push_back((*reference)[i]);
        tab.add(std::move(row));
    }
    r.tables.push_back(std::move(tab));
    r.field("combined", t.combined);
    r.field("max_refine_difference", t.max_refine_difference());
}

Report weights_theorem(const RunConfig& cfg, bool twin)
{
    const OmegaMode mode = cfg.omega_mode.value_or(twin ? OmegaMode::BoundBoth : OmegaMode::Bound3_5);
    const auto& params = twin ? cfg.twin12 : cfg.goldbach12;
    const auto t = twin ? compute_G_terms(params, default_sieve_table(), default_buchstab_table(), mode, cfg.weights)
                        : compute_F_terms(params, default_sieve_table(), default_buchstab_table(), mode, cfg.weights);
    const bool stock = !cfg.touched_any(twin ? "twin12." : "goldbach12.");

    Report r;
    r.command = "theorem";
    r.field("theorem", static_cast<std::int64_t>(twin ? 4 : 2));
    r.field("omega_mode", std::string(to_string(mode)));
    r.field("level", t.level);
    r.field("tol", cfg.weights.tol);
    r.field("nested_order", static_cast<std::int64_t>(cfg.weights.nested_order));
    r.field("kappa1", params.kappa1.str());
    r.field("kappa2", params.kappa2.str());
    r.field("rho", params.rho.str());
    r.field("sigma2", params.sigma2.str());
    r.field("sigma1", params.sigma1.str());
    const auto& reference = twin ? published::g_terms : published::f_terms;
    term_table(r, t, stock ? &reference : nullptr);
    if (stock) {
        for (std::size_t i = 0; i < 15; ++i) {
            if (i == 6 || i == 11 || i == 12)
                continue;
            r.check(label(twin ? "G%zu" : "F%zu", i), t.terms[i], reference[i], term_tolerance(reference[i]));
        }
        if (twin) {
            r.check_at_least("combined lower bound", t.combined, 1.102);
            r.check("combined", t.combined, published::g_combined, twin_combined_tol);
        } else {
            r.check_at_least("combined lower bound", t.combined, 0.835);
            r.check("combined", t.combined, published::f_combined, constant_tol);
        }
    }
    return r;
}

Report short_theorem(const RunConfig& cfg, std::optional<double> theta_arg)
{
    const OmegaMode mode = cfg.omega_mode.value_or(OmegaMode::Bound3_5);
    const auto& sf = default_sieve_table();
    const auto& om = default_buchstab_table();
    const Rational theta = theta_arg ? Rational::parse(format_number(*theta_arg)) : cfg.short_theta;
    const auto params = cfg.short_params(theta);
    const auto t = short_interval_terms(params, sf, om, mode, cfg.weights);

    Report r;
    r.command = "theorem";
    r.field("theorem", std::int64_t{5});
    r.field("reconstruction", true);
    r.field("omega_mode", std::string(to_string(mode)));
    r.field("theta", theta.value());
    r.field("level", t.level);
    r.field("kappa1", params.kappa1.str());
    r.field("kappa2", params.kappa2.str());
    r.field("rho", params.rho.str());
    r.field("sigma2", params.sigma2.str());
    r.field("sigma1", params.sigma1.str());
    term_table(r, t, nullptr);

    // theta scan from the configured start up to 1
    Table scan{"theta_scan", {"theta", "bound"}, {}};
    double previous = -std::numeric_limits<double>::infinity();
    bool monotone = true;
    std::vector<Rational> thetas;
    for (Rational th = theta; th <= Rational(1); th = th + Rational(5, 1000))
        thetas.push_back(th);
    if (!thetas.empty() && thetas.back() < Rational(1))
        thetas.push_back(Rational(1));
    for (const Rational& th : thetas) {
        const double b = short_interval_bound(cfg.short_params(th), sf, om, mode, cfg.weights);
        scan.add({th.value(), b});
        monotone = monotone && b >= previous;
        previous = b;
    }
    r.tables.push_back(std::move(scan));

    const double full = short_interval_bound(WeightParams::short_interval_full(), sf, om, mode, cfg.weights);
    const double direct = compute_F_terms(WeightParams::goldbach_default(), sf, om, mode, cfg.weights).combined;
    r.field("full_interval", full);
    r.check("full interval matches the F combination", full, direct, short_full_tol);
    r.check_at_least("bound positive", t.combined, std::numeric_limits<double>::min());
    r.check_at_least("nondecreasing in theta", monotone ? 1.0 : 0.0, 1.0);
    return r;
}

} // namespace

Report run_theorem(const RunConfig& cfg, int which, std::optional<double> theta)
{
    switch (which) {
    case 1: {
        auto r = run_tables(cfg, Problem::Goldbach);
        r.field("theorem", std::int64_t{1});
        return r;
    }
    case 3: {
        auto r = run_tables(cfg, Problem::Twin);
        r.field("theorem", std::int64_t{3});
        return r;
    }
    case 2: return weights_theorem(cfg, false);
    case 4: return weights_theorem(cfg, true);
    case 5: return short_theorem(cfg, theta);
    default: throw Error(ErrorKind::InvalidInput, "theorem must be 1..5");
    }
}

Report run_special(const RunConfig& cfg, const SpecialRequest& req)
{
    const auto& sf = default_sieve_table();
    const auto& om = default_buchstab_table();
    const OmegaMode mode = cfg.omega_mode.value_or(OmegaMode::Exact);
    auto eval = [&](double v) -> double {
        if (req.fn == "A")
            return sf.A(v);
        if (req.fn == "a")
            return sf.a(v);
        if (req.fn == "F")
            return sf.F(v);
        if (req.fn == "f")
            return sf.f(v);
        if (req.fn == "omega")
            return mode == OmegaMode::Exact ? om(v) : om.upper(v, mode);
        if (req.fn == "sigma0")
            return sigma0(v);
        throw Error(ErrorKind::InvalidInput, "unknown function '" + req.fn + "'");
    };

    Report r;
    r.command = "special";
    r.field("fn", req.fn);
    if (req.fn == "omega")
        r.field("omega_mode", std::string(to_string(mode)));
    if (req.at) {
        r.field("at", *req.at);
        r.field("value", eval(*req.at));
        return r;
    }
    if (!(req.step > 0.0) || !(req.to >= req.from))
        throw Error(ErrorKind::InvalidInput, "grid needs step > 0 and to >= from");
    Table grid{"grid", {"u", "value"}, {}};
    const auto n = static_cast<std::int64_t>(std::floor((req.to - req.from) / req.step + 1e-9));
    for (std::int64_t k = 0; k <= n; ++k) {
        const double u = req.from + static_cast<double>(k) * req.step;
        grid.add({u, eval(u)});
    }
    r.field("from", req.from);
    r.field("to", req.to);
    r.field("step", req.step);
    r.tables.push_back(std::move(grid));
    return r;
}

Report run_empirical(const RunConfig& cfg, const EmpiricalRequest& req)
{
    if (req.n.empty())
        throw Error(ErrorKind::InvalidInput, "empirical needs at least one --n");
    Report r;
    r.command = "empirical";
    r.field("task", req.task);
    Table t{"counts", {"n", "count", "main_term", "ratio"}, {}};
    const auto limit = cfg.product_limit;
    r.field("product_limit", static_cast<std::int64_t>(limit));

    for (std::uint64_t n : req.n) {
        std::uint64_t c = 0;
        Interval main{};
        if (req.task == "D" || req.task == "D12") {
            c = req.task == "D" ? count_goldbach(n) : count_goldbach12(n);
            main = goldbach_main_term(n, limit);
        } else if (req.task == "pi2" || req.task == "pi12") {
            c = req.task == "pi2" ? count_twin(n) : count_twin12(n);
            main = twin_main_term(static_cast<double>(n), limit);
        } else if (req.task == "D12-short") {
            c = count_goldbach12_short(req.alpha, n, req.theta);
            main = goldbach_short_main_term(n, req.theta, limit);
        } else if (req.task == "pi12-short") {
            c = count_twin12_short(n, req.theta);
            main = twin_short_main_term(static_cast<double>(n), req.theta, limit);
        } else {
            throw Error(ErrorKind::InvalidInput, "unknown task '" + req.task + "'");
        }
        t.add({static_cast<std::int64_t>(n), static_cast<std::int64_t>(c), main.mid(),
               static_cast<double>(c) / main.mid()});
    }
    if (req.task.find("short") != std::string::npos) {
        r.field("theta", req.theta);
        if (req.task[0] == 'D')
            r.field("alpha", req.alpha);
    }
    if (req.n.size() == 1)
        r.field("count", std::get<std::int64_t>(t.rows[0][1]));
    r.tables.push_back(std::move(t));
    return r;
}

Report run_verify_weights(const RunConfig&, int max_omega, double kappa, double sigma)
{
    WeightVerifySettings s;
    s.kappa = kappa;
    s.sigma = sigma;
    const auto rep = verify_weight_cases(max_omega, s);

    Report r;
    r.command = "verify-weights";
    r.field("max_omega", static_cast<std::int64_t>(max_omega));
    r.field("kappa", kappa);
    r.field("sigma", sigma);
    r.field("cells", static_cast<std::int64_t>(rep.cases.size()));
    r.field("feasible_cells", static_cast<std::int64_t>(rep.feasible_cases()));
    r.field("samples", static_cast<std::int64_t>(rep.samples));
    r.field("counterexamples", static_cast<std::int64_t>(rep.counterexamples.size()));

    Table t{"cases", {"omega", "small", "split", "feasible", "s1", "s2", "s3", "s4", "delta", "delta_star", "reason"}, {}};
    for (const auto& c : rep.cases) {
        if (c.feasible)
            t.add({std::int64_t{c.omega}, std::int64_t{c.small}, c.split, true, std::int64_t{c.counts.s1},
                   std::int64_t{c.counts.s2}, std::int64_t{c.counts.s3}, std::int64_t{c.counts.s4}, c.counts.delta,
                   c.counts.delta_star, blank()});
        else
            t.add({std::int64_t{c.omega}, std::int64_t{c.small}, c.split, false, blank(), blank(), blank(), blank(),
                   blank(), blank(), c.reason});
    }
    r.tables.push_back(std::move(t));
    r.check("counterexamples", static_cast<double>(rep.counterexamples.size()), 0.0, 0.0);
    return r;
}

Report run_optimize(const RunConfig& cfg, double s, RowKind kind, Level level)
{
    const OmegaMode mode = cfg.omega_mode.value_or(OmegaMode::Bound2);
    BuchstabSettings settings = cfg.buchstab;
    settings.mode = mode;
    OptimizeSettings opt;
    opt.search = settings;
    const auto res = optimize_row(s, kind, level, default_buchstab_table(), settings, opt);

    Report r;
    r.command = "optimize";
    r.field("kind", std::string(to_string(kind)));
    r.field("level", std::string(to_string(level)));
    add_settings(r, cfg, mode);
    r.field("s", res.params.s);
    r.field("s_prime", res.params.s_prime);
    if (kind == RowKind::Psi2) {
        r.field("kappa1", res.params.kappa1);
        r.field("kappa2", res.params.kappa2);
        r.field("kappa3", res.params.kappa3);
    }
    r.field("psi", res.psi.value);
    r.field("main_term", res.psi.main_term);
    r.field("buchstab_sum", res.psi.buchstab_sum);
    r.field("max_refine_difference", res.psi.max_refine_difference);
    r.field("evaluations", static_cast<std::int64_t>(res.evaluations));
    return r;
}

} // namespace sieveconst::cli
