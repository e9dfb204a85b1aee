#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "report.hpp"

namespace sieveconst::cli {

Report run_tables(const RunConfig& cfg, Problem problem);
Report run_theorem(const RunConfig& cfg, int which, std::optional<double> theta);

struct SpecialRequest {
    std::string fn;
    std::optional<double> at;
    double from = 1.0, to = 6.0, step = 0.01; // grid dump when at is unset
};
Report run_special(const RunConfig& cfg, const SpecialRequest& req);

struct EmpiricalRequest {
    std::string task;
    std::vector<std::uint64_t> n;
    double alpha = 0.5;
    double theta = 0.971;
};
Report run_empirical(const RunConfig& cfg, const EmpiricalRequest& req);

Report run_verify_weights(const RunConfig& cfg, int max_omega, double kappa, double sigma);

Report run_optimize(const RunConfig& cfg, double s, RowKind kind, Level level);

} // namespace sieveconst::cli
