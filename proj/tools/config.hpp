#pragma once

// Run configuration: a flat key = value file with [sections].
//
//   [run]
//   omega_mode = paper-bound-2
//   [goldbach12]
//   kappa2 = 29/250
//
// Unknown sections or keys are rejected.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sieveconst/chenweights.hpp"
#include "sieveconst/discretization.hpp"

namespace sieveconst::cli {

enum class Format { Json, Csv, Markdown };

std::string_view to_string(Format f) noexcept;
Format parse_format(std::string_view text);

struct RunConfig {
    std::optional<OmegaMode> omega_mode; // unset: each pipeline keeps its own default
    Format format = Format::Json;
    std::string output;                  // empty: stdout

    BuchstabSettings buchstab{};
    double cell_tol = 1e-12;
    WeightSettings weights{};

    WeightParams goldbach12 = WeightParams::goldbach_default();
    WeightParams twin12 = WeightParams::twin_default();
    Rational short_theta = Rational(971, 1000);
    std::optional<Rational> short_kappa2, short_sigma2, short_sigma1;

    std::optional<std::vector<RowParams>> goldbach_rows;
    std::optional<std::vector<RowParams>> twin_rows;

    std::uint64_t product_limit = 10'000'000;

    // "section.key" for every key that was set
    std::set<std::string> touched;

    bool touched_any(std::string_view prefix) const;
    WeightParams short_params(Rational theta) const;
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

} // namespace sieveconst::cli
