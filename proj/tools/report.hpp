#pragma once

// Reports are a list of named key/value fields, tables and checks, rendered as
// json, csv or markdown. Floats always print with 9 significant digits so the
// same run gives byte-identical output.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "config.hpp"

namespace sieveconst::cli {

using Cell = std::variant<std::string, double, std::int64_t, bool>;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

// value compared with a reference; passes when |value - reference| <= tolerance
struct Check {
    std::string name;
    double value = 0.0;
    double reference = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct Report {
    std::string command;
    std::vector<std::pair<std::string, Cell>> fields;
    std::vector<Table> tables;
    std::vector<Check> checks;

    void field(std::string key, Cell value) { fields.emplace_back(std::move(key), std::move(value)); }
    void check(std::string name, double value, double reference, double tolerance);
    // records a one-sided check: value >= bound
    void check_at_least(std::string name, double value, double bound);
    bool passed() const noexcept;
};

std::string format_number(double v);
std::string render(const Report& r, Format f);

} // namespace sieveconst::cli
