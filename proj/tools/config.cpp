#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "sieveconst/error.hpp"

namespace sieveconst::cli {

std::string_view to_string(Format f) noexcept
{
    switch (f) {
    case Format::Json: return "json";
    case Format::Csv: return "csv";
    case Format::Markdown: return "md";
    }
    return "json";
}

Format parse_format(std::string_view text)
{
    if (text == "json")
        return Format::Json;
    if (text == "csv")
        return Format::Csv;
    if (text == "md" || text == "markdown")
        return Format::Markdown;
    throw Error(ErrorKind::InvalidInput, "unknown format '" + std::string(text) + "'");
}

bool RunConfig::touched_any(std::string_view prefix) const
{
    for (const auto& k : touched)
        if (std::string_view(k).substr(0, prefix.size()) == prefix)
            return true;
    return false;
}

WeightParams RunConfig::short_params(Rational theta) const
{
    auto p = WeightParams::short_interval_default(theta);
    if (short_kappa2)
        p.kappa2 = *short_kappa2;
    if (short_sigma2)
        p.sigma2 = *short_sigma2;
    if (short_sigma1)
        p.sigma1 = *short_sigma1;
    return p;
}

namespace {

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(std::size_t line, const std::string& msg)
{
    throw Error(ErrorKind::InvalidInput, "config line " + std::to_string(line) + ": " + msg);
}

// fractions like 1/3 go through Rational, anything else (1e-11, 0.002) is a plain double
double number(std::string_view v)
{
    if (v.find('/') != std::string_view::npos)
        return Rational::parse(v).value();
    double x = 0.0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size() || !std::isfinite(x))
        throw Error(ErrorKind::InvalidInput, "expected a number, got '" + std::string(v) + "'");
    return x;
}

std::size_t count(std::string_view v)
{
    std::size_t n = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
    if (ec != std::errc() || p != v.data() + v.size())
        throw Error(ErrorKind::InvalidInput, "expected a non-negative integer, got '" + std::string(v) + "'");
    return n;
}

bool boolean(std::string_view v)
{
    if (v == "true" || v == "1" || v == "yes")
        return true;
    if (v == "false" || v == "0" || v == "no")
        return false;
    throw Error(ErrorKind::InvalidInput, "expected true or false, got '" + std::string(v) + "'");
}

// "s, s', k1, k2, k3" or "s, s'"
RowParams row(std::string_view v, Level level)
{
    std::vector<double> xs;
    while (!v.empty()) {
        const auto comma = v.find(',');
        xs.push_back(number(trim(v.substr(0, comma))));
        if (comma == std::string_view::npos)
            break;
        v.remove_prefix(comma + 1);
    }
    if (xs.size() == 2)
        return RowParams::psi1(xs[0], xs[1], level);
    if (xs.size() == 5)
        return RowParams::psi2(xs[0], xs[1], xs[2], xs[3], xs[4], level);
    throw Error(ErrorKind::InvalidInput, "a row needs 2 (psi1) or 5 (psi2) values");
}

using Setter = std::function<void(RunConfig&, std::string_view)>;

void weight_keys(std::map<std::string, Setter>& keys, const std::string& section, WeightParams RunConfig::*field)
{
    keys[section + ".kappa1"] = [field](RunConfig& c, std::string_view v) { (c.*field).kappa1 = Rational::parse(v); };
    keys[section + ".kappa2"] = [field](RunConfig& c, std::string_view v) { (c.*field).kappa2 = Rational::parse(v); };
    keys[section + ".rho"] = [field](RunConfig& c, std::string_view v) { (c.*field).rho = Rational::parse(v); };
    keys[section + ".sigma2"] = [field](RunConfig& c, std::string_view v) { (c.*field).sigma2 = Rational::parse(v); };
    keys[section + ".sigma1"] = [field](RunConfig& c, std::string_view v) { (c.*field).sigma1 = Rational::parse(v); };
}

const std::map<std::string, Setter>& setters()
{
    static const auto table = [] {
        std::map<std::string, Setter> k;
        k["run.omega_mode"] = [](RunConfig& c, std::string_view v) { c.omega_mode = parse_omega_mode(v); };
        k["run.format"] = [](RunConfig& c, std::string_view v) { c.format = parse_format(v); };
        k["run.output"] = [](RunConfig& c, std::string_view v) { c.output = std::string(v); };

        k["quadrature.order3"] = [](RunConfig& c, std::string_view v) { c.buchstab.order3 = count(v); };
        k["quadrature.order45"] = [](RunConfig& c, std::string_view v) { c.buchstab.order45 = count(v); };
        k["quadrature.order6"] = [](RunConfig& c, std::string_view v) { c.buchstab.order6 = count(v); };
        k["quadrature.refine_extra"] = [](RunConfig& c, std::string_view v) { c.buchstab.refine_extra = count(v); };
        k["quadrature.refine"] = [](RunConfig& c, std::string_view v) { c.buchstab.refine = boolean(v); };
        k["quadrature.cell_tol"] = [](RunConfig& c, std::string_view v) { c.cell_tol = number(v); };
        k["quadrature.weight_tol"] = [](RunConfig& c, std::string_view v) { c.weights.tol = number(v); };
        k["quadrature.nested_order"] = [](RunConfig& c, std::string_view v) { c.weights.nested_order = count(v); };
        k["quadrature.nested_refine"] = [](RunConfig& c, std::string_view v) { c.weights.nested_refine = count(v); };

        k["phi_scan.phi_min"] = [](RunConfig& c, std::string_view v) { c.buchstab.scan.phi_min = number(v); };
        k["phi_scan.phi_max"] = [](RunConfig& c, std::string_view v) { c.buchstab.scan.phi_max = number(v); };
        k["phi_scan.step"] = [](RunConfig& c, std::string_view v) { c.buchstab.scan.scan_step = number(v); };
        k["phi_scan.high_dim_step"] = [](RunConfig& c, std::string_view v) { c.buchstab.high_dim_step = number(v); };

        weight_keys(k, "goldbach12", &RunConfig::goldbach12);
        weight_keys(k, "twin12", &RunConfig::twin12);
        k["short.theta"] = [](RunConfig& c, std::string_view v) { c.short_theta = Rational::parse(v); };
        k["short.kappa2"] = [](RunConfig& c, std::string_view v) { c.short_kappa2 = Rational::parse(v); };
        k["short.sigma2"] = [](RunConfig& c, std::string_view v) { c.short_sigma2 = Rational::parse(v); };
        k["short.sigma1"] = [](RunConfig& c, std::string_view v) { c.short_sigma1 = Rational::parse(v); };

        k["empirical.product_limit"] = [](RunConfig& c, std::string_view v) { c.product_limit = count(v); };
        return k;
    }();
    return table;
}

// [goldbach.rows] row1 = ..., rows are numbered from 1 without gaps
bool row_key(const std::string& section, std::string_view key, std::string_view value,
             std::map<std::string, std::map<std::size_t, RowParams>>& pending)
{
    if (section != "goldbach.rows" && section != "twin.rows")
        return false;
    if (key.substr(0, 3) != "row")
        return false;
    const std::size_t index = count(key.substr(3));
    const Level level = section == "goldbach.rows" ? Level::Half : Level::FourSevenths;
    if (index == 0 || !pending[section].emplace(index, row(value, level)).second)
        throw Error(ErrorKind::InvalidInput, "bad or repeated row index in " + section);
    return true;
}

} // namespace

RunConfig parse_config(std::string_view text)
{
    RunConfig c;
    std::string section;
    std::map<std::string, std::map<std::size_t, RowParams>> pending;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = trim(raw);
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = trim(line.substr(0, hash));
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                fail(line_no, "unterminated section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            fail(line_no, "expected key = value");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        const std::string full = section + "." + std::string(key);
        try {
            if (row_key(section, key, value, pending)) {
                c.touched.insert(full);
                continue;
            }
            const auto& table = setters();
            const auto it = table.find(full);
            if (it == table.end())
                fail(line_no, "unknown key '" + full + "'");
            if (!c.touched.insert(full).second)
                fail(line_no, "key '" + full + "' given twice");
            it->second(c, value);
        } catch (const Error& e) {
            if (std::string_view(e.what()).find("config line") != std::string_view::npos)
                throw;
            fail(line_no, e.what());
        }
    }
    for (auto& [sec, rows] : pending) {
        std::vector<RowParams> out;
        for (const auto& [index, r] : rows) {
            if (index != out.size() + 1)
                throw Error(ErrorKind::InvalidInput, sec + " rows must be numbered 1, 2, ... without gaps");
            out.push_back(r);
        }
        (sec == "goldbach.rows" ? c.goldbach_rows : c.twin_rows) = std::move(out);
    }
    c.short_params(c.short_theta); // reject unusable rationals early
    return c;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw Error(ErrorKind::InvalidInput, "cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

} // namespace sieveconst::cli
