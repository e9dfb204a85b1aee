#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "json.hpp"

namespace sieveconst::cli {

void Report::check(std::string name, double value, double reference, double tolerance)
{
    checks.push_back({std::move(name), value, reference, tolerance, std::abs(value - reference) <= tolerance});
}

void Report::check_at_least(std::string name, double value, double bound)
{
    checks.push_back({std::move(name), value, bound, 0.0, value >= bound});
}

bool Report::passed() const noexcept
{
    for (const auto& c : checks)
        if (!c.pass)
            return false;
    return true;
}

std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

namespace {

using json = nlohmann::ordered_json;

json to_json(const Cell& c)
{
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v))
                    return format_number(v);
                // round-trip through the 9-digit text so json and csv agree
                return std::strtod(format_number(v).c_str(), nullptr);
            } else {
                return v;
            }
        },
        c);
}

std::string to_text(const Cell& c)
{
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>)
                return format_number(v);
            else if constexpr (std::is_same_v<T, bool>)
                return v ? "true" : "false";
            else if constexpr (std::is_same_v<T, std::int64_t>)
                return std::to_string(v);
            else
                return v;
        },
        c);
}

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"')
            out += '"';
        out += ch;
    }
    return out + "\"";
}

Table checks_table(const Report& r)
{
    Table t{"checks", {"name", "value", "reference", "tolerance", "pass"}, {}};
    for (const auto& c : r.checks)
        t.add({c.name, c.value, c.reference, c.tolerance, c.pass});
    return t;
}

std::string render_json(const Report& r)
{
    json out;
    out["command"] = r.command;
    for (const auto& [k, v] : r.fields)
        out[k] = to_json(v);
    json tables = json::object();
    for (const auto& t : r.tables) {
        json rows = json::array();
        for (const auto& row : t.rows) {
            json obj;
            for (std::size_t i = 0; i < t.columns.size(); ++i)
                obj[t.columns[i]] = to_json(row.at(i));
            rows.push_back(std::move(obj));
        }
        tables[t.name] = std::move(rows);
    }
    out["tables"] = std::move(tables);
    json checks = json::array();
    for (const auto& c : r.checks) {
        json obj;
        obj["name"] = c.name;
        obj["value"] = to_json(c.value);
        obj["reference"] = to_json(c.reference);
        obj["tolerance"] = to_json(c.tolerance);
        obj["pass"] = c.pass;
        checks.push_back(std::move(obj));
    }
    out["checks"] = std::move(checks);
    out["status"] = r.passed() ? "pass" : "fail";
    return out.dump(2) + "\n";
}

void csv_table(std::ostringstream& os, const Table& t)
{
    os << "# " << t.name << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << (i ? "," : "") << csv_escape(t.columns[i]);
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << csv_escape(to_text(row[i]));
        os << "\n";
    }
}

void md_table(std::ostringstream& os, const Table& t)
{
    os << "## " << t.name << "\n\n|";
    for (const auto& c : t.columns)
        os << " " << c << " |";
    os << "\n|";
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << "---|";
    os << "\n";
    for (const auto& row : t.rows) {
        os << "|";
        for (const auto& c : row)
            os << " " << to_text(c) << " |";
        os << "\n";
    }
    os << "\n";
}

Table fields_table(const Report& r)
{
    Table t{"summary", {"key", "value"}, {}};
    t.add({std::string("command"), r.command});
    for (const auto& [k, v] : r.fields)
        t.add({k, v});
    t.add({std::string("status"), std::string(r.passed() ? "pass" : "fail")});
    return t;
}

} // namespace

std::string render(const Report& r, Format f)
{
    if (f == Format::Json)
        return render_json(r);
    std::ostringstream os;
    std::vector<Table> all{fields_table(r)};
    all.insert(all.end(), r.tables.begin(), r.tables.end());
    if (!r.checks.empty())
        all.push_back(checks_table(r));
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (f == Format::Csv) {
            if (i)
                os << "\n";
            csv_table(os, all[i]);
        } else {
            md_table(os, all[i]);
        }
    }
    return os.str();
}

} // namespace sieveconst::cli
