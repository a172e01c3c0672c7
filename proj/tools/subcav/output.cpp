#include "subcav/output.hpp"

#include <charconv>
#include <cmath>

#include "json.hpp"

namespace subcav::cli {

std::string format_number(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    if (v == 0.0) {
        return "0";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

namespace {

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string q = "\"";
    for (char c : s) {
        q += c;
        if (c == '"') {
            q += '"';
        }
    }
    return q + "\"";
}

std::string render(const Cell& c)
{
    if (const auto* d = std::get_if<double>(&c)) {
        return format_number(*d);
    }
    return csv_field(std::get<std::string>(c));
}

}  // namespace

void write_csv(std::ostream& out, const Meta& meta, const Table& table)
{
    out << "# tool: " << meta.tool << "\n";
    out << "# version: " << meta.version << "\n";
    out << "# command: " << meta.command << "\n";
    out << "# config_hash: fnv1a64:" << meta.config_hash << "\n";
    out << "# units: " << meta.units << "\n";
    for (const auto& [k, v] : meta.extra) {
        out << "# " << k << ": " << v << "\n";
    }
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out << (i ? "," : "") << csv_field(table.columns[i]);
    }
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << render(row[i]);
        }
        out << "\n";
    }
}

void write_json(std::ostream& out, const Meta& meta, const Table& table)
{
    // ordered_json keeps the documented field order
    nlohmann::ordered_json doc;
    doc["tool"] = meta.tool;
    doc["version"] = meta.version;
    doc["command"] = meta.command;
    doc["config_hash"] = "fnv1a64:" + meta.config_hash;
    doc["units"] = meta.units;
    for (const auto& [k, v] : meta.extra) {
        doc["meta"][k] = v;
    }
    doc["columns"] = table.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        auto r = nlohmann::ordered_json::array();
        for (const auto& c : row) {
            if (const auto* d = std::get_if<double>(&c)) {
                // numbers pass through the same 12-digit rounding as the CSV
                if (std::isfinite(*d)) {
                    r.push_back(std::stod(format_number(*d)));
                } else {
                    r.push_back(nullptr);
                }
            } else {
                r.push_back(std::get<std::string>(c));
            }
        }
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << "\n";
}

}  // namespace subcav::cli
