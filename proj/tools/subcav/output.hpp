#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace subcav::cli {

using Cell = std::variant<double, std::string>;

struct Table
{
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// Header fields shared by the CSV comment block and the JSON envelope.
struct Meta
{
    std::string tool = "subcav-cli";
    std::string version;
    std::string command;
    std::string config_hash;
    std::string units;
    /// extra key=value lines, written in order
    std::vector<std::pair<std::string, std::string>> extra;
};

/// At most 12 significant digits, trailing zeros dropped, -0 written as 0.
std::string format_number(double v);

void write_csv(std::ostream& out, const Meta& meta, const Table& table);
void write_json(std::ostream& out, const Meta& meta, const Table& table);

}  // namespace subcav::cli
