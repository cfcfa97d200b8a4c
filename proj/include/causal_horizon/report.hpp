#pragma once

#include <json.hpp>
#include <string>
#include <variant>
#include <vector>

namespace ch {

using json = nlohmann::ordered_json;

// Empty cells serialize as "" in CSV and null in JSON.
using Cell = std::variant<std::monostate, double, std::string>;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
    std::size_t column(const std::string& name) const;
    // Non-numeric cells read as nan, except the strings "inf" and "-inf".
    std::vector<double> numeric_column(const std::string& name) const;
};

// An (x, y) series drawn as one SVG polyline; group_by splits rows by a label column.
struct PlotSpec {
    std::string table;
    std::string x;
    std::string y;
    std::string group_by;
    std::string title;
};

struct ExperimentReport {
    std::string kind;
    json parameters = json::object();
    std::vector<Table> tables;
    json statistics = json::object();
    json provenance = json::object();
    std::vector<PlotSpec> plots;

    const Table& table(const std::string& name) const;
};

}  // namespace ch
