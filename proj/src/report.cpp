#include "causal_horizon/report.hpp"

#include <cmath>

#include "causal_horizon/errors.hpp"

namespace ch {

void Table::add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw DomainError("table " + name + ": row width mismatch");
    rows.push_back(std::move(row));
}

std::size_t Table::column(const std::string& c) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == c) return i;
    throw DomainError("table " + name + ": no column " + c);
}

std::vector<double> Table::numeric_column(const std::string& c) const {
    std::size_t j = column(c);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        if (const double* v = std::get_if<double>(&r[j])) out.push_back(*v);
        else if (const auto* s = std::get_if<std::string>(&r[j]); s && (*s == "inf" || *s == "-inf"))
            out.push_back(*s == "inf" ? INFINITY : -INFINITY);
        else out.push_back(NAN);
    }
    return out;
}

const Table& ExperimentReport::table(const std::string& name) const {
    for (const auto& t : tables)
        if (t.name == name) return t;
    throw DomainError("report " + kind + ": no table " + name);
}

}  // namespace ch
