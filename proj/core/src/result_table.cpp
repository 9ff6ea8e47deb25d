#include "qdnls/result_table.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qdnls {

std::string format_cell(const Cell& cell) {
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&cell)) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", *d);
        return buf;
    }
    return std::get<std::string>(cell);
}

std::string csv_escape(const std::string& text) {
    if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string fnv1a_hex(std::string_view text) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(text)));
    return buf;
}

ResultTable::ResultTable(std::vector<std::string> schema, Provenance provenance)
    : schema_(std::move(schema)), provenance_(std::move(provenance)) {
    if (schema_.empty())
        throw std::invalid_argument("ResultTable: schema must not be empty");
    if (provenance_.config_hash.empty())
        throw std::invalid_argument("ResultTable: provenance hash must not be empty");
}

void ResultTable::set_provenance(Provenance provenance) {
    if (provenance.config_hash.empty())
        throw std::invalid_argument("ResultTable: provenance hash must not be empty");
    provenance_ = std::move(provenance);
}

const std::vector<Cell>& ResultTable::row(std::size_t index) const {
    if (index >= rows_.size()) throw std::out_of_range("ResultTable: row index");
    return rows_[index];
}

std::size_t ResultTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < schema_.size(); ++i)
        if (schema_[i] == name) return i;
    throw std::out_of_range("ResultTable: no column named " + name);
}

const Cell& ResultTable::at(std::size_t row_index, const std::string& column) const {
    return row(row_index)[column_index(column)];
}

double ResultTable::numeric_at(std::size_t row_index, const std::string& column) const {
    const Cell& cell = at(row_index, column);
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return static_cast<double>(*i);
    if (const auto* d = std::get_if<double>(&cell)) return *d;
    throw std::invalid_argument("ResultTable: column " + column + " is not numeric");
}

void ResultTable::add_row(std::vector<Cell> cells) {
    if (cells.size() != schema_.size())
        throw std::invalid_argument("ResultTable: row arity does not match schema");
    rows_.push_back(std::move(cells));
}

void ResultTable::write_csv(std::ostream& out) const {
    for (std::size_t i = 0; i < schema_.size(); ++i) {
        if (i) out << ',';
        out << csv_escape(schema_[i]);
    }
    out << '\n';
    for (const auto& r : rows_) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) out << ',';
            out << csv_escape(format_cell(r[i]));
        }
        out << '\n';
    }
}

std::string ResultTable::to_csv() const {
    std::ostringstream out;
    write_csv(out);
    return out.str();
}

PlotSeries plot_series(const ResultTable& table, const std::string& x_column,
                       const std::string& y_column, PlotTransform transform) {
    PlotSeries series;
    if (table.row_count() == 0) {
        series.warnings.push_back("plot series is empty: table has no rows");
        return series;
    }
    for (std::size_t r = 0; r < table.row_count(); ++r) {
        double x = table.numeric_at(r, x_column);
        double y = table.numeric_at(r, y_column);
        if (transform == PlotTransform::log_log) {
            if (!(x > 0.0) || !(y > 0.0)) {
                series.warnings.push_back("dropped nonpositive point at row " +
                                          std::to_string(r));
                continue;
            }
            x = std::log(x);
            y = std::log(y);
        }
        series.points.emplace_back(x, y);
    }
    return series;
}

void emit_plot_data(const PlotSeries& series, std::ostream& out) {
    char buf[160];
    for (const auto& [x, y] : series.points) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", x, y);
        out << buf;
    }
}

double fit_slope(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2)
        throw std::invalid_argument("fit_slope: need at least two points");
    double sx = 0, sy = 0;
    for (const auto& [x, y] : points) {
        sx += x;
        sy += y;
    }
    const double mx = sx / static_cast<double>(points.size());
    const double my = sy / static_cast<double>(points.size());
    double sxx = 0, sxy = 0;
    for (const auto& [x, y] : points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_slope: degenerate abscissae");
    return sxy / sxx;
}

}  // namespace qdnls
