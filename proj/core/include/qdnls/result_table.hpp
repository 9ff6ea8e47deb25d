#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace qdnls {

// One table cell. Integers and doubles stay typed so CSV output can format
// them distinctly (doubles round-trip via %.17g).
using Cell = std::variant<std::int64_t, double, std::string>;

std::string format_cell(const Cell& cell);

// Quotes a CSV cell when it contains a comma, quote, or line break.
std::string csv_escape(const std::string& text);

std::uint64_t fnv1a64(std::string_view text);
std::string fnv1a_hex(std::string_view text);

struct Provenance {
    std::string config_hash;
    std::uint64_t seed = 0;
};

// Ordered-schema record table for experiment output. Every row must match
// the schema arity; provenance is required at construction so emitted CSVs
// can always be traced back to a config + seed.
class ResultTable {
public:
    ResultTable(std::vector<std::string> schema, Provenance provenance);

    const std::vector<std::string>& schema() const { return schema_; }
    const Provenance& provenance() const { return provenance_; }
    void set_provenance(Provenance provenance);

    std::size_t row_count() const { return rows_.size(); }
    const std::vector<Cell>& row(std::size_t index) const;

    std::size_t column_index(const std::string& name) const;
    const Cell& at(std::size_t row, const std::string& column) const;
    double numeric_at(std::size_t row, const std::string& column) const;

    void add_row(std::vector<Cell> cells);

    void write_csv(std::ostream& out) const;
    std::string to_csv() const;

private:
    std::vector<std::string> schema_;
    Provenance provenance_;
    std::vector<std::vector<Cell>> rows_;
};

enum class PlotTransform { linear, log_log };

// Two-column series extracted from a table. Under log-log, points with a
// nonpositive coordinate are dropped and each drop adds one warning.
struct PlotSeries {
    std::vector<std::pair<double, double>> points;
    std::vector<std::string> warnings;
};

PlotSeries plot_series(const ResultTable& table, const std::string& x_column,
                       const std::string& y_column, PlotTransform transform);

// Writes "x y" lines (%.17g) for consumption by external plotting tools.
void emit_plot_data(const PlotSeries& series, std::ostream& out);

// Least-squares slope of y against x. Used for log-log scaling fits.
double fit_slope(const std::vector<std::pair<double, double>>& points);

}  // namespace qdnls
