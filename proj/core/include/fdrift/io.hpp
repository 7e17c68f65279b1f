#pragma once

#include "fdrift/smoother.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fdrift {

/// Parsed but unprocessed table: one record per curve, grid in file units.
struct RawTable {
    std::vector<std::string> labels;
    std::vector<double> grid;
    std::vector<std::vector<std::optional<double>>> rows;
};

enum class CsvLayout {
    Wide,  ///< header `label,s1,s2,...`, one row per curve
    Long,  ///< `label,s,value` triples, header optional
};

/// Wide layout. Empty cells (and NA/NaN) are missing. Throws
/// Error(ParseError) with the 1-based line and column of a malformed cell,
/// Error(NonMonotoneGrid) when the header grid is not strictly increasing.
[[nodiscard]] RawTable parse_wide_csv(std::string_view text);

/// Long layout. Curves keep the order of first appearance; the grid is the
/// sorted union of all s values and absent pairs are missing.
[[nodiscard]] RawTable parse_long_csv(std::string_view text);

struct LoadReport {
    std::size_t dropped_rows = 0;
    std::vector<std::string> dropped_labels;
    std::size_t filled_cells = 0;
    double grid_min = 0.0;  ///< original grid end points before rescaling
    double grid_max = 1.0;
};

struct LoadedSeries {
    FunctionalSeries series;
    LoadReport report;
};

/// Drops rows whose missing fraction exceeds max_missing (strictly), fills
/// the remaining gaps with a natural cubic spline along the row and maps the
/// grid affinely onto [0,1]. Throws Error(TooFewRows) when fewer than two
/// rows survive.
[[nodiscard]] LoadedSeries prepare_series(const RawTable& table, double max_missing = 0.10);

[[nodiscard]] LoadedSeries load_csv(const std::filesystem::path& path, CsvLayout layout = CsvLayout::Wide,
                                    double max_missing = 0.10);

/// Wide CSV that load_csv reads back into an identical series. Missing
/// labels are written as the 1-based row number.
[[nodiscard]] std::string series_to_csv(const FunctionalSeries& series);

[[nodiscard]] std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace fdrift
