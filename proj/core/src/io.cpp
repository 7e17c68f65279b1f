#include "fdrift/io.hpp"

#include "fdrift/error.hpp"
#include "fdrift/report.hpp"
#include "fdrift/spline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace fdrift {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::string location(std::size_t line, std::size_t column) {
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

// Splits one line on commas. Double-quoted fields may contain commas and
// doubled quotes.
std::vector<std::string> split_fields(std::string_view line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current.push_back(c);
            }
        } else if (c == '"' && trim(current).empty()) {
            current.clear();
            quoted = true;
            was_quoted = true;
        } else if (c == ',') {
            fields.push_back(was_quoted ? current : std::string(trim(current)));
            current.clear();
            was_quoted = false;
        } else {
            current.push_back(c);
        }
    }
    if (quoted) throw Error(ErrorKind::ParseError, "unterminated quote at " + location(line_no, fields.size() + 1));
    fields.push_back(was_quoted ? current : std::string(trim(current)));
    return fields;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = text.find('\n', start);
        const std::string_view line = text.substr(start, end == std::string_view::npos ? text.npos : end - start);
        lines.push_back(line);
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return lines;
}

bool is_missing_token(std::string_view s) {
    return s.empty() || s == "NA" || s == "na" || s == "NaN" || s == "nan";
}

std::optional<double> parse_number(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) return std::nullopt;
    return value;
}

double require_number(std::string_view s, std::size_t line, std::size_t column) {
    const auto v = parse_number(s);
    if (!v) throw Error(ErrorKind::ParseError, "malformed number '" + std::string(s) + "' at " + location(line, column));
    return *v;
}

void check_grid(const std::vector<double>& grid) {
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw Error(ErrorKind::NonMonotoneGrid, "grid values must increase strictly (position " +
                                                        std::to_string(i + 1) + ")");
        }
    }
}

}  // namespace

RawTable parse_wide_csv(std::string_view text) {
    const auto lines = split_lines(text);
    RawTable table;
    std::size_t line_no = 0;
    bool have_header = false;
    for (const auto raw : lines) {
        ++line_no;
        if (trim(raw).empty()) continue;
        const auto fields = split_fields(raw, line_no);
        if (!have_header) {
            if (fields.size() < 3) {
                throw Error(ErrorKind::ParseError, "header needs a label column and at least two grid points");
            }
            for (std::size_t c = 1; c < fields.size(); ++c) {
                table.grid.push_back(require_number(fields[c], line_no, c + 1));
            }
            check_grid(table.grid);
            have_header = true;
            continue;
        }
        if (fields.size() != table.grid.size() + 1) {
            throw Error(ErrorKind::ParseError, "expected " + std::to_string(table.grid.size() + 1) + " fields, found " +
                                                   std::to_string(fields.size()) + " at " + location(line_no, 1));
        }
        table.labels.push_back(fields[0]);
        std::vector<std::optional<double>> row;
        row.reserve(table.grid.size());
        for (std::size_t c = 1; c < fields.size(); ++c) {
            if (is_missing_token(fields[c])) {
                row.emplace_back(std::nullopt);
            } else {
                row.emplace_back(require_number(fields[c], line_no, c + 1));
            }
        }
        table.rows.push_back(std::move(row));
    }
    if (!have_header) throw Error(ErrorKind::ParseError, "empty input");
    return table;
}

RawTable parse_long_csv(std::string_view text) {
    const auto lines = split_lines(text);
    struct Cell {
        std::size_t curve;
        double s;
        std::optional<double> value;
    };
    std::vector<Cell> cells;
    std::vector<std::string> labels;
    std::map<std::string, std::size_t> index;
    std::set<std::pair<std::size_t, double>> seen;
    std::size_t line_no = 0;
    bool first = true;
    for (const auto raw : lines) {
        ++line_no;
        if (trim(raw).empty()) continue;
        const auto fields = split_fields(raw, line_no);
        if (fields.size() != 3) {
            throw Error(ErrorKind::ParseError, "expected label,s,value at " + location(line_no, 1));
        }
        if (first) {
            first = false;
            if (!parse_number(fields[1])) continue;  // header line
        }
        const double s = require_number(fields[1], line_no, 2);
        std::optional<double> value;
        if (!is_missing_token(fields[2])) value = require_number(fields[2], line_no, 3);
        auto [it, inserted] = index.try_emplace(fields[0], labels.size());
        if (inserted) labels.push_back(fields[0]);
        if (!seen.emplace(it->second, s).second) {
            throw Error(ErrorKind::ParseError, "duplicate entry for curve '" + fields[0] + "' at " + location(line_no, 2));
        }
        cells.push_back({it->second, s, value});
    }
    if (labels.empty()) throw Error(ErrorKind::ParseError, "empty input");

    RawTable table;
    table.labels = labels;
    for (const auto& c : cells) table.grid.push_back(c.s);
    std::sort(table.grid.begin(), table.grid.end());
    table.grid.erase(std::unique(table.grid.begin(), table.grid.end()), table.grid.end());
    if (table.grid.size() < 2) throw Error(ErrorKind::NonMonotoneGrid, "long input needs at least two grid values");
    table.rows.assign(labels.size(), std::vector<std::optional<double>>(table.grid.size()));
    for (const auto& c : cells) {
        const auto pos = static_cast<std::size_t>(
            std::lower_bound(table.grid.begin(), table.grid.end(), c.s) - table.grid.begin());
        table.rows[c.curve][pos] = c.value;
    }
    return table;
}

LoadedSeries prepare_series(const RawTable& table, double max_missing) {
    check_grid(table.grid);
    const std::size_t N = table.grid.size();
    if (N < 2) throw Error(ErrorKind::NonMonotoneGrid, "need at least two grid points");

    LoadReport report;
    report.grid_min = table.grid.front();
    report.grid_max = table.grid.back();
    std::vector<double> grid(N);
    const double span = report.grid_max - report.grid_min;
    for (std::size_t i = 0; i < N; ++i) grid[i] = (table.grid[i] - report.grid_min) / span;
    grid.front() = 0.0;
    grid.back() = 1.0;

    std::vector<std::vector<double>> kept;
    std::vector<std::string> labels;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const std::size_t missing =
            static_cast<std::size_t>(std::count(row.begin(), row.end(), std::optional<double>{}));
        if (static_cast<double>(missing) > max_missing * static_cast<double>(N) || missing == N) {
            ++report.dropped_rows;
            report.dropped_labels.push_back(table.labels[r]);
            continue;
        }
        std::vector<double> values(N);
        if (missing > 0) {
            std::vector<double> xs, ys;
            for (std::size_t i = 0; i < N; ++i) {
                if (row[i]) {
                    xs.push_back(grid[i]);
                    ys.push_back(*row[i]);
                }
            }
            const NaturalSpline spline(xs, ys);
            for (std::size_t i = 0; i < N; ++i) values[i] = row[i] ? *row[i] : spline(grid[i]);
            report.filled_cells += missing;
        } else {
            for (std::size_t i = 0; i < N; ++i) values[i] = *row[i];
        }
        kept.push_back(std::move(values));
        labels.push_back(table.labels[r]);
    }
    if (kept.size() < 2) {
        throw Error(ErrorKind::TooFewRows, "only " + std::to_string(kept.size()) +
                                               " usable rows remain after dropping incomplete rows");
    }
    Matrix m(kept.size(), N);
    for (std::size_t r = 0; r < kept.size(); ++r) std::copy(kept[r].begin(), kept[r].end(), m.row(r).begin());
    return {FunctionalSeries(std::move(m), std::move(grid), std::move(labels)), report};
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw Error(ErrorKind::IoError, "write failed for " + path.string());
}

LoadedSeries load_csv(const std::filesystem::path& path, CsvLayout layout, double max_missing) {
    const std::string text = read_text(path);
    const RawTable table = layout == CsvLayout::Wide ? parse_wide_csv(text) : parse_long_csv(text);
    return prepare_series(table, max_missing);
}

std::string series_to_csv(const FunctionalSeries& series) {
    auto quote = [](const std::string& s) {
        if (s.find_first_of(",\"") == std::string::npos && trim(s) == s) return s;
        std::string out = "\"";
        for (char c : s) {
            if (c == '"') out.push_back('"');
            out.push_back(c);
        }
        return out + "\"";
    };
    std::string out = "label";
    for (double s : series.s_grid()) out += "," + format_number(s);
    out += "\n";
    for (std::size_t r = 0; r < series.curves(); ++r) {
        const bool has_label = r < series.labels().size() && !series.labels()[r].empty();
        out += has_label ? quote(series.labels()[r]) : std::to_string(r + 1);
        for (double v : series.values().row(r)) out += "," + format_number(v);
        out += "\n";
    }
    return out;
}

}  // namespace fdrift
