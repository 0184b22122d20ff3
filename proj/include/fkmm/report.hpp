#pragma once

#include "fkmm/invariants.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace fkmm {

nlohmann::json to_json(const InvariantReport& r);
InvariantReport report_from_json(const nlohmann::json& j);

// Human readable report; the Z2 line reads "Z2 index: -1".
std::string render_text(const InvariantReport& r);

// Single-row CSV with a header: model,space,grid,min_gap,<indices>,<c1 columns>,class
std::string render_csv(const InvariantReport& r);

// Quotes a CSV field when it contains a comma, a quote or a newline.
std::string csv_field(const std::string& s);

struct SweepRange {
    double start = 0, stop = 0, step = 1;

    // "a:b:step" with step > 0; a > b gives an empty range.
    static SweepRange parse(const std::string& text);
    std::vector<double> values() const;
};

struct SweepRow {
    double value = 0;
    double gap = 0;  // minimum band gap 2 sqrt(Q) over the grid
    bool available = false;
    std::map<std::string, int> indices;  // by column name
    std::string note;                    // why the indices are NA
};

// Index columns for a grid: Z2 names on spaces with isolated fixed points, then c1_<cycle>.
std::vector<std::string> sweep_columns(const Grid& grid);

// Rows in ascending parameter order. Gap-closed and inadmissible points give NA rows, not errors.
std::vector<SweepRow> sweep(const CliffordModel& model, const std::string& param, const SweepRange& range,
                            std::shared_ptr<const Grid> grid);

std::string sweep_csv(const std::string& param, const std::vector<std::string>& columns, const std::vector<SweepRow>& rows);
nlohmann::json sweep_json(const std::string& param, const std::vector<std::string>& columns, const std::vector<SweepRow>& rows);

}  // namespace fkmm
