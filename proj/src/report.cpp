#include "fkmm/report.hpp"

#include "fkmm/errors.hpp"
#include "fkmm/expression.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace fkmm {

namespace {

std::string signed_str(int s) { return s > 0 ? "+1" : "-1"; }

// Z2 names in display order
std::vector<std::string> z2_names(const std::map<std::string, int>& z) {
    std::vector<std::string> out;
    for (const char* k : {"Z2", "strong", "weak1", "weak2", "weak3"})
        if (z.count(k)) out.push_back(k);
    return out;
}

}  // namespace

nlohmann::json to_json(const InvariantReport& r) {
    nlohmann::json j;
    j["model"] = r.model;
    j["space"] = r.space;
    j["grid"] = r.grid;
    j["chern"] = r.chern;
    j["fkm_signs"] = r.fkm_signs;
    j["z2_indices"] = r.z2_indices;
    j["fkmm_class"] = {{"group", r.fkmm_class.group},
                       {"value", r.fkmm_class.value},
                       {"coordinates", r.fkmm_class.coordinates},
                       {"complete", r.fkmm_class.complete}};
    j["diagnostics"] = {{"grid_points", r.grid_points},
                        {"min_gap", r.min_gap},
                        {"max_plaquette_phase", r.max_plaquette_phase},
                        {"max_unitarity_defect", r.max_unitarity_defect}};
    return j;
}

InvariantReport report_from_json(const nlohmann::json& j) {
    try {
        InvariantReport r;
        r.model = j.at("model").get<std::string>();
        r.space = j.at("space").get<std::string>();
        r.grid = j.at("grid").get<std::string>();
        r.chern = j.at("chern").get<std::map<std::string, int>>();
        r.fkm_signs = j.at("fkm_signs").get<std::map<std::string, int>>();
        r.z2_indices = j.at("z2_indices").get<std::map<std::string, int>>();
        const auto& c = j.at("fkmm_class");
        r.fkmm_class.group = c.at("group").get<std::string>();
        r.fkmm_class.value = c.at("value").get<std::string>();
        r.fkmm_class.coordinates = c.at("coordinates").get<std::vector<long long>>();
        r.fkmm_class.complete = c.at("complete").get<bool>();
        const auto& d = j.at("diagnostics");
        r.grid_points = d.at("grid_points").get<std::size_t>();
        r.min_gap = d.at("min_gap").get<double>();
        r.max_plaquette_phase = d.at("max_plaquette_phase").get<double>();
        r.max_unitarity_defect = d.at("max_unitarity_defect").get<double>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::BadArgument, std::string("malformed report: ") + e.what());
    }
}

std::string render_text(const InvariantReport& r) {
    std::ostringstream out;
    out << "model: " << r.model << "\n";
    out << "space: " << r.space << "\n";
    out << "grid: " << r.grid << "\n";
    for (const auto& k : z2_names(r.z2_indices))
        out << (k == "Z2" ? "Z2" : k) << " index: " << signed_str(r.z2_indices.at(k)) << "\n";
    for (const auto& [p, s] : r.fkm_signs) out << "sign at " << p << ": " << signed_str(s) << "\n";
    for (const auto& [c, v] : r.chern) out << "c1 on " << c << ": " << v << "\n";
    if (!r.fkmm_class.group.empty()) {
        out << "FKMM class: " << r.fkmm_class.value << " in " << r.fkmm_class.group;
        if (!r.fkmm_class.complete) out << " (partial)";
        out << "\n";
    }
    out << "min gap: " << format_number(r.min_gap) << " over " << r.grid_points << " points\n";
    out << "max plaquette phase: " << format_number(r.max_plaquette_phase) << "\n";
    out << "max sewing unitarity defect: " << format_number(r.max_unitarity_defect) << "\n";
    return out.str();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string render_csv(const InvariantReport& r) {
    std::ostringstream head, row;
    head << "model,space,grid,min_gap";
    row << csv_field(r.model) << "," << csv_field(r.space) << "," << csv_field(r.grid) << "," << format_number(r.min_gap);
    for (const auto& k : z2_names(r.z2_indices)) {
        head << "," << k;
        row << "," << r.z2_indices.at(k);
    }
    for (const auto& [c, v] : r.chern) {
        head << ",c1_" << c;
        row << "," << v;
    }
    head << ",class\n";
    row << "," << csv_field(r.fkmm_class.value) << "\n";
    return head.str() + row.str();
}

SweepRange SweepRange::parse(const std::string& text) {
    SweepRange r;
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw Error(Errc::BadArgument, "--range must be a:b:step, got '" + text + "'");
    try {
        std::size_t used = 0;
        double* dst[3] = {&r.start, &r.stop, &r.step};
        for (int i = 0; i < 3; ++i) {
            *dst[i] = std::stod(parts[i], &used);
            if (used != parts[i].size()) throw std::invalid_argument(parts[i]);
        }
    } catch (const std::logic_error&) {
        throw Error(Errc::BadArgument, "--range must be a:b:step with numbers, got '" + text + "'");
    }
    if (!(r.step > 0) || !std::isfinite(r.start) || !std::isfinite(r.stop))
        throw Error(Errc::BadArgument, "--range needs finite ends and step > 0, got '" + text + "'");
    return r;
}

std::vector<double> SweepRange::values() const {
    std::vector<double> out;
    if (start > stop) return out;
    const long count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (long i = 0; i < count; ++i) {
        // 12 significant digits keep 0.1 + 0.2 from printing as 0.30000000000000004
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", start + static_cast<double>(i) * step);
        out.push_back(std::stod(buf));
    }
    return out;
}

std::vector<std::string> sweep_columns(const Grid& grid) {
    std::vector<std::string> cols;
    const InvolutiveSpace& s = grid.space();
    if (s.fixed_set().isolated() && s.dimension() >= 2) {
        if (s.dimension() == 3 && s.is_torus())
            cols = {"strong", "weak1", "weak2", "weak3"};
        else
            cols = {"Z2"};
    }
    for (const auto& c : grid.cycles()) cols.push_back("c1_" + cycle_label(grid, c));
    return cols;
}

std::vector<SweepRow> sweep(const CliffordModel& model, const std::string& param, const SweepRange& range,
                            std::shared_ptr<const Grid> grid) {
    model.with_param(param, 0);  // rejects unknown parameters before any work
    const auto columns = sweep_columns(*grid);
    std::vector<SweepRow> rows;
    for (double v : range.values()) {
        SweepRow row;
        row.value = v;
        const CliffordModel m = model.with_param(param, v);
        const GapReport gap = gap_minimum(m, *grid);
        row.gap = 2 * std::sqrt(gap.min_q);
        if (gap.closed()) {
            row.note = "gap closed at " + gap.location;
            rows.push_back(row);
            continue;
        }
        try {
            const InvariantReport r = compute_invariants(m, grid);
            for (const auto& c : columns) {
                if (c.rfind("c1_", 0) == 0)
                    row.indices[c] = r.chern.at(c.substr(3));
                else
                    row.indices[c] = r.z2_indices.at(c);
            }
            row.available = true;
        } catch (const Error& e) {
            if (e.code() != Errc::NotAdmissible && e.code() != Errc::GapClosed) throw;
            row.note = e.what();
        }
        rows.push_back(row);
    }
    return rows;
}

std::string sweep_csv(const std::string& param, const std::vector<std::string>& columns, const std::vector<SweepRow>& rows) {
    std::string out = csv_field(param) + ",gap_min";
    for (const auto& c : columns) out += "," + csv_field(c);
    out += "\n";
    for (const auto& r : rows) {
        out += format_number(r.value) + "," + format_number(r.gap);
        for (const auto& c : columns) out += "," + (r.available ? std::to_string(r.indices.at(c)) : std::string("NA"));
        out += "\n";
    }
    return out;
}

nlohmann::json sweep_json(const std::string& param, const std::vector<std::string>& columns, const std::vector<SweepRow>& rows) {
    nlohmann::json j;
    j["param"] = param;
    j["columns"] = columns;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json row{{"value", r.value}, {"gap_min", r.gap}};
        for (const auto& c : columns) row[c] = r.available ? nlohmann::json(r.indices.at(c)) : nlohmann::json(nullptr);
        if (!r.note.empty()) row["note"] = r.note;
        j["rows"].push_back(row);
    }
    return j;
}

}  // namespace fkmm
