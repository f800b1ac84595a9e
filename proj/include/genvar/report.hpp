#pragma once

// Report assembly and deterministic rendering. Rendered bytes depend only on
// the report content: keys are sorted, numbers go through a fixed
// 12-significant-digit formatting, and rows are ordered by case id. Case
// runtimes stay in memory for console display; they are never rendered,
// which keeps equal-(config, seed) runs byte-identical at any thread count.

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "genvar/common.hpp"
#include "genvar/version.hpp"

namespace genvar {

struct CaseRow {
    std::string case_id;
    std::map<std::string, std::string> inputs;
    std::map<std::string, double> values;
    std::string verdict;
    double runtime_ms = 0.0;  // in-memory only
    std::vector<std::pair<double, double>> trace;  // optional plot-data block
};

struct Report {
    std::string experiment;
    nlohmann::json resolved_config;
    std::string summary;
    bool exploratory = false;
    std::vector<CaseRow> rows;
    std::string tool_version = kVersion;
    std::string config_hash;
};

inline std::string render_json(const Report& r) {
    nlohmann::json j;
    j["experiment"] = r.experiment;
    j["config"] = r.resolved_config;
    j["config_hash"] = r.config_hash;
    j["tool_version"] = r.tool_version;
    j["summary"] = r.summary;
    j["exploratory"] = r.exploratory;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows) {
        nlohmann::json jr;
        jr["case_id"] = row.case_id;
        jr["verdict"] = row.verdict;
        nlohmann::json inputs;
        for (const auto& [k, v] : row.inputs) inputs[k] = v;
        jr["inputs"] = std::move(inputs);
        nlohmann::json values;
        for (const auto& [k, v] : row.values) values[k] = round_12sig(v);
        jr["values"] = std::move(values);
        rows.push_back(std::move(jr));
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

inline std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string render_csv(const Report& r) {
    // Column union across rows, sorted: inputs first, then values.
    std::map<std::string, bool> in_keys, val_keys;
    for (const auto& row : r.rows) {
        for (const auto& [k, _] : row.inputs) in_keys[k] = true;
        for (const auto& [k, _] : row.values) val_keys[k] = true;
    }
    std::string out = "case_id";
    for (const auto& [k, _] : in_keys) out += "," + csv_quote(k);
    for (const auto& [k, _] : val_keys) out += "," + csv_quote(k);
    out += ",verdict\n";
    for (const auto& row : r.rows) {
        out += row.case_id;
        for (const auto& [k, _] : in_keys) {
            auto it = row.inputs.find(k);
            out += ",";
            if (it != row.inputs.end()) out += csv_quote(it->second);
        }
        for (const auto& [k, _] : val_keys) {
            auto it = row.values.find(k);
            out += ",";
            if (it != row.values.end()) out += format_value(it->second);
        }
        out += "," + csv_quote(row.verdict) + "\n";
    }
    return out;
}

inline std::string render_plotdata(const Report& r) {
    std::string out;
    bool first = true;
    for (const auto& row : r.rows) {
        if (row.trace.empty()) continue;
        if (!first) out += "\n";
        first = false;
        out += "# " + row.case_id + "\n";
        for (const auto& [x, y] : row.trace)
            out += format_value(x) + " " + format_value(y) + "\n";
    }
    return out;
}

/// Count of plot-data blocks a report renders (one per row with a trace).
inline std::size_t plotdata_block_count(const Report& r) {
    std::size_t n = 0;
    for (const auto& row : r.rows)
        if (!row.trace.empty()) ++n;
    return n;
}

inline void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << bytes;
}

inline void write_report_files(const Report& r, const std::string& out_dir,
                               const std::string& stem) {
    std::filesystem::create_directories(out_dir);
    auto base = std::filesystem::path(out_dir) / stem;
    write_file(base.string() + ".json", render_json(r));
    write_file(base.string() + ".csv", render_csv(r));
    if (plotdata_block_count(r) > 0)
        write_file(base.string() + ".dat", render_plotdata(r));
}

} // namespace genvar
