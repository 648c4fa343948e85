// report.hpp
//
// The result schema every front-end command emits: named numeric rows, each
// carrying the label of the textbook identity it checks, plus an overall
// pass flag. Emitters for aligned tables, CSV (17 significant digits, stable
// byte-for-byte across runs), and JSON (lossless double round-trip).

#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "qfound/linalg.hpp"

namespace qfound {

struct result_row {
    std::string name;
    double value;
    std::string paper_anchor;

    bool operator==(const result_row&) const = default;
};

struct command_result {
    std::string command;
    std::vector<result_row> rows;
    bool pass = true;

    bool operator==(const command_result&) const = default;

    void add(std::string name, double value, std::string anchor) {
        if (!is_finite(value))
            throw std::invalid_argument("command_result: non-finite row value");
        rows.push_back({std::move(name), value, std::move(anchor)});
    }

    // records a boolean check as a 0/1 row and folds it into the pass flag
    void add_check(std::string name, bool ok, std::string anchor) {
        add(std::move(name), ok ? 1.0 : 0.0, std::move(anchor));
        pass = pass && ok;
    }
};

// Shortest text that still round-trips a double exactly would do; a fixed
// 17 significant digits keeps the byte stream identical across runs and
// compilers instead.
inline std::string format_value(double v, int digits = 17) {
    if (digits < 1) digits = 1;
    if (digits > 17) digits = 17;
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

inline std::string emit_csv(const command_result& r) {
    std::string out = "name,value,paper_anchor\n";
    for (const result_row& row : r.rows)
        out += row.name + "," + format_value(row.value) + "," + row.paper_anchor + "\n";
    return out;
}

inline std::string emit_table(const command_result& r, int digits = 17) {
    std::size_t name_w = 4, value_w = 5;
    std::vector<std::string> values;
    values.reserve(r.rows.size());
    for (const result_row& row : r.rows) {
        values.push_back(format_value(row.value, digits));
        name_w = std::max(name_w, row.name.size());
        value_w = std::max(value_w, values.back().size());
    }
    std::string out = "# " + r.command + "\n";
    auto pad = [](const std::string& s, std::size_t w) {
        return s + std::string(w - s.size(), ' ');
    };
    out += pad("name", name_w) + "  " + pad("value", value_w) + "  anchor\n";
    for (std::size_t i = 0; i < r.rows.size(); ++i)
        out += pad(r.rows[i].name, name_w) + "  " + pad(values[i], value_w) + "  " +
               r.rows[i].paper_anchor + "\n";
    out += r.pass ? "pass\n" : "FAIL\n";
    return out;
}

inline std::string emit_json(const command_result& r) {
    nlohmann::ordered_json j;
    j["command"] = r.command;
    j["rows"] = nlohmann::ordered_json::array();
    for (const result_row& row : r.rows)
        j["rows"].push_back({{"name", row.name},
                             {"value", row.value},
                             {"paper_anchor", row.paper_anchor}});
    j["pass"] = r.pass;
    return j.dump(2) + "\n";
}

inline command_result parse_result_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    command_result r;
    r.command = j.at("command").get<std::string>();
    for (const auto& row : j.at("rows"))
        r.rows.push_back({row.at("name").get<std::string>(), row.at("value").get<double>(),
                          row.at("paper_anchor").get<std::string>()});
    r.pass = j.at("pass").get<bool>();
    return r;
}

}  // namespace qfound
