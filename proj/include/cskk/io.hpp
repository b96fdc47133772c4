#pragma once
// Result records and their serialized forms (JSON / CSV), plus the flat
// key=value configuration-file parser used by the command-line driver.

#include <array>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cskk/chern_simons.hpp"
#include "cskk/errors.hpp"
#include "cskk/suites.hpp"

namespace cskk {

inline constexpr const char* version_string = "1.0.0";

/// One exportable run: quadrature results (possibly with a polynomial fit)
/// and/or verification-suite outcomes for a single preset.
struct run_record {
    std::string preset;
    double fiber_volume = 2 * pi;
    std::vector<cs_result> results;
    std::optional<fit_result> fit;
    std::vector<suite_result> suites;
    std::string version = version_string;
    std::string timestamp; ///< ISO-8601 UTC; filled by current_timestamp() if empty
};

inline std::string current_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Shortest round-trip decimal representation of a double.
inline std::string format_full(double v) {
    std::array<char, 40> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (res.ec != std::errc{}) throw config_error("failed to format a floating-point value");
    return std::string(buf.data(), res.ptr);
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline nlohmann::ordered_json to_json(const cs_result& r) {
    return nlohmann::ordered_json{{"epsilon", r.epsilon},
                                  {"cs_direct", r.cs_direct},
                                  {"cs_reduced", r.cs_reduced},
                                  {"term_linear", r.term_linear},
                                  {"term_quadratic", r.term_quadratic},
                                  {"error_estimate", r.error_estimate}};
}

inline nlohmann::ordered_json to_json(const suite_result& s) {
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : s.checks)
        checks.push_back(nlohmann::ordered_json{{"name", c.name},
                                                {"pass", c.pass},
                                                {"measured", c.measured},
                                                {"allowed", c.allowed},
                                                {"note", c.note}});
    return nlohmann::ordered_json{{"name", s.name}, {"pass", s.pass}, {"checks", checks}};
}

inline nlohmann::ordered_json to_json(const run_record& rec) {
    nlohmann::ordered_json j;
    j["preset"] = rec.preset;
    j["fiber_volume"] = rec.fiber_volume;
    j["results"] = nlohmann::ordered_json::array();
    for (const auto& r : rec.results) j["results"].push_back(to_json(r));
    if (rec.fit)
        j["fit"] = nlohmann::ordered_json{
            {"a", rec.fit->a}, {"b", rec.fit->b}, {"residual", rec.fit->residual}};
    else
        j["fit"] = nullptr;
    j["suites"] = nlohmann::ordered_json::array();
    for (const auto& s : rec.suites) j["suites"].push_back(to_json(s));
    j["version"] = rec.version;
    j["timestamp"] = rec.timestamp.empty() ? current_timestamp() : rec.timestamp;
    return j;
}

inline std::string to_json_text(const run_record& rec) { return to_json(rec).dump(2) + "\n"; }

/// Inverse of to_json_text, for round-trip checks and downstream consumers.
inline run_record parse_record(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("invalid JSON record: ") + e.what());
    }
    try {
        run_record rec;
        rec.preset = j.at("preset").get<std::string>();
        rec.fiber_volume = j.at("fiber_volume").get<double>();
        for (const auto& r : j.at("results")) {
            cs_result cr;
            cr.epsilon = r.at("epsilon").get<double>();
            cr.cs_direct = r.at("cs_direct").get<double>();
            cr.cs_reduced = r.at("cs_reduced").get<double>();
            cr.term_linear = r.at("term_linear").get<double>();
            cr.term_quadratic = r.at("term_quadratic").get<double>();
            cr.error_estimate = r.at("error_estimate").get<double>();
            cr.fiber_volume = rec.fiber_volume;
            rec.results.push_back(cr);
        }
        if (j.contains("fit") && !j.at("fit").is_null()) {
            fit_result f;
            f.a = j.at("fit").at("a").get<double>();
            f.b = j.at("fit").at("b").get<double>();
            f.residual = j.at("fit").at("residual").get<double>();
            rec.fit = f;
        }
        if (j.contains("suites"))
            for (const auto& s : j.at("suites")) {
                suite_result sr;
                sr.name = s.at("name").get<std::string>();
                sr.pass = s.at("pass").get<bool>();
                for (const auto& c : s.at("checks"))
                    sr.checks.push_back({c.at("name").get<std::string>(),
                                         c.at("pass").get<bool>(),
                                         c.at("measured").get<double>(),
                                         c.at("allowed").get<double>(),
                                         c.value("note", std::string{})});
                rec.suites.push_back(sr);
            }
        if (j.contains("version")) rec.version = j.at("version").get<std::string>();
        if (j.contains("timestamp")) rec.timestamp = j.at("timestamp").get<std::string>();
        return rec;
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("record is missing required fields: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

inline constexpr const char* csv_header =
    "epsilon,cs_direct,cs_reduced,term_linear,term_quadratic,error_estimate";

inline std::string to_csv(const run_record& rec) {
    std::string out = csv_header;
    out += '\n';
    for (const auto& r : rec.results) {
        out += format_full(r.epsilon);
        out += ',';
        out += format_full(r.cs_direct);
        out += ',';
        out += format_full(r.cs_reduced);
        out += ',';
        out += format_full(r.term_linear);
        out += ',';
        out += format_full(r.term_quadratic);
        out += ',';
        out += format_full(r.error_estimate);
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw config_error("failed reading file '" + path + "'");
    return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw config_error("cannot open file '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out) throw config_error("failed writing file '" + path + "'");
}

// ---------------------------------------------------------------------------
// Configuration files: flat key=value, '#' starts a comment, blank lines ok.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace detail

inline std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config line " + std::to_string(lineno) +
                               ": expected key=value, got '" + line + "'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty())
            throw config_error("config line " + std::to_string(lineno) + ": empty key");
        out[key] = value;
    }
    return out;
}

inline std::map<std::string, std::string> load_config_file(const std::string& path) {
    return parse_config_text(read_text_file(path));
}

} // namespace cskk
