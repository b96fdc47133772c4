// Command-line driver: verification suites, single Chern-Simons evaluations,
// and adiabatic sweeps on preset geometries.
//
// Exit codes: 0 success, 1 a verification check failed (or a numerical
// routine aborted), 2 usage or configuration error.

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include <cskk/cskk.hpp>

namespace {

double to_double(const std::string& key, const std::string& s) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw cskk::config_error("key '" + key + "' expects a number, got '" + s + "'");
    }
}

long to_long(const std::string& key, const std::string& s) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw cskk::config_error("key '" + key + "' expects an integer, got '" + s + "'");
    }
}

bool to_bool(const std::string& key, const std::string& s) {
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    throw cskk::config_error("key '" + key + "' expects a boolean, got '" + s + "'");
}

std::pair<int, int> parse_grid(const std::string& s) {
    const auto x = s.find('x');
    if (x == std::string::npos || x == 0 || x + 1 == s.size())
        throw cskk::config_error("grid expects the form N0xN1, got '" + s + "'");
    return {static_cast<int>(to_long("grid", s.substr(0, x))),
            static_cast<int>(to_long("grid", s.substr(x + 1)))};
}

std::vector<double> parse_eps_list(const std::string& s) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto comma = s.find(',', start);
        const std::string item =
            s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (item.empty()) throw cskk::config_error("eps-grid: empty entry in '" + s + "'");
        out.push_back(to_double("eps-grid", item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw cskk::config_error("eps-grid: no values given");
    for (double e : out)
        if (!(e > 0)) throw cskk::config_error("eps-grid: entries must be > 0");
    return out;
}

/// One configurable option: the CLI flag that may have set it, and how to set
/// it from a config-file string instead.
struct binding {
    CLI::Option* opt = nullptr;
    std::function<void(const std::string&)> set;
};

using binding_map = std::map<std::string, binding>;

const std::set<std::string>& known_config_keys() {
    static const std::set<std::string> keys = {
        "suite",   "geometry",     "seed",     "points", "tolerance", "epsilon",
        "grid",    "fiber-volume", "eps-grid", "fit",    "output",    "format"};
    return keys;
}

/// Fill in options from a flat key=value file; explicit CLI flags win.
void apply_config(const std::string& path, const binding_map& binds) {
    if (path.empty()) return;
    const auto kv = cskk::load_config_file(path);
    for (const auto& [key, value] : kv) {
        if (!known_config_keys().count(key))
            throw cskk::config_error("config: unknown key '" + key + "'");
        const auto it = binds.find(key);
        if (it == binds.end()) continue; // valid key for a different subcommand
        if (it->second.opt != nullptr && it->second.opt->count() > 0) continue;
        it->second.set(value);
    }
}

struct common_options {
    std::string output;
    std::string format = "json";
    std::string config;
};

void add_common(CLI::App* cmd, common_options& c, binding_map& binds) {
    auto* out = cmd->add_option("--output", c.output, "write the record to this path (default: stdout)");
    auto* fmt = cmd->add_option("--format", c.format, "output format: json|csv (default json)");
    cmd->add_option("--config", c.config, "flat key=value configuration file; CLI flags override it");
    binds["output"] = {out, [&c](const std::string& v) { c.output = v; }};
    binds["format"] = {fmt, [&c](const std::string& v) { c.format = v; }};
}

int emit(const cskk::run_record& rec, const common_options& c) {
    if (c.format != "json" && c.format != "csv")
        throw cskk::config_error("format must be 'json' or 'csv', got '" + c.format + "'");
    const std::string text = c.format == "json" ? cskk::to_json_text(rec) : cskk::to_csv(rec);
    if (c.output.empty())
        std::cout << text;
    else
        cskk::write_text_file(c.output, text);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical verification engine for the gravitational Chern-Simons term "
                 "on circle-fibered three-manifold data"};
    app.require_subcommand(1);

    // ----- verify ---------------------------------------------------------
    auto* verify = app.add_subcommand(
        "verify", "run a named verification suite against a preset geometry");
    std::string v_suite, v_geometry;
    long v_seed = 12345, v_points = 100;
    double v_tolerance = 0;
    bool v_tol_set = false;
    common_options v_common;
    binding_map v_binds;
    auto* v_suite_opt = verify->add_option("--suite", v_suite,
                                           "christoffel|spin|reduce|integrand|cs|sweep");
    auto* v_geom_opt = verify->add_option("--geometry", v_geometry,
                                          "hopf|lens|torus-random|product-flat");
    auto* v_seed_opt = verify->add_option("--seed", v_seed, "random seed (default 12345)");
    auto* v_points_opt =
        verify->add_option("--points", v_points, "number of random sample points (default 100)");
    auto* v_tol_opt = verify->add_option("--tolerance", v_tolerance,
                                         "override every check's allowance with this value");
    add_common(verify, v_common, v_binds);
    v_binds["suite"] = {v_suite_opt, [&](const std::string& s) { v_suite = s; }};
    v_binds["geometry"] = {v_geom_opt, [&](const std::string& s) { v_geometry = s; }};
    v_binds["seed"] = {v_seed_opt, [&](const std::string& s) { v_seed = to_long("seed", s); }};
    v_binds["points"] = {v_points_opt,
                         [&](const std::string& s) { v_points = to_long("points", s); }};
    v_binds["tolerance"] = {v_tol_opt, [&](const std::string& s) {
                                v_tolerance = to_double("tolerance", s);
                                v_tol_set = true;
                            }};

    // ----- compute --------------------------------------------------------
    auto* compute = app.add_subcommand(
        "compute", "evaluate the Chern-Simons invariant once, by both routes");
    std::string c_geometry, c_grid;
    double c_epsilon = 1.0, c_fiber = 0;
    bool c_eps_set = false, c_fiber_set = false;
    common_options c_common;
    binding_map c_binds;
    auto* c_geom_opt = compute->add_option("--geometry", c_geometry,
                                           "hopf|lens|torus-random|product-flat");
    auto* c_eps_opt =
        compute->add_option("--epsilon", c_epsilon, "fiber scale epsilon (> 0), required");
    auto* c_grid_opt =
        compute->add_option("--grid", c_grid, "quadrature resolution N0xN1 (default 64x64)");
    auto* c_fiber_opt = compute->add_option("--fiber-volume", c_fiber,
                                            "override the fiber volume factor (> 0)");
    add_common(compute, c_common, c_binds);
    c_binds["geometry"] = {c_geom_opt, [&](const std::string& s) { c_geometry = s; }};
    c_binds["epsilon"] = {c_eps_opt, [&](const std::string& s) {
                              c_epsilon = to_double("epsilon", s);
                              c_eps_set = true;
                          }};
    c_binds["grid"] = {c_grid_opt, [&](const std::string& s) { c_grid = s; }};
    c_binds["fiber-volume"] = {c_fiber_opt, [&](const std::string& s) {
                                   c_fiber = to_double("fiber-volume", s);
                                   c_fiber_set = true;
                               }};

    // ----- sweep ----------------------------------------------------------
    auto* sweep = app.add_subcommand(
        "sweep", "evaluate the invariant over a grid of epsilon values");
    std::string s_geometry, s_eps_grid;
    bool s_fit = false;
    common_options s_common;
    binding_map s_binds;
    auto* s_geom_opt = sweep->add_option("--geometry", s_geometry,
                                         "hopf|lens|torus-random|product-flat");
    auto* s_grid_opt = sweep->add_option(
        "--eps-grid", s_eps_grid, "comma-separated epsilon values (default 1,0.5,0.25,0.1,0.01,1e-4)");
    auto* s_fit_opt =
        sweep->add_flag("--fit", s_fit, "include the quadratic polynomial fit in the record");
    add_common(sweep, s_common, s_binds);
    s_binds["geometry"] = {s_geom_opt, [&](const std::string& s) { s_geometry = s; }};
    s_binds["eps-grid"] = {s_grid_opt, [&](const std::string& s) { s_eps_grid = s; }};
    s_binds["fit"] = {s_fit_opt, [&](const std::string& s) { s_fit = to_bool("fit", s); }};

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(verify)) {
            apply_config(v_common.config, v_binds);
            if (v_suite.empty()) throw cskk::config_error("verify: --suite is required");
            if (v_geometry.empty()) throw cskk::config_error("verify: --geometry is required");
            if (v_points < 1) throw cskk::config_error("verify: --points must be >= 1");

            cskk::preset_spec ps;
            ps.kind = cskk::parse_preset_name(v_geometry);
            ps.seed = static_cast<std::uint64_t>(v_seed);
            ps.validate();
            cskk::suite_options so;
            so.samples = static_cast<int>(v_points);
            so.seed = static_cast<std::uint64_t>(v_seed);
            if (v_tol_set || v_tol_opt->count() > 0) so.tolerance = v_tolerance;

            const cskk::suite_run run = cskk::run_suite(v_suite, ps, so);
            for (const auto& c : run.suite.checks)
                std::fprintf(stderr, "[%s] %s: measured %.6g, allowed %.6g%s%s\n",
                             c.pass ? "pass" : "FAIL", c.name.c_str(), c.measured, c.allowed,
                             c.note.empty() ? "" : " — ", c.note.c_str());
            std::fprintf(stderr, "suite %s: %s\n", run.suite.name.c_str(),
                         run.suite.pass ? "pass" : "FAIL");

            cskk::run_record rec;
            rec.preset = run.preset;
            rec.fiber_volume = run.fiber_volume;
            rec.results = run.results;
            rec.fit = run.fit;
            rec.suites = {run.suite};
            emit(rec, v_common);
            return run.suite.pass ? 0 : 1;
        }

        if (app.got_subcommand(compute)) {
            apply_config(c_common.config, c_binds);
            if (c_geometry.empty()) throw cskk::config_error("compute: --geometry is required");
            if (c_eps_opt->count() == 0 && !c_eps_set)
                throw cskk::config_error("compute: --epsilon is required");

            cskk::preset_spec ps;
            ps.kind = cskk::parse_preset_name(c_geometry);
            ps.epsilon = c_epsilon;
            if (!c_grid.empty()) {
                const auto [n0, n1] = parse_grid(c_grid);
                ps.grid0 = n0;
                ps.grid1 = n1;
            }
            if (c_fiber_opt->count() > 0 || c_fiber_set) ps.fiber_volume = c_fiber;
            ps.validate();

            const cskk::preset P = cskk::build_preset(ps);
            const cskk::cs_result r = cskk::evaluate_cs(P.kk, P.chart, P.quad);
            cskk::run_record rec;
            rec.preset = P.name;
            rec.fiber_volume = P.kk.fiber_volume;
            rec.results = {r};
            emit(rec, c_common);
            return 0;
        }

        // sweep
        apply_config(s_common.config, s_binds);
        if (s_geometry.empty()) throw cskk::config_error("sweep: --geometry is required");

        cskk::preset_spec ps;
        ps.kind = cskk::parse_preset_name(s_geometry);
        if (!s_eps_grid.empty()) ps.eps_grid = parse_eps_list(s_eps_grid);
        ps.validate();

        const cskk::preset P = cskk::build_preset(ps);
        const cskk::sweep_result sw = cskk::adiabatic_sweep(P.kk, ps.eps_grid, P.chart, P.quad);
        cskk::run_record rec;
        rec.preset = P.name;
        rec.fiber_volume = P.kk.fiber_volume;
        rec.results = sw.results;
        if (s_fit) rec.fit = sw.fit;
        emit(rec, s_common);
        return 0;
    } catch (const cskk::config_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
