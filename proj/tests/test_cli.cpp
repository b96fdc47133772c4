// End-to-end checks of the command-line driver: exit codes, output formats,
// and configuration-file precedence. The driver binary path is injected at
// build time.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

#include "helpers.hpp"

namespace {

const std::string cli = CSKK_CLI_PATH;

struct cli_run {
    int exit_code = -1;
    std::string out;
};

/// Run the driver with the given arguments, capturing stdout.
cli_run run(const std::string& args) {
    const std::string out_path = "cli_test_stdout.txt";
    const std::string cmd = "\"" + cli + "\" " + args + " > " + out_path + " 2> /dev/null";
    const int status = std::system(cmd.c_str());
    cli_run r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    try {
        r.out = cskk::read_text_file(out_path);
    } catch (const cskk::config_error&) {
        r.out.clear();
    }
    std::remove(out_path.c_str());
    return r;
}

} // namespace

TEST_CASE("compute: valid record on stdout, exit 0") {
    const cli_run r = run("compute --geometry hopf --epsilon 1");
    REQUIRE(r.exit_code == 0);
    const cskk::run_record rec = cskk::parse_record(r.out);
    REQUIRE(rec.preset == "hopf");
    REQUIRE(rec.results.size() == 1);
    CHECK_CLOSE(rec.results[0].cs_reduced, 4 * cskk::pi + cskk::pi / 2, 1e-6);
    CHECK_CLOSE(rec.results[0].epsilon, 1.0, 0.0);
    REQUIRE(!rec.fit.has_value());
    REQUIRE(rec.suites.empty());
}

TEST_CASE("compute: grid and fiber-volume flags") {
    const cli_run r =
        run("compute --geometry hopf --epsilon 0.5 --grid 32x32 --fiber-volume 12.566370614359172");
    REQUIRE(r.exit_code == 0);
    const cskk::run_record rec = cskk::parse_record(r.out);
    CHECK_CLOSE(rec.fiber_volume, 4 * cskk::pi, 1e-12);
    // doubling the fiber volume doubles the linear coefficient: 8 pi eps + ...
    CHECK_CLOSE(rec.results[0].term_linear, 8 * cskk::pi, 1e-5);
}

TEST_CASE("compute: csv output to a file") {
    const std::string path = "cli_test_out.csv";
    const cli_run r = run("compute --geometry product-flat --epsilon 1 --format csv --output " +
                          path);
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.out.empty());
    const std::string csv = cskk::read_text_file(path);
    std::remove(path.c_str());
    REQUIRE(csv.rfind("epsilon,cs_direct,cs_reduced,term_linear,term_quadratic,error_estimate\n",
                      0) == 0);
    REQUIRE(csv.back() == '\n');
}

TEST_CASE("verify: passing suites exit 0 and record their checks") {
    const cli_run r = run("verify --suite christoffel --geometry torus-random --points 20");
    REQUIRE(r.exit_code == 0);
    const cskk::run_record rec = cskk::parse_record(r.out);
    REQUIRE(rec.suites.size() == 1);
    REQUIRE(rec.suites[0].name == "christoffel");
    REQUIRE(rec.suites[0].pass);
    REQUIRE(!rec.suites[0].checks.empty());
    for (const auto& c : rec.suites[0].checks) REQUIRE(c.pass);
}

TEST_CASE("verify: corrupted tolerance exits 1") {
    const cli_run r =
        run("verify --suite christoffel --geometry torus-random --points 5 --tolerance 1e-30");
    REQUIRE(r.exit_code == 1);
    // the record is still emitted, with failing checks reported as data
    const cskk::run_record rec = cskk::parse_record(r.out);
    REQUIRE(!rec.suites[0].pass);
}

TEST_CASE("sweep: epsilon grid and fit flag") {
    const cli_run r = run("sweep --geometry hopf --eps-grid 1,0.5,0.25,0.1 --fit");
    REQUIRE(r.exit_code == 0);
    const cskk::run_record rec = cskk::parse_record(r.out);
    REQUIRE(rec.results.size() == 4);
    REQUIRE(rec.fit.has_value());
    CHECK_CLOSE(rec.fit->a, 4 * cskk::pi, 1e-4);
    CHECK_CLOSE(rec.fit->b, cskk::pi / 2, 1e-4);

    const cli_run nofit = run("sweep --geometry hopf --eps-grid 1,0.5,0.25,0.1");
    REQUIRE(nofit.exit_code == 0);
    REQUIRE(!cskk::parse_record(nofit.out).fit.has_value());
}

TEST_CASE("config file supplies defaults; explicit flags win") {
    const std::string cfg = "cli_test_config.cfg";
    cskk::write_text_file(cfg, "# defaults\n"
                               "geometry = product-flat\n"
                               "epsilon = 0.5\n");

    const cli_run from_config = run("compute --config " + cfg);
    REQUIRE(from_config.exit_code == 0);
    const cskk::run_record rec = cskk::parse_record(from_config.out);
    REQUIRE(rec.preset == "product-flat");
    CHECK_CLOSE(rec.results[0].epsilon, 0.5, 0.0);

    const cli_run overridden = run("compute --config " + cfg + " --geometry hopf --epsilon 1");
    REQUIRE(overridden.exit_code == 0);
    const cskk::run_record rec2 = cskk::parse_record(overridden.out);
    REQUIRE(rec2.preset == "hopf");
    CHECK_CLOSE(rec2.results[0].epsilon, 1.0, 0.0);
    std::remove(cfg.c_str());
}

TEST_CASE("usage and configuration errors exit 2") {
    REQUIRE(run("compute --geometry hopf").exit_code == 2);          // epsilon missing
    REQUIRE(run("compute --epsilon 1").exit_code == 2);              // geometry missing
    REQUIRE(run("compute --geometry nowhere --epsilon 1").exit_code == 2);
    REQUIRE(run("verify --suite unknown --geometry hopf").exit_code == 2);
    REQUIRE(run("frobnicate").exit_code == 2);                       // unknown subcommand
    REQUIRE(run("compute --geometry hopf --epsilon 1 --no-such-flag").exit_code == 2);
    REQUIRE(run("compute --geometry hopf --epsilon 1 --format yaml").exit_code == 2);
    REQUIRE(run("compute --geometry hopf --epsilon 1 --grid 64").exit_code == 2);
    REQUIRE(run("sweep --geometry hopf --eps-grid 1,-0.5").exit_code == 2);
    REQUIRE(run("compute --config /nonexistent.cfg --geometry hopf --epsilon 1").exit_code == 2);

    const std::string cfg = "cli_test_badkey.cfg";
    cskk::write_text_file(cfg, "volume = 3\n"); // not a recognized key
    REQUIRE(run("compute --config " + cfg + " --geometry hopf --epsilon 1").exit_code == 2);
    std::remove(cfg.c_str());
}
