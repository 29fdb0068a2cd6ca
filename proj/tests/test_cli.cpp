#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "cremona/report.hpp"

using namespace cremona;

namespace {

struct CliRun {
    int exit_code;
    std::string out;
    std::string err;
};

CliRun run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli_main(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("config file parsing") {
    ConstructionConfig cfg = parse_config_file(
        "# sample config\n"
        "n = 2\n"
        "lambda = 3\n"
        "mu = 1/2\n"
        "a = 1,2\n"
        "psi_poly = false\n"
        "modular = false\n"
        "seed = 99\n");
    CHECK(cfg.n == 2);
    CHECK(cfg.lambda == Rational(3));
    CHECK(cfg.mu == make_rational(1, 2));
    CHECK(cfg.a == std::vector<Rational>{Rational(1), Rational(2)});
    CHECK(cfg.seed == 99);

    // Defaults fill in missing keys.
    ConstructionConfig d = parse_config_file("n = 1\n");
    CHECK(d.n == 1);
    CHECK(d.a == std::vector<Rational>{Rational(1)});
    CHECK(d.lambda == Rational(2));
}

TEST_CASE("construct is byte-deterministic") {
    ConstructionConfig cfg = ConstructionConfig::defaults(1);
    std::string r1 = report_to_string(build_report(run_construction(cfg)));
    std::string r2 = report_to_string(build_report(run_construction(cfg)));
    CHECK(r1 == r2);

    // A different seed really changes the sampled content.
    ConstructionConfig cfg2 = cfg;
    cfg2.seed = 2;
    std::string r3 = report_to_string(build_report(run_construction(cfg2)));
    CHECK(r1 != r3);
}

TEST_CASE("recheck accepts untouched reports and flags tampering") {
    ConstructionConfig cfg = ConstructionConfig::defaults(1);
    nlohmann::json rep = build_report(run_construction(cfg));

    RecheckOutcome ok = recheck_report(rep);
    CHECK(ok.ok);
    CHECK(ok.checks.size() == 7);

    // Flip a coefficient inside the stored curve equation.
    nlohmann::json bad = rep;
    std::string c = bad["curves"]["C"].get<std::string>();
    c[0] = c[0] == '1' ? '2' : '1';
    bad["curves"]["C"] = c;
    for (auto& cert : bad["certificates"])
        if (cert["kind"] == "Degree") cert["evidence"]["curve_c"] = c;
    RecheckOutcome tampered = recheck_report(bad);
    CHECK_FALSE(tampered.ok);

    // A different tool version with the same schema still verifies.
    nlohmann::json other = rep;
    other["tool_version"] = "9.9.9";
    CHECK(recheck_report(other).ok);

    // Unsupported schema throws.
    nlohmann::json wrong = rep;
    wrong["schema"] = "other/1";
    CHECK_THROWS_AS(recheck_report(wrong), Error);
}

TEST_CASE("cli exit codes") {
    CliRun bad_lambda = run_cli({"construct", "--n", "1", "--lambda", "1"});
    CHECK(bad_lambda.exit_code == 2);

    CliRun bad_n = run_cli({"graph", "--n", "0"});
    CHECK(bad_n.exit_code == 2);

    CliRun g = run_cli({"graph", "--n", "2"});
    CHECK(g.exit_code == 0);
    CHECK(g.out.find("etilde_8") != std::string::npos);

    CliRun missing = run_cli({"recheck", "/nonexistent/report.json"});
    CHECK(missing.exit_code == 2);
}

TEST_CASE("cli construct emits a verdict and flags override the config file") {
    CliRun r = run_cli({"construct", "--n", "1", "--seed", "7"});
    CHECK(r.exit_code == 0);
    nlohmann::json rep = nlohmann::json::parse(r.out);
    CHECK(rep["verdict"] == "INCONCLUSIVE (n < 2)");
    CHECK(rep["config"]["seed"] == 7);
    CHECK(rep["timings"].is_null());
}

TEST_CASE("cli construct n=2 certifies the counterexample") {
    CliRun r = run_cli({"construct", "--n", "2"});
    CHECK(r.exit_code == 0);
    nlohmann::json rep = nlohmann::json::parse(r.out);
    CHECK(rep["verdict"] == "COUNTEREXAMPLE");
    CHECK(rep["curves"]["degree"] == 9);
    RecheckOutcome rc = recheck_report(rep);
    CHECK(rc.ok);
}

TEST_CASE("cli reads a config file and flags override it") {
    std::string path = "/tmp/cremona_test_config.txt";
    {
        std::ofstream f(path);
        f << "n = 1\nlambda = 3\nmu = 1\nseed = 11\n";
    }
    CliRun r = run_cli({"construct", "--config", path, "--seed", "5"});
    CHECK(r.exit_code == 0);
    nlohmann::json rep = nlohmann::json::parse(r.out);
    CHECK(rep["config"]["n"] == 1);
    CHECK(rep["config"]["lambda"] == "3");
    CHECK(rep["config"]["seed"] == 5);  // flag wins over the file
}
