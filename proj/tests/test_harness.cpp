#include <doctest.h>

#include <fstream>

#include <json.hpp>

#include "corona/harness.hpp"

using namespace corona;
using nlohmann::json;

namespace {

// Small grids keep the harness tests quick; numeric assertions that need the
// shipped defaults live in the acceptance suite.
json small_grid_config(json base) {
    base["grid"] = {{"radial", 32}, {"angular", 64}, {"boundary", 256}};
    base["coanalytic"] = {{"K", 2}};
    base["truncation"] = {{"N", std::vector<int>{8, 16}}};
    return base;
}

}  // namespace

TEST_CASE("corpus: size and required members") {
    auto entries = corpus();
    CHECK(entries.size() >= 10);

    int expect_fail = 0, interior_zero = 0, pow_kind = 0, n3 = 0;
    for (const auto& c : entries) {
        if (c.contains("expect") && c["expect"] == "fail") {
            ++expect_fail;
            continue;
        }
        Scenario sc = scenario_from_json(c);
        HypothesisReport r = validate_scenario(sc.F, sc.f, sc.psi, sc.validation_resolution,
                                               sc.tol.delta_min, sc.tol.hypothesis);
        CHECK_MESSAGE(r.pass(), sc.name);
        for (const auto& w : scenario_f_zeros(sc)) {
            if (std::abs(w) < 1.0 - 1e-6) ++interior_zero;
        }
        if (sc.psi.kind() == PsiSpec::Kind::normalized_power) ++pow_kind;
        if (sc.F.n() == 3) ++n3;
    }
    CHECK(expect_fail >= 2);     // the corona datum under both shipped psi kinds
    CHECK(interior_zero >= 1);   // the puncturing path executes
    CHECK(pow_kind >= 1);
    CHECK(n3 >= 1);
}

TEST_CASE("scenario parsing: malformed configs raise config errors") {
    CHECK_THROWS_AS(scenario_from_json(json{{"g", json::array({1.0})}}), Error);
    CHECK_THROWS_AS(scenario_from_json(json{{"F", json::array()}, {"f", json::array()},
                                            {"g", json::array()}}),
                    Error);
    json bad = corpus()[1];
    bad["psi"] = {{"kind", "unknown"}};
    CHECK_THROWS_AS(scenario_from_json(bad), Error);

    try {
        scenario_from_json(json::object());
    } catch (const Error& e) {
        CHECK(e.code() == Errc::config_error);
    }
}

TEST_CASE("run_scenario: trivial f = 0 passes every suite with zero bounds") {
    Scenario sc = scenario_from_json(small_grid_config(corpus()[0]));
    RunOutcome out = run_scenario(sc, Command::all);
    CHECK(out.exit_code == kExitOk);
    CHECK(out.report["carleson"]["lemma41"]["lhs"].get<double>() == 0.0);
    CHECK(out.report["carleson"]["main"]["lhs"].get<double>() == 0.0);
    CHECK(out.report["solve"]["table"][0]["ratio"].get<double>() == 0.0);
    CHECK(out.report["hypothesis"]["pass"].get<bool>());
}

TEST_CASE("run_scenario: plain corona datum exits with code 3") {
    json cfg{{"name", "raw-corona"},
             {"F", json::array({json::array({0.0, 1.0}), json::array({1.0, -1.0})})},
             {"f", json::array({1.0})},
             {"g", json::array({1.0})}};
    Scenario sc = scenario_from_json(cfg);
    RunOutcome out = run_scenario(sc, Command::validate);
    CHECK(out.exit_code == kExitValidationFailure);
    CHECK_FALSE(out.report["hypothesis"]["hypothesis_ok"].get<bool>());
    CHECK(out.report["hypothesis"]["margin"].get<double>() < 0.0);
}

TEST_CASE("run_scenario: expected-fail scenarios invert the exit code") {
    for (const auto& c : corpus()) {
        if (!c.contains("expect") || c["expect"] != "fail") continue;
        Scenario sc = scenario_from_json(c);
        RunOutcome out = run_scenario(sc, Command::all);
        CHECK(out.exit_code == kExitOk);
        CHECK(out.report["hypothesis"]["expected_fail"].get<bool>());
        CHECK_FALSE(out.report["hypothesis"]["pass"].get<bool>());
        CHECK_FALSE(out.report.contains("solve"));  // suites skipped
    }
}

TEST_CASE("reports are byte-identical across runs (timing excluded)") {
    json cfg = small_grid_config(corpus()[3]);
    RunOutcome a = run_config(cfg, Command::all);
    RunOutcome b = run_config(cfg, Command::all);
    a.report.erase("timing");
    b.report.erase("timing");
    CHECK(a.report.dump() == b.report.dump());
}

TEST_CASE("multi-scenario configs: jobs do not change the report") {
    json multi;
    multi["scenarios"] = json::array({small_grid_config(corpus()[0]),
                                      small_grid_config(corpus()[1]),
                                      small_grid_config(corpus()[2])});
    RunOutcome serial = run_config(multi, Command::carleson, std::nullopt, std::nullopt, 1);
    RunOutcome parallel = run_config(multi, Command::carleson, std::nullopt, std::nullopt, 3);
    CHECK(serial.exit_code == kExitOk);
    CHECK(parallel.exit_code == kExitOk);
    for (auto& rep : serial.report["scenarios"]) rep.erase("timing");
    for (auto& rep : parallel.report["scenarios"]) rep.erase("timing");
    CHECK(serial.report.dump() == parallel.report.dump());
}

TEST_CASE("overrides land in the resolved scenario echo") {
    json cfg = small_grid_config(corpus()[1]);
    RunOutcome out = run_config(cfg, Command::validate, 0.25, 1234ULL);
    CHECK(out.report["scenario"]["tolerances"]["slack"].get<double>() == 0.25);
    CHECK(out.report["scenario"]["seed"].get<std::uint64_t>() == 1234ULL);
}

TEST_CASE("csv export mirrors the numeric tables") {
    json cfg = small_grid_config(corpus()[2]);
    RunOutcome out = run_config(cfg, Command::all);
    const std::string dir = "harness_csv_test";
    export_csv(out.report, dir);
    for (const char* name : {"solve_table.csv", "carleson.csv", "identities.csv",
                             "functional.csv", "g_coefficients.csv"}) {
        std::ifstream in(std::string(dir) + "/" + name);
        REQUIRE_MESSAGE(in.good(), name);
        std::string header, row;
        std::getline(in, header);
        CHECK(std::getline(in, row));  // at least one data row
    }
}

TEST_CASE("command names round-trip") {
    for (const char* name : {"validate", "identities", "carleson", "functional", "solve",
                             "leech", "all"}) {
        auto cmd = command_from_string(name);
        REQUIRE(cmd.has_value());
        CHECK(std::string(command_name(*cmd)) == name);
    }
    CHECK_FALSE(command_from_string("nope").has_value());
}
