#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "corona/harness.hpp"

namespace {

int run_command(corona::Command cmd, const std::string& config_path, const std::string& out_path,
                const std::string& csv_dir, std::optional<double> slack, int jobs) {
    using nlohmann::json;
    json config;
    {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "cannot open config: " << config_path << "\n";
            return corona::kExitConfigError;
        }
        try {
            in >> config;
        } catch (const std::exception& e) {
            std::cerr << "config parse error: " << e.what() << "\n";
            return corona::kExitConfigError;
        }
    }

    std::optional<std::uint64_t> seed;
    if (const char* env = std::getenv("CORONA_LAB_SEED")) {
        seed = std::strtoull(env, nullptr, 10);
    }

    try {
        corona::RunOutcome outcome = corona::run_config(config, cmd, slack, seed, jobs);
        std::cout << outcome.summary;
        std::cout << "corona-lab " << corona::command_name(cmd) << ": exit "
                  << outcome.exit_code << "\n";
        if (!out_path.empty()) {
            std::ofstream out(out_path);
            out << outcome.report.dump(2) << "\n";
        }
        if (!csv_dir.empty()) corona::export_csv(outcome.report, csv_dir);
        return outcome.exit_code;
    } catch (const corona::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == corona::Errc::config_error ? corona::kExitConfigError
                                                      : corona::kExitAssertionFailure;
    }
}

int dump_corpus(const std::string& out_dir) {
    namespace fs = std::filesystem;
    const auto entries = corona::corpus();
    if (out_dir.empty()) {
        for (const auto& c : entries) std::cout << c.at("name").get<std::string>() << "\n";
        return 0;
    }
    fs::create_directories(out_dir);
    nlohmann::json index = nlohmann::json::array();
    for (const auto& c : entries) {
        const std::string name = c.at("name").get<std::string>();
        std::ofstream out(fs::path(out_dir) / (name + ".json"));
        out << c.dump(2) << "\n";
        index.push_back(name);
    }
    std::ofstream idx(fs::path(out_dir) / "index.json");
    idx << index.dump(2) << "\n";
    std::cout << "wrote " << entries.size() << " scenario configs to " << out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"corona-lab: finite-section laboratory for the H-infinity ideal "
                 "membership problem"};
    app.require_subcommand(1);

    std::string config_path, out_path, csv_dir, corpus_dir;
    double slack = -1.0;
    int jobs = 1;

    auto add_run = [&](const char* name, const char* desc) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("--config", config_path, "scenario config JSON")->required();
        sub->add_option("--out", out_path, "write the JSON report here");
        sub->add_option("--csv-dir", csv_dir, "mirror numeric tables as CSV into this directory");
        sub->add_option("--slack", slack, "override the bound slack");
        sub->add_option("--jobs", jobs, "scenario-level parallelism")->check(CLI::PositiveNumber);
        return sub;
    };
    add_run("validate", "check the scenario hypotheses");
    add_run("identities", "projection-field identity suite");
    add_run("carleson", "Carleson measure bounds");
    add_run("functional", "three-term functional decomposition");
    add_run("solve", "finite-section minimal-norm solver");
    add_run("leech", "Leech / Pick positivity checks");
    add_run("all", "every suite");

    CLI::App* corpus_cmd = app.add_subcommand("corpus", "list or export the built-in scenarios");
    corpus_cmd->add_option("--out", corpus_dir, "write one config JSON per scenario here");

    CLI11_PARSE(app, argc, argv);

    if (corpus_cmd->parsed()) return dump_corpus(corpus_dir);
    for (auto* sub : app.get_subcommands()) {
        auto cmd = corona::command_from_string(sub->get_name());
        if (cmd) {
            return run_command(*cmd, config_path, out_path, csv_dir,
                               slack >= 0.0 ? std::optional<double>(slack) : std::nullopt, jobs);
        }
    }
    return corona::kExitConfigError;
}
