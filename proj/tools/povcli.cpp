#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pov/scenario.hpp"

namespace {

int emit(const pov::Report& report, const std::string& format, const std::string& out_path) {
    const std::string body = format == "csv" ? report.csv : report.summary.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << body;
        return 0;
    }
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "povcli: invalid-input: cannot write '" << out_path << "'\n";
        return 2;
    }
    out << body;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact simulator and equilibrium checker for propose-or-vote polities"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string out_path;
    std::string format = "json";
    std::optional<std::uint64_t> seed;
    std::optional<std::string> epsilon;
    std::optional<std::string> grid_step;
    std::optional<int> max_proposers;

    app.add_option("--config", config_path, "scenario JSON file")->required();
    app.add_option("--out", out_path, "write the report here instead of stdout");
    app.add_option("--format", format, "report format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--seed", seed, "override the scenario seed");
    app.add_option("--epsilon", epsilon, "override the deviation shift (rational)");
    app.add_option("--grid-step", grid_step, "override the candidate grid step (rational)");
    app.add_option("--max-proposers", max_proposers, "override the enumeration proposer cap");

    app.add_subcommand("verify", "certify the configured (or canonical median) profile");
    app.add_subcommand("enumerate", "list every certified equilibrium");
    app.add_subcommand("tournament", "enumerate under sequential-elimination semantics");
    app.add_subcommand("election", "enumerate the discrete office-election variant");
    app.add_subcommand("sample", "draw outcomes and tabulate frequencies");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? 0 : 2;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        pov::ScenarioConfig config = pov::ScenarioConfig::from_file(config_path);
        if (seed) config.seed = *seed;
        if (epsilon) config.epsilon = pov::rat_from_string(*epsilon);
        if (grid_step) config.grid_step = pov::rat_from_string(*grid_step);
        if (max_proposers) config.max_proposers = *max_proposers;
        if (command == "tournament") config.variant = pov::Variant::Tournament;
        if (command == "election") config.variant = pov::Variant::Election;

        pov::Report report;
        if (command == "verify") {
            report = pov::run_verify(config);
        } else if (command == "sample") {
            report = pov::run_sample(config);
        } else {
            report = pov::run_enumerate(config);
        }
        return emit(report, format, out_path);
    } catch (const pov::tractability_error& err) {
        std::cerr << "povcli: instance-too-large: " << err.what() << "\n";
        return 3;
    } catch (const pov::validation_error& err) {
        std::cerr << "povcli: invalid-input: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "povcli: invalid-input: " << err.what() << "\n";
        return 2;
    }
}
