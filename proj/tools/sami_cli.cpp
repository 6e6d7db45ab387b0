#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sami/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Three-tier service placement simulator"};
    app.require_subcommand(1);

    std::string scenario;
    std::optional<std::uint64_t> seed;
    std::string policy = "sami";
    std::string out_dir = ".";
    std::string format = "both";

    auto* run = app.add_subcommand("run", "Simulate one policy and write metrics.csv / metrics.json");
    run->add_option("--scenario", scenario, "Scenario JSON file")->required();
    run->add_option("--seed", seed, "PRNG seed (default: scenario seed)");
    run->add_option("--policy", policy, "sami | cloud-only | mno-only | dealer-only");
    run->add_option("--out", out_dir, "Output directory");
    run->add_option("--format", format, "csv | json | both")->check(CLI::IsMember({"csv", "json", "both"}));

    auto* compare = app.add_subcommand("compare", "Simulate all four policies and write compare.csv");
    compare->add_option("--scenario", scenario, "Scenario JSON file")->required();
    compare->add_option("--seed", seed, "PRNG seed (default: scenario seed)");
    compare->add_option("--out", out_dir, "Output directory");

    auto* validate = app.add_subcommand("validate", "Check a scenario and its service descriptors");
    validate->add_option("--scenario", scenario, "Scenario JSON file")->required();

    auto* request = app.add_subcommand("request", "Answer JSON registry requests read line by line from stdin");
    request->add_option("--scenario", scenario, "Scenario JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return sami::cli::kExitConfig;
    }

    if (*run) {
        return sami::cli::cmd_run(scenario, seed, policy, out_dir, *sami::cli::parse_format(format), std::cerr);
    }
    if (*compare) return sami::cli::cmd_compare(scenario, seed, out_dir, std::cerr);
    if (*validate) return sami::cli::cmd_validate(scenario, std::cout, std::cerr);
    return sami::cli::cmd_request(scenario, std::cin, std::cout, std::cerr);
}
