#include "sami/cli.hpp"

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "sami/envelope.hpp"
#include "sami/error.hpp"
#include "sami/metrics.hpp"
#include "sami/sim.hpp"
#include "sami/standard.hpp"
#include "sami/workload.hpp"

namespace sami::cli {

namespace {

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::ConfigError:
        case ErrorCode::ParseError:
        case ErrorCode::ValidationError:
        case ErrorCode::StandardViolation:
        case ErrorCode::DuplicateService:
            return kExitConfig;
        case ErrorCode::NoAdmissibleNode:
            return kExitNoPlacement;
        default:
            return kExitInternal;
    }
}

int report_error(const Error& e, std::ostream& err) {
    err << "error: " << e.what() << '\n';
    for (const auto& d : e.details()) err << "  " << d << '\n';
    return exit_code_for(e.code());
}

// Writes atomically enough for a batch tool: whole string, then close.
void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw Error(ErrorCode::ConfigError, "cannot write " + path.string());
    os << content;
    if (!os.flush()) throw Error(ErrorCode::ConfigError, "write failed for " + path.string());
}

void ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::ConfigError, "cannot create " + dir.string() + ": " + ec.message());
}

template <class F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const Error& e) {
        return report_error(e, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInternal;
    }
}

}  // namespace

std::optional<Format> parse_format(std::string_view s) {
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    if (s == "both") return Format::Both;
    return std::nullopt;
}

int cmd_run(const std::filesystem::path& scenario_path, std::optional<std::uint64_t> seed, const std::string& policy,
            const std::filesystem::path& out_dir, Format format, std::ostream& err) {
    return guarded(err, [&] {
        const auto p = parse_policy(policy);
        if (!p) {
            err << "error: unknown policy '" << policy << "' (sami, cloud-only, mno-only, dealer-only)\n";
            return kExitConfig;
        }
        const auto scenario = load_scenario(scenario_path);
        const auto result = simulate(scenario, *p, seed.value_or(scenario.seed));
        ensure_dir(out_dir);
        if (format != Format::Json) {
            std::ostringstream csv;
            write_metrics_csv(csv, {result.report});
            write_file(out_dir / "metrics.csv", csv.str());
        }
        if (format != Format::Csv) {
            write_file(out_dir / "metrics.json", metrics_json(result.report).dump(2) + "\n");
        }
        return kExitOk;
    });
}

int cmd_compare(const std::filesystem::path& scenario_path, std::optional<std::uint64_t> seed,
                const std::filesystem::path& out_dir, std::ostream& err) {
    return guarded(err, [&] {
        const auto scenario = load_scenario(scenario_path);
        const auto s = seed.value_or(scenario.seed);
        std::vector<std::future<SimResult>> jobs;
        for (Policy p : kAllPolicies) {
            jobs.push_back(std::async(std::launch::async, [&scenario, p, s] { return simulate(scenario, p, s); }));
        }
        std::vector<MetricsReport> reports;
        for (auto& j : jobs) reports.push_back(j.get().report);
        ensure_dir(out_dir);
        std::ostringstream csv;
        write_metrics_csv(csv, reports);
        write_file(out_dir / "compare.csv", csv.str());
        return kExitOk;
    });
}

int cmd_validate(const std::filesystem::path& scenario_path, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        Scenario scenario;
        try {
            scenario = load_scenario(scenario_path);
        } catch (const Error& e) {
            out << e.what() << '\n';
            for (const auto& d : e.details()) out << d << '\n';
            return exit_code_for(e.code());
        }

        std::size_t problems = 0;
        for (const auto& svc : scenario.services) {
            for (const auto& v : enforce_standard(svc, scenario.vocabulary)) {
                out << svc.id << ": " << format_violation(v) << '\n';
                ++problems;
            }
        }
        if (problems > 0) return kExitConfig;

        // Duplicate ids and placement surface through the same path as live
        // registration requests.
        const auto topology = build_topology(scenario.nodes);
        Registry scratch(scenario.vocabulary);
        for (const auto& svc : scenario.services) {
            EnvelopeHandler h(scratch, topology, scenario.weights_for(svc.id));
            const auto resp = h.handle({{"op", "register"}, {"body", service_to_json(svc)}});
            if (resp.at("ok").get<bool>()) continue;
            const auto& e = resp.at("error");
            const auto code = e.at("code").get<std::string>();
            if (code == "NoAdmissibleNode") {
                out << "warning: " << svc.id << ": no admissible node at t=0\n";
                continue;
            }
            out << svc.id << ": " << e.at("message").get<std::string>() << '\n';
            ++problems;
        }
        return problems > 0 ? kExitConfig : kExitOk;
    });
}

int cmd_request(const std::filesystem::path& scenario_path, std::istream& in, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto scenario = load_scenario(scenario_path);
        const auto topology = build_topology(scenario.nodes);
        Registry registry(scenario.vocabulary);
        for (const auto& svc : scenario.services) {
            registry.register_service(svc, topology, scenario.weights_for(svc.id), 0);
        }
        EnvelopeHandler handler(registry, topology, scenario.weights);
        std::string line;
        while (std::getline(in, line)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            nlohmann::json req;
            try {
                req = nlohmann::json::parse(line);
            } catch (const nlohmann::json::parse_error& e) {
                out << nlohmann::json{{"ok", false},
                                      {"error", {{"code", "ParseError"}, {"message", e.what()}, {"details", {}}}}}
                           .dump()
                    << '\n';
                continue;
            }
            out << handler.handle(req).dump() << '\n';
        }
        return kExitOk;
    });
}

}  // namespace sami::cli
