#pragma once

// Scenario files and synthetic arrivals.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "sami/analysis.hpp"
#include "sami/infra.hpp"
#include "sami/model.hpp"
#include "sami/standard.hpp"

namespace sami {

struct ConsumerSpec {
    ConsumerId id;
    std::optional<SchedulerWeights> weights;
    std::map<ServiceId, double> rates;  // requests per second

    friend bool operator==(const ConsumerSpec&, const ConsumerSpec&) = default;
};

struct Scenario {
    std::string name;
    std::uint64_t seed = 1;
    SimMs horizon_ms = 60000;
    std::optional<std::string> vocabulary_path;  // as written, relative to the scenario file
    Vocabulary vocabulary;
    SchedulerWeights weights;
    Thresholds thresholds;
    EnergyModel energy;
    std::map<Tier, Tariff> tariffs;  // tier defaults
    std::vector<ResourceNode> nodes;
    std::vector<ServiceDescriptor> services;
    std::vector<ConsumerSpec> consumers;

    const ServiceDescriptor* find_service(const ServiceId& id) const;

    // Weights used to place `service`: those of the consumer with the highest
    // arrival rate for it (ties by consumer id) when that consumer overrides
    // them, else the scenario default.
    SchedulerWeights weights_for(const ServiceId& service) const;
};

// Throws ParseError for malformed JSON and ValidationError (details = one
// "path: message" per problem, all reported together).
Scenario load_scenario(const std::filesystem::path& path);

// `base_dir` resolves the vocabulary path.
Scenario parse_scenario(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});

nlohmann::json serialize_scenario(const Scenario& scenario);

// A single service block in scenario syntax. Throws ValidationError.
ServiceDescriptor parse_service(const nlohmann::json& block);
nlohmann::json service_to_json(const ServiceDescriptor& service);

// Counter-based 64-bit generator (splitmix64 recurrence).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}
    std::uint64_t next();
    // Uniform in [0, 1) with 53 random bits.
    double next_unit();

private:
    std::uint64_t state_;
};

// FNV-1a 64 of "<consumer>/<service>"; xor-ed with the run seed to seed the
// pair's stream, so editing one pair never shifts another's arrivals.
std::uint64_t stream_key(const ConsumerId& consumer, const ServiceId& service);

struct Arrival {
    SimMs t = 0;
    ConsumerId consumer_id;
    ServiceId service_id;
};

// Poisson arrivals on [0, horizon) for one (consumer, service) stream.
std::vector<Arrival> generate_stream(const ConsumerId& consumer, const ServiceId& service, double rate_per_s,
                                     SimMs horizon_ms, std::uint64_t seed);

// All streams merged, ordered by (t, consumer, service).
std::vector<Arrival> generate_workload(const Scenario& scenario, std::uint64_t seed);

}  // namespace sami
