#pragma once

// Shared domain types for the broker: service descriptors, infrastructure
// nodes, placement decisions, and the two primitives every other component
// builds on (admissibility and projected response time).

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>

namespace sami {

using ServiceId = std::string;
using NodeId = std::string;
using ConsumerId = std::string;

// Simulated time in milliseconds since the start of day 0.
using SimMs = double;

inline constexpr double kMinutesPerDay = 1440.0;
inline constexpr double kMsPerMinute = 60000.0;

enum class Tier { Dealer, MNO, Cloud };
enum class SecurityClass { Public, Sensitive, Critical };
enum class TrustLevel { Untrusted = 0, Low = 1, Medium = 2, High = 3 };
enum class TrustBasis { Established, Aggregated, Indirect, Reputation };
enum class CloudClass { Low, Mid, High };
enum class PlacementReason { SecurityPin, LatencyPreference, DataIntensive, CapacityFallback, Reschedule };
enum class Outcome { Completed, Rejected, Dropped };

std::string_view to_string(Tier t);
std::string_view to_string(SecurityClass c);
std::string_view to_string(TrustLevel l);
std::string_view to_string(TrustBasis b);
std::string_view to_string(CloudClass c);
std::string_view to_string(PlacementReason r);
std::string_view to_string(Outcome o);

std::optional<Tier> parse_tier(std::string_view s);
std::optional<SecurityClass> parse_security_class(std::string_view s);
std::optional<TrustLevel> parse_trust_level(std::string_view s);
std::optional<TrustBasis> parse_trust_basis(std::string_view s);

// Tiers ordered by proximity to the consumer: Dealer is nearest.
constexpr int proximity_rank(Tier t) { return static_cast<int>(t); }

struct TrustAssessment {
    TrustLevel level = TrustLevel::Untrusted;
    TrustBasis basis = TrustBasis::Established;

    friend bool operator==(const TrustAssessment&, const TrustAssessment&) = default;
};

struct QoSParameters {
    double wan_delay_ms = 0;
    double jitter_ms = 0;
    double session_reestablish_ms = 0;
    double bandwidth_mbps = 0;
    double security_degree = 0;
};

struct Tariff {
    double base_fee = 0;   // per invocation
    double cpu_rate = 0;   // per cpu-second
    double data_rate = 0;  // per MB moved

    friend bool operator==(const Tariff&, const Tariff&) = default;
};

struct OpenHours {
    int open_minute = 0;
    int close_minute = 0;

    friend bool operator==(const OpenHours&, const OpenHours&) = default;
};

struct TestVector {
    std::string input;
    std::string digest;

    friend bool operator==(const TestVector&, const TestVector&) = default;
};

struct ServiceDescriptor {
    ServiceId id;
    std::string name;
    std::string version;
    std::set<std::string> capability_tags;
    std::string description;
    double cpu_demand = 0;      // mega-instructions per invocation
    double mem_demand = 0;      // MB
    double storage_demand = 0;  // MB
    double payload_in = 0;      // MB per invocation
    double payload_out = 0;     // MB per invocation
    bool latency_sensitive = false;
    bool data_intensive = false;
    SecurityClass security_class = SecurityClass::Public;
    double sla_latency_ms = 1000;  // target p95
    TestVector test_vector;

    double payload_total() const { return payload_in + payload_out; }

    friend bool operator==(const ServiceDescriptor&, const ServiceDescriptor&) = default;
};

struct ResourceNode {
    NodeId id;
    Tier tier = Tier::Cloud;
    double cpu_speed = 1;  // mega-instructions per second
    int cpu_slots = 1;
    double mem_capacity = 0;
    std::optional<double> storage_capacity;  // absent = unbounded
    double rtt_ms = 1;
    double bandwidth_mbps = 1;
    bool internet_path = true;
    TrustAssessment trust;
    Tariff tariff;
    std::optional<OpenHours> open_hours;
    double security_norm = 0;

    // Simulation knobs that feed QoS-based rebates and observed execution.
    double jitter_ms = 0;
    double session_reestablish_ms = 0;
    double speed_factor = 1.0;  // delivered / advertised cpu speed

    std::optional<CloudClass> cloud_class;  // filled by build_topology

    QoSParameters qos() const {
        return {rtt_ms, jitter_ms, session_reestablish_ms, bandwidth_mbps, security_norm};
    }

    friend bool operator==(const ResourceNode&, const ResourceNode&) = default;
};

struct PlacementDecision {
    ServiceId service_id;
    NodeId node_id;
    Tier tier = Tier::Cloud;
    double objective_ms = 0;
    PlacementReason reason = PlacementReason::CapacityFallback;
    SimMs decided_at = 0;

    friend bool operator==(const PlacementDecision&, const PlacementDecision&) = default;
};

struct SchedulerWeights {
    double w_latency = 0.7;
    double w_cost = 0.3;

    friend bool operator==(const SchedulerWeights&, const SchedulerWeights&) = default;
};

struct UserProfile {
    ConsumerId consumer_id;
    SchedulerWeights weights;
    std::map<ServiceId, std::uint64_t> invocation_history;
};

struct InvocationRecord {
    std::uint64_t request_id = 0;
    ServiceId service_id;
    ConsumerId consumer_id;
    NodeId node_id;
    SimMs t_arrive = 0;
    SimMs t_start = 0;
    SimMs t_done = 0;
    double transfer_ms = 0;
    double exec_ms = 0;
    double queue_ms = 0;
    double payload_mb = 0;
    double energy_j = 0;
    double charge = 0;
    Outcome outcome = Outcome::Completed;

    double latency_ms() const { return t_done - t_arrive; }
};

// Link arithmetic: time to move `mb` megabytes over a `mbps` link.
double transmit_ms(double mb, double bandwidth_mbps);

// rtt + transfer of both payloads + compute at the advertised speed.
double projected_response_ms(const ServiceDescriptor& service, const ResourceNode& node);

// Execution time at the node's advertised speed.
double expected_exec_ms(const ServiceDescriptor& service, const ResourceNode& node);

// Minute-of-day window check used for dealers; nodes without hours are
// always open.
bool within_open_hours(const ResourceNode& node, SimMs t);

// Capacity, dealer hours, security gate, and minimum trust.
bool is_admissible(const ServiceDescriptor& service, const ResourceNode& node, SimMs t);

// The capacity part of admissibility alone (demands fit the node).
bool fits_capacity(const ServiceDescriptor& service, const ResourceNode& node);

// The security gate alone (clause c).
bool passes_security_gate(const ServiceDescriptor& service, const ResourceNode& node);

}  // namespace sami
