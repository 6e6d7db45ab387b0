#pragma once

// Deterministic discrete-event simulation of the three-tier infrastructure.
//
// Each request transfers its payload to the service's current node, waits
// in that node's FIFO queue for one of cpu_slots execution slots, executes,
// and is then billed and energy-accounted. Under the arbitrated policy an
// analysis tick re-examines every placed service at a fixed interval and
// may move it; moving costs a one-time copy of the service image, during
// which the target node starts nothing.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sami/metrics.hpp"
#include "sami/registry.hpp"
#include "sami/topology.hpp"
#include "sami/workload.hpp"

namespace sami {

enum class Policy { Sami, CloudOnly, MnoOnly, DealerOnly };

std::string_view to_string(Policy p);
std::optional<Policy> parse_policy(std::string_view s);
inline constexpr Policy kAllPolicies[] = {Policy::Sami, Policy::CloudOnly, Policy::MnoOnly, Policy::DealerOnly};

enum class EventKind { Arrival, TransferDone, ExecDone, DealerOpen, DealerClose, AnalysisTick, MigrationDone };

struct SimEvent {
    SimMs time_ms = 0;
    std::uint64_t seq = 0;
    EventKind kind = EventKind::Arrival;
    std::size_t ref = 0;  // request index, node index, or migration index by kind
};

enum class ArbitrationKind { Registration, AnalysisEvaluation, Reschedule };

std::string_view to_string(ArbitrationKind k);

// One unit of arbitrator work; the overhead metric counts these.
struct ArbitrationEvent {
    SimMs t = 0;
    ArbitrationKind kind = ArbitrationKind::Registration;
    ServiceId service_id;
    NodeId from_node;  // empty for registrations and evaluations
    NodeId to_node;
    std::optional<AdviceTrigger> trigger;  // analysis-driven moves only
};

struct SimResult {
    MetricsReport report;
    std::vector<InvocationRecord> records;  // finished requests, in completion order
    std::vector<ArbitrationEvent> log;
    std::map<ConsumerId, UserProfile> profiles;
    std::uint64_t arrivals = 0;
    std::uint64_t in_flight_at_horizon = 0;
    std::uint64_t max_concurrency_violations = 0;  // starts beyond cpu_slots
};

// Runs `workload` on an already-built topology. Services are registered into
// `registry` at t = 0. Throws StandardViolation/DuplicateService for bad
// descriptors and, under the arbitrated policy, NoAdmissibleNode when a
// service cannot be placed at setup.
SimResult run(const Topology& topology, Registry& registry, const Scenario& workload, std::uint64_t seed,
              SimMs horizon_ms, Policy policy = Policy::Sami);

// Builds topology and registry from the scenario and runs it.
SimResult simulate(const Scenario& scenario, Policy policy, std::uint64_t seed);

}  // namespace sami
