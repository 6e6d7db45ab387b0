#pragma once

// Runtime monitoring side of the arbitrator: the sliding-window context
// collector, the performance and computational analysers that suggest
// re-placement, the service profiler, and user preference tracking.

#include <deque>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "sami/model.hpp"
#include "sami/registry.hpp"
#include "sami/scheduler.hpp"

namespace sami {

// Every constant is scenario-overridable; these are the defaults.
struct Thresholds {
    double theta_ms_per_s = 5000;  // rate x mean latency pressure
    double delta_ms = 50;          // minimum projected gain worth moving for
    double k = 1.5;                // compute shortfall multiplier
    int m = 3;                     // consecutive slow executions
    int window = 100;              // sliding window size W
    double tol = 0.2;              // SLA tolerance for the profiler
    int min_samples = 20;
    double rebate_frac = 0.1;
    double analysis_interval_ms = 1000;

    friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

struct LatencySample {
    SimMs t = 0;
    double latency_ms = 0;
    double exec_ms = 0;
};

struct ServiceContext {
    std::deque<LatencySample> window;
    std::uint64_t invocations = 0;  // lifetime count seen by the collector
    double mean_latency_ms = 0;
    double p95_latency_ms = 0;
    double invocation_rate_per_s = 0;
    SimMs last_t = 0;

    std::vector<double> recent_exec_ms(std::size_t n) const;
};

struct NodeContext {
    int in_flight = 0;
    int cpu_slots = 1;
    double utilization = 0;
};

struct ContextSnapshot {
    std::size_t window_size = 100;
    std::map<NodeId, NodeContext> nodes;
    std::map<ServiceId, ServiceContext> services;

    // In-place form of collect_context. Throws OutOfOrderEvent when the
    // event's completion time precedes the service's last one.
    void record(const InvocationRecord& event);

    void set_node_load(const NodeId& node, int in_flight, int cpu_slots);

    // Forget a service's window (after it moves to another node).
    void reset_service(const ServiceId& id);
};

ContextSnapshot collect_context(const InvocationRecord& event, ContextSnapshot ctx);

// Nearest-rank percentile of an unsorted sample; 0 for an empty sample.
double nearest_rank_percentile(std::span<const double> values, double pct);

// DelayPressure when a latency-sensitive service is busy enough
// (rate x mean latency > theta) and a nearer tier offers a gain of at
// least delta over the observed mean latency. The hint names the nearest
// such tier.
std::optional<RescheduleAdvice> analyze_performance(const ContextSnapshot& ctx, const ServiceDescriptor& desc,
                                                    const PlacementDecision& current,
                                                    std::span<const ResourceNode> nodes,
                                                    const Thresholds& thresholds, SimMs t);

// ComputeShortfall when each of the last m observations exceeds k x the
// expected execution time. service_id is left empty for the caller.
std::optional<RescheduleAdvice> analyze_computation(std::span<const double> observed_exec_ms,
                                                    double expected_exec_ms, double k = 1.5, int m = 3);

enum class Recommendation { Keep, Replace };

struct ProfileVerdict {
    ServiceId service_id;
    bool functional_ok = false;
    bool latency_ok = false;
    Recommendation recommendation = Recommendation::Keep;
};

// FNV-1a 64 of the input, as 16 lowercase hex digits.
std::string test_vector_digest(std::string_view input);

ProfileVerdict profile_service(const ServiceRecord& record, const std::string& observed_digest,
                               double observed_p95_ms, double tol = 0.2);

// On a Replace verdict, swaps the service for the best-matching Active
// alternative that covers its tags. Returns the successor's id, or nullopt
// when the verdict is Keep or no compatible candidate exists.
std::optional<ServiceId> apply_verdict(Registry& registry, const ProfileVerdict& verdict);

UserProfile update_user_profile(UserProfile profile, const InvocationRecord& invocation);

}  // namespace sami
