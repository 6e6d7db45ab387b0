#include "sami/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <vector>

#include "sami/error.hpp"

namespace sami {

std::vector<double> ServiceContext::recent_exec_ms(std::size_t n) const {
    std::vector<double> out;
    const auto take = std::min(n, window.size());
    for (auto it = window.end() - static_cast<std::ptrdiff_t>(take); it != window.end(); ++it) {
        out.push_back(it->exec_ms);
    }
    return out;
}

double nearest_rank_percentile(std::span<const double> values, double pct) {
    if (values.empty()) return 0.0;
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    auto rank = static_cast<std::size_t>(std::ceil(pct / 100.0 * static_cast<double>(sorted.size())));
    rank = std::clamp<std::size_t>(rank, 1, sorted.size());
    return sorted[rank - 1];
}

void ContextSnapshot::record(const InvocationRecord& event) {
    auto& svc = services[event.service_id];
    if (svc.invocations > 0 && event.t_done < svc.last_t) {
        throw Error(ErrorCode::OutOfOrderEvent, "event for " + event.service_id + " at " +
                                                    std::to_string(event.t_done) + " precedes " +
                                                    std::to_string(svc.last_t));
    }
    svc.last_t = event.t_done;
    ++svc.invocations;
    svc.window.push_back({event.t_done, event.latency_ms(), event.exec_ms});
    while (svc.window.size() > window_size) svc.window.pop_front();

    std::vector<double> lat;
    lat.reserve(svc.window.size());
    for (const auto& s : svc.window) lat.push_back(s.latency_ms);
    svc.mean_latency_ms = std::accumulate(lat.begin(), lat.end(), 0.0) / static_cast<double>(lat.size());
    svc.p95_latency_ms = nearest_rank_percentile(lat, 95.0);
    const double span_ms = svc.window.back().t - svc.window.front().t;
    svc.invocation_rate_per_s =
        (svc.window.size() >= 2 && span_ms > 0) ? static_cast<double>(svc.window.size() - 1) / (span_ms / 1000.0) : 0.0;

    auto& node = nodes[event.node_id];
    node.utilization = node.cpu_slots > 0 ? static_cast<double>(node.in_flight) / node.cpu_slots : 0.0;
}

void ContextSnapshot::set_node_load(const NodeId& id, int in_flight, int cpu_slots) {
    auto& node = nodes[id];
    node.in_flight = in_flight;
    node.cpu_slots = cpu_slots;
    node.utilization = cpu_slots > 0 ? std::clamp(static_cast<double>(in_flight) / cpu_slots, 0.0, 1.0) : 0.0;
}

void ContextSnapshot::reset_service(const ServiceId& id) {
    auto it = services.find(id);
    if (it == services.end()) return;
    const auto last = it->second.last_t;
    const auto count = it->second.invocations;
    it->second = ServiceContext{};
    // Keep the ordering guard across resets.
    it->second.last_t = last;
    it->second.invocations = count;
}

ContextSnapshot collect_context(const InvocationRecord& event, ContextSnapshot ctx) {
    ctx.record(event);
    return ctx;
}

std::optional<RescheduleAdvice> analyze_performance(const ContextSnapshot& ctx, const ServiceDescriptor& desc,
                                                    const PlacementDecision& current,
                                                    std::span<const ResourceNode> nodes,
                                                    const Thresholds& thresholds, SimMs t) {
    auto it = ctx.services.find(desc.id);
    if (it == ctx.services.end()) return std::nullopt;
    const auto& svc = it->second;
    if (static_cast<int>(svc.window.size()) < thresholds.min_samples) return std::nullopt;
    if (!desc.latency_sensitive) return std::nullopt;
    if (!(svc.invocation_rate_per_s * svc.mean_latency_ms > thresholds.theta_ms_per_s)) return std::nullopt;

    for (Tier tier : {Tier::Dealer, Tier::MNO}) {
        if (proximity_rank(tier) >= proximity_rank(current.tier)) break;
        double best_gain = -std::numeric_limits<double>::infinity();
        for (const auto& n : nodes) {
            if (n.tier != tier || !is_admissible(desc, n, t)) continue;
            best_gain = std::max(best_gain, svc.mean_latency_ms - projected_response_ms(desc, n));
        }
        if (best_gain >= thresholds.delta_ms) {
            return RescheduleAdvice{desc.id, AdviceTrigger::DelayPressure, tier, best_gain};
        }
    }
    return std::nullopt;
}

std::optional<RescheduleAdvice> analyze_computation(std::span<const double> observed_exec_ms,
                                                    double expected_exec_ms, double k, int m) {
    if (!(expected_exec_ms > 0)) {
        throw Error(ErrorCode::PreconditionViolation, "expected execution time must be positive");
    }
    if (m < 1 || observed_exec_ms.size() < static_cast<std::size_t>(m)) return std::nullopt;
    const auto tail = observed_exec_ms.last(static_cast<std::size_t>(m));
    if (!std::all_of(tail.begin(), tail.end(), [&](double x) { return x > k * expected_exec_ms; })) {
        return std::nullopt;
    }
    const double mean = std::accumulate(observed_exec_ms.begin(), observed_exec_ms.end(), 0.0) /
                        static_cast<double>(observed_exec_ms.size());
    return RescheduleAdvice{{}, AdviceTrigger::ComputeShortfall, std::nullopt, mean - expected_exec_ms};
}

std::string test_vector_digest(std::string_view input) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : input) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ProfileVerdict profile_service(const ServiceRecord& record, const std::string& observed_digest,
                               double observed_p95_ms, double tol) {
    if (record.state != RecordState::Active) {
        throw Error(ErrorCode::NotFound, "service '" + record.descriptor.id + "' is not active");
    }
    ProfileVerdict v;
    v.service_id = record.descriptor.id;
    v.functional_ok = observed_digest == record.descriptor.test_vector.digest;
    v.latency_ok = observed_p95_ms <= record.descriptor.sla_latency_ms * (1.0 + tol);
    v.recommendation = (v.functional_ok && v.latency_ok) ? Recommendation::Keep : Recommendation::Replace;
    return v;
}

std::optional<ServiceId> apply_verdict(Registry& registry, const ProfileVerdict& verdict) {
    if (verdict.recommendation == Recommendation::Keep) return std::nullopt;
    const auto current = registry.get(verdict.service_id);
    FunctionalSpec query{current.descriptor.capability_tags, {}};
    for (const auto& m : registry.match_services(query)) {
        const auto& cand = m.record.descriptor;
        if (cand.id == current.descriptor.id) continue;
        const bool covers = std::includes(cand.capability_tags.begin(), cand.capability_tags.end(),
                                          current.descriptor.capability_tags.begin(),
                                          current.descriptor.capability_tags.end());
        if (!covers) continue;
        registry.replace_service(current.descriptor.id, cand.id);
        return cand.id;
    }
    return std::nullopt;
}

UserProfile update_user_profile(UserProfile profile, const InvocationRecord& invocation) {
    ++profile.invocation_history[invocation.service_id];
    return profile;
}

}  // namespace sami
