#include "sami/scheduler.hpp"

#include <algorithm>
#include <limits>
#include <tuple>
#include <vector>

#include "sami/billing.hpp"
#include "sami/error.hpp"

namespace sami {

std::string_view to_string(AdviceTrigger t) {
    return t == AdviceTrigger::DelayPressure ? "DelayPressure" : "ComputeShortfall";
}

namespace {

double normalize(double x, double lo, double hi) {
    return hi > lo ? (x - lo) / (hi - lo) : 0.0;
}

std::vector<const ResourceNode*> admissible_nodes(const ServiceDescriptor& service,
                                                  std::span<const ResourceNode> nodes, SimMs t) {
    std::vector<const ResourceNode*> out;
    for (const auto& n : nodes) {
        if (is_admissible(service, n, t)) out.push_back(&n);
    }
    return out;
}

std::vector<const ResourceNode*> of_tier(const std::vector<const ResourceNode*>& nodes, Tier tier) {
    std::vector<const ResourceNode*> out;
    std::copy_if(nodes.begin(), nodes.end(), std::back_inserter(out),
                 [tier](const ResourceNode* n) { return n->tier == tier; });
    return out;
}

// True when at least one MNO exists and none of them can hold the service.
bool exceeds_all_mno_storage(const ServiceDescriptor& service, std::span<const ResourceNode> nodes) {
    bool any_mno = false;
    for (const auto& n : nodes) {
        if (n.tier != Tier::MNO) continue;
        any_mno = true;
        if (!n.storage_capacity || service.storage_demand <= *n.storage_capacity) return false;
    }
    return any_mno;
}

}  // namespace

std::optional<PlacementDecision> pick_best(const ServiceDescriptor& service,
                                           std::span<const ResourceNode* const> candidates,
                                           const SchedulerWeights& weights, PlacementReason reason, SimMs t) {
    if (candidates.empty()) return std::nullopt;

    struct Scored {
        const ResourceNode* node;
        double response;
        double charge;
    };
    std::vector<Scored> scored;
    scored.reserve(candidates.size());
    double r_lo = std::numeric_limits<double>::infinity(), r_hi = -r_lo;
    double c_lo = r_lo, c_hi = -r_lo;
    for (const auto* n : candidates) {
        Scored s{n, projected_response_ms(service, *n), billing::projected_charge(service, *n)};
        r_lo = std::min(r_lo, s.response);
        r_hi = std::max(r_hi, s.response);
        c_lo = std::min(c_lo, s.charge);
        c_hi = std::max(c_hi, s.charge);
        scored.push_back(s);
    }

    auto key = [&](const Scored& s) {
        const double objective =
            weights.w_latency * normalize(s.response, r_lo, r_hi) + weights.w_cost * normalize(s.charge, c_lo, c_hi);
        return std::make_tuple(objective, s.response, s.charge, std::cref(s.node->id));
    };
    const auto best = std::min_element(scored.begin(), scored.end(),
                                       [&](const Scored& a, const Scored& b) { return key(a) < key(b); });

    return PlacementDecision{service.id, best->node->id, best->node->tier, best->response, reason, t};
}

PlacementDecision schedule_service(const ServiceDescriptor& service, std::span<const ResourceNode> nodes,
                                   const SchedulerWeights& weights, SimMs t) {
    if (nodes.empty()) throw Error(ErrorCode::NoAdmissibleNode, "topology is empty");
    const auto admissible = admissible_nodes(service, nodes, t);

    std::vector<const ResourceNode*> preferred;
    PlacementReason reason = PlacementReason::CapacityFallback;
    if (service.security_class == SecurityClass::Critical) {
        preferred = of_tier(admissible, Tier::MNO);
        reason = PlacementReason::SecurityPin;
    } else if (auto dealers = of_tier(admissible, Tier::Dealer); service.latency_sensitive && !dealers.empty()) {
        preferred = std::move(dealers);
        reason = PlacementReason::LatencyPreference;
    } else if (service.data_intensive || exceeds_all_mno_storage(service, nodes)) {
        preferred = of_tier(admissible, Tier::Cloud);
        reason = PlacementReason::DataIntensive;
    }

    if (auto d = pick_best(service, preferred, weights, reason, t)) return *d;
    if (auto d = pick_best(service, admissible, weights, PlacementReason::CapacityFallback, t)) return *d;
    throw Error(ErrorCode::NoAdmissibleNode, "no admissible node for service " + service.id);
}

std::optional<PlacementDecision> schedule_in_tier(const ServiceDescriptor& service,
                                                  std::span<const ResourceNode> nodes, Tier tier,
                                                  const SchedulerWeights& weights, SimMs t) {
    const auto candidates = of_tier(admissible_nodes(service, nodes, t), tier);
    return pick_best(service, candidates, weights, PlacementReason::CapacityFallback, t);
}

double migration_delay_ms(const ServiceDescriptor& service, const ResourceNode& target) {
    return transmit_ms(service.storage_demand, target.bandwidth_mbps);
}

RescheduleResult reschedule(const ServiceDescriptor& service, const PlacementDecision& current,
                            const RescheduleAdvice& advice, std::span<const ResourceNode> nodes,
                            const SchedulerWeights& weights, SimMs t) {
    if (!(advice.projected_gain_ms > 0)) {
        throw Error(ErrorCode::PreconditionViolation, "advice must carry a positive projected gain");
    }

    std::vector<ResourceNode> pool(nodes.begin(), nodes.end());
    double current_objective = current.objective_ms;
    if (advice.trigger == AdviceTrigger::ComputeShortfall) {
        std::erase_if(pool, [&](const ResourceNode& n) { return n.id == current.node_id; });
        current_objective += advice.projected_gain_ms;
    }

    std::optional<PlacementDecision> candidate;
    if (advice.target_tier_hint) {
        candidate = schedule_in_tier(service, pool, *advice.target_tier_hint, weights, t);
    }
    if (!candidate) candidate = schedule_service(service, pool, weights, t);

    RescheduleResult out{current, false, 0.0};
    if (candidate->node_id == current.node_id || !(candidate->objective_ms < current_objective)) return out;

    const auto target = std::find_if(pool.begin(), pool.end(),
                                     [&](const ResourceNode& n) { return n.id == candidate->node_id; });
    out.decision = *candidate;
    out.decision.reason = PlacementReason::Reschedule;
    out.decision.decided_at = t;
    out.moved = true;
    out.migration_delay_ms = migration_delay_ms(service, *target);
    return out;
}

CloudNormalizers cloud_normalizers(std::span<const ResourceNode> nodes) {
    CloudNormalizers n;
    bool first = true;
    for (const auto& node : nodes) {
        if (node.tier != Tier::Cloud) continue;
        const double cost = node.tariff.base_fee;
        if (first) {
            n = {node.rtt_ms, node.rtt_ms, node.bandwidth_mbps, node.bandwidth_mbps,
                 cost,        cost,        node.security_norm,  node.security_norm};
            first = false;
            continue;
        }
        n.rtt_min = std::min(n.rtt_min, node.rtt_ms);
        n.rtt_max = std::max(n.rtt_max, node.rtt_ms);
        n.bandwidth_min = std::min(n.bandwidth_min, node.bandwidth_mbps);
        n.bandwidth_max = std::max(n.bandwidth_max, node.bandwidth_mbps);
        n.cost_min = std::min(n.cost_min, cost);
        n.cost_max = std::max(n.cost_max, cost);
        n.security_min = std::min(n.security_min, node.security_norm);
        n.security_max = std::max(n.security_max, node.security_norm);
    }
    return n;
}

namespace {

double higher_is_better(double x, double lo, double hi) {
    return hi > lo ? (x - lo) / (hi - lo) : 0.5;
}

double lower_is_better(double x, double lo, double hi) {
    return hi > lo ? (hi - x) / (hi - lo) : 0.5;
}

}  // namespace

double score_cloud(const ResourceNode& node, const CloudNormalizers& norm) {
    if (node.tier != Tier::Cloud) throw Error(ErrorCode::NonCloudNode, node.id + " is not a cloud");
    const double terms = lower_is_better(node.rtt_ms, norm.rtt_min, norm.rtt_max) +
                         higher_is_better(node.bandwidth_mbps, norm.bandwidth_min, norm.bandwidth_max) +
                         lower_is_better(node.tariff.base_fee, norm.cost_min, norm.cost_max) +
                         higher_is_better(node.security_norm, norm.security_min, norm.security_max);
    return terms / 4.0;
}

CloudClass classify_cloud(double score) {
    if (score >= 2.0 / 3.0) return CloudClass::High;
    if (score >= 1.0 / 3.0) return CloudClass::Mid;
    return CloudClass::Low;
}

}  // namespace sami
