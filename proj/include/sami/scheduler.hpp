#pragma once

// Initial placement and re-placement of services onto infrastructure nodes.
//
// Placement runs a fixed decision flow: Critical services are pinned to the
// MNO tier, latency-sensitive services prefer an open dealer, data-intensive
// (or MNO-oversized) services prefer a cloud, and everything else competes
// across all admissible nodes. Within the chosen set the node minimising
//
//     w_latency * norm(projected response) + w_cost * norm(projected charge)
//
// wins, where norm() is min-max over that set. Ties fall to lower response,
// then lower charge, then node id.

#include <optional>
#include <span>

#include "sami/model.hpp"

namespace sami {

enum class AdviceTrigger { DelayPressure, ComputeShortfall };

std::string_view to_string(AdviceTrigger t);

struct RescheduleAdvice {
    ServiceId service_id;
    AdviceTrigger trigger = AdviceTrigger::DelayPressure;
    std::optional<Tier> target_tier_hint;
    double projected_gain_ms = 0;
};

struct RescheduleResult {
    PlacementDecision decision;
    bool moved = false;
    double migration_delay_ms = 0;  // one-time copy of the service image
};

// Picks the best node among `candidates` (assumed admissible). Returns
// nullopt when the candidate list is empty.
std::optional<PlacementDecision> pick_best(const ServiceDescriptor& service,
                                           std::span<const ResourceNode* const> candidates,
                                           const SchedulerWeights& weights, PlacementReason reason, SimMs t);

// Throws NoAdmissibleNode when no node in any tier is admissible at t.
PlacementDecision schedule_service(const ServiceDescriptor& service, std::span<const ResourceNode> nodes,
                                   const SchedulerWeights& weights, SimMs t);

// Best admissible node restricted to one tier; used by pinned baseline
// policies. nullopt when that tier has no admissible node.
std::optional<PlacementDecision> schedule_in_tier(const ServiceDescriptor& service,
                                                  std::span<const ResourceNode> nodes, Tier tier,
                                                  const SchedulerWeights& weights, SimMs t);

// Re-runs placement with the advised tier tried first. The move happens only
// when the new projected response is strictly below the current one; for a
// ComputeShortfall the current figure includes the observed excess and the
// current node is excluded. Throws NoAdmissibleNode if nothing qualifies.
RescheduleResult reschedule(const ServiceDescriptor& service, const PlacementDecision& current,
                            const RescheduleAdvice& advice, std::span<const ResourceNode> nodes,
                            const SchedulerWeights& weights, SimMs t);

// Time to ship the service's stand-alone copy to `target`.
double migration_delay_ms(const ServiceDescriptor& service, const ResourceNode& target);

// Min/max of each cloud metric across a topology's clouds.
struct CloudNormalizers {
    double rtt_min = 0, rtt_max = 0;
    double bandwidth_min = 0, bandwidth_max = 0;
    double cost_min = 0, cost_max = 0;
    double security_min = 0, security_max = 0;
};

CloudNormalizers cloud_normalizers(std::span<const ResourceNode> nodes);

// Equal-weight mean of inverted rtt, bandwidth, inverted base fee, and
// security; 1.0 is best. A metric on which every cloud is equal scores 0.5.
double score_cloud(const ResourceNode& node, const CloudNormalizers& norm);

CloudClass classify_cloud(double score);

}  // namespace sami
