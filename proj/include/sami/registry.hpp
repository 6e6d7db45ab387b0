#pragma once

// Service registry: the store of registered services and their placements,
// plus discovery by name, matching by capability tags, and composition of
// several services when no single one covers a goal.
//
// Reads take a shared lock; every mutation (register, replace, deregister,
// placement update) runs under one exclusive lock, so callers always see
// whole records.

#include <map>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include "sami/model.hpp"
#include "sami/standard.hpp"
#include "sami/topology.hpp"

namespace sami {

enum class RecordState { Active, Replaced, Deregistered };

std::string_view to_string(RecordState s);

struct ServiceRecord {
    ServiceDescriptor descriptor;
    PlacementDecision placement;
    SimMs registered_at = 0;
    RecordState state = RecordState::Active;
    std::optional<ServiceId> replaced_by;  // forwarding link once Replaced
};

struct FunctionalSpec {
    std::set<std::string> required_tags;
    std::vector<std::string> keywords;  // optional description filter
};

struct MatchResult {
    ServiceRecord record;
    double score = 0;  // Jaccard overlap with the query tags
};

struct CompositePlan {
    std::vector<ServiceId> steps;
    std::set<std::string> covered_tags;
    std::set<std::string> residual_tags;
};

class Registry {
public:
    explicit Registry(Vocabulary vocab = {}) : vocab_(std::move(vocab)) {}

    Registry(const Registry&) = delete;
    Registry& operator=(const Registry&) = delete;

    // Checks the descriptor against the standard, then asks the scheduler
    // for a placement. Throws StandardViolation, DuplicateService, or
    // NoAdmissibleNode.
    ServiceRecord register_service(const ServiceDescriptor& desc, const Topology& topology,
                                   const SchedulerWeights& weights, SimMs t);

    // Registration with a placement chosen elsewhere (pinned policies).
    ServiceRecord register_with_placement(const ServiceDescriptor& desc, const PlacementDecision& placement,
                                          SimMs t);

    // Highest-semver Active record for `name` (or the exact version), falling
    // back to the successor of a Replaced record. Throws NotFound.
    ServiceRecord discover_service(const std::string& name,
                                   const std::optional<std::string>& version = std::nullopt) const;

    std::vector<MatchResult> match_services(const FunctionalSpec& query) const;

    // Greedy set cover. Throws UncoverableGoal (details = residual tags).
    CompositePlan compose_services(const FunctionalSpec& goal) const;

    // Same cover, reporting residual tags instead of throwing.
    CompositePlan plan_composition(const FunctionalSpec& goal) const;

    // Marks `old_id` Replaced with a link to `new_id`. Returns the old record.
    ServiceRecord replace_service(const ServiceId& old_id, const ServiceId& new_id);

    ServiceRecord deregister_service(const ServiceId& id);

    ServiceRecord update_placement(const ServiceId& id, const PlacementDecision& placement);

    ServiceRecord get(const ServiceId& id) const;
    std::vector<ServiceRecord> records() const;
    std::size_t active_count() const;

    const Vocabulary& vocabulary() const { return vocab_; }

private:
    void check_insertable(const ServiceDescriptor& desc) const;
    const ServiceRecord* resolve_forward(const ServiceRecord& rec) const;

    mutable std::shared_mutex mu_;
    Vocabulary vocab_;
    std::map<ServiceId, ServiceRecord> records_;
};

}  // namespace sami
