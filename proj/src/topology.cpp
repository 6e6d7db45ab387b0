#include "sami/topology.hpp"

#include <algorithm>
#include <set>

#include "sami/error.hpp"
#include "sami/scheduler.hpp"

namespace sami {

const ResourceNode* Topology::find(const NodeId& id) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id,
                               [](const ResourceNode& n, const NodeId& key) { return n.id < key; });
    return (it != nodes_.end() && it->id == id) ? &*it : nullptr;
}

const ResourceNode& Topology::at(const NodeId& id) const {
    if (const auto* n = find(id)) return *n;
    throw Error(ErrorCode::NotFound, "node " + id);
}

std::vector<std::string> validate_node(const ResourceNode& node) {
    std::vector<std::string> errs;
    if (node.id.empty()) errs.emplace_back("id: must be nonempty");
    if (!(node.cpu_speed > 0)) errs.emplace_back("cpu_speed: must be > 0");
    if (node.cpu_slots < 1) errs.emplace_back("cpu_slots: must be >= 1");
    if (node.mem_capacity < 0) errs.emplace_back("mem_capacity: must be >= 0");
    if (node.storage_capacity && *node.storage_capacity < 0) errs.emplace_back("storage_capacity: must be >= 0");
    if (!(node.rtt_ms > 0)) errs.emplace_back("rtt_ms: must be > 0");
    if (!(node.bandwidth_mbps > 0)) errs.emplace_back("bandwidth_mbps: must be > 0");
    if (node.security_norm < 0 || node.security_norm > 1) errs.emplace_back("security_norm: must lie in [0,1]");
    if (node.jitter_ms < 0) errs.emplace_back("jitter_ms: must be >= 0");
    if (node.session_reestablish_ms < 0) errs.emplace_back("session_reestablish_ms: must be >= 0");
    if (!(node.speed_factor > 0)) errs.emplace_back("speed_factor: must be > 0");
    if (node.tariff.base_fee < 0 || node.tariff.cpu_rate < 0 || node.tariff.data_rate < 0) {
        errs.emplace_back("tariff: rates must be >= 0");
    }
    switch (node.tier) {
    case Tier::Dealer:
        if (!node.open_hours) {
            errs.emplace_back("open_hours: required for Dealer nodes");
        } else if (node.open_hours->open_minute < 0 || node.open_hours->close_minute > kMinutesPerDay ||
                   node.open_hours->open_minute >= node.open_hours->close_minute) {
            errs.emplace_back("open_hours: need 0 <= open < close <= 1440");
        }
        break;
    case Tier::MNO:
        if (node.internet_path) errs.emplace_back("internet_path: must be false for MNO nodes");
        if (node.open_hours) errs.emplace_back("open_hours: only Dealer nodes have operating hours");
        break;
    case Tier::Cloud:
        if (!node.internet_path) errs.emplace_back("internet_path: must be true for Cloud nodes");
        if (node.open_hours) errs.emplace_back("open_hours: only Dealer nodes have operating hours");
        break;
    }
    return errs;
}

Topology build_topology(std::vector<ResourceNode> nodes) {
    std::vector<std::string> errs;
    if (nodes.empty()) errs.emplace_back("nodes: at least one node is required");
    std::set<NodeId> seen;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto prefix = "nodes[" + std::to_string(i) + "].";
        for (const auto& e : validate_node(nodes[i])) errs.push_back(prefix + e);
        if (!seen.insert(nodes[i].id).second) errs.push_back(prefix + "id: duplicate node id '" + nodes[i].id + "'");
    }
    if (!errs.empty()) throw Error(ErrorCode::ConfigError, "invalid topology", std::move(errs));

    std::sort(nodes.begin(), nodes.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    const auto norm = cloud_normalizers(nodes);
    for (auto& n : nodes) {
        n.cloud_class = n.tier == Tier::Cloud ? std::optional{classify_cloud(score_cloud(n, norm))} : std::nullopt;
    }
    Topology topo;
    topo.nodes_ = std::move(nodes);
    return topo;
}

}  // namespace sami
