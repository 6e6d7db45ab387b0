#pragma once

#include <span>
#include <vector>

#include "sami/model.hpp"

namespace sami {

// Validated node set, ordered by id, with cloud performance classes filled.
class Topology {
public:
    Topology() = default;

    std::span<const ResourceNode> nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }
    bool empty() const { return nodes_.empty(); }

    // nullptr when absent.
    const ResourceNode* find(const NodeId& id) const;
    const ResourceNode& at(const NodeId& id) const;

    friend Topology build_topology(std::vector<ResourceNode> nodes);

private:
    std::vector<ResourceNode> nodes_;
};

// Validates node invariants and orders nodes by id. Throws ConfigError whose
// details carry one "nodes[i].field: message" entry per problem.
Topology build_topology(std::vector<ResourceNode> nodes);

// Node-level invariant check; returns "field: message" strings.
std::vector<std::string> validate_node(const ResourceNode& node);

}  // namespace sami
