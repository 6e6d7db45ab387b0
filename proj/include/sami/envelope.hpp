#pragma once

// JSON request envelope for the registry:
//
//   request:  {"op": "register|discover|match|compose", "body": {...}}
//   response: {"ok": true, "result": ...} | {"ok": false, "error": {...}}
//
// register  body: a service block in scenario syntax
// discover  body: {"name": str, "version"?: str}
// match     body: {"tags": [str], "keywords"?: [str]}
// compose   body: {"tags": [str]}

#include "json.hpp"

#include "sami/registry.hpp"
#include "sami/topology.hpp"

namespace sami {

nlohmann::json record_json(const ServiceRecord& rec);

class EnvelopeHandler {
public:
    EnvelopeHandler(Registry& registry, const Topology& topology, SchedulerWeights weights = {}, SimMs t = 0)
        : registry_(registry), topology_(topology), weights_(weights), t_(t) {}

    // Never throws for well-formed JSON; failures become error responses.
    nlohmann::json handle(const nlohmann::json& request);

private:
    Registry& registry_;
    const Topology& topology_;
    SchedulerWeights weights_;
    SimMs t_;
};

}  // namespace sami
