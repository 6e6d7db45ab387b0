#include "sami/envelope.hpp"

#include "sami/error.hpp"
#include "sami/workload.hpp"

namespace sami {

using nlohmann::json;

json record_json(const ServiceRecord& rec) {
    json j = {{"id", rec.descriptor.id},
              {"name", rec.descriptor.name},
              {"version", rec.descriptor.version},
              {"state", to_string(rec.state)},
              {"node_id", rec.placement.node_id},
              {"tier", to_string(rec.placement.tier)},
              {"reason", to_string(rec.placement.reason)},
              {"objective_ms", rec.placement.objective_ms},
              {"registered_at", rec.registered_at}};
    if (rec.replaced_by) j["replaced_by"] = *rec.replaced_by;
    return j;
}

namespace {

json error_json(ErrorCode code, const std::string& message, const std::vector<std::string>& details = {}) {
    return {{"ok", false}, {"error", {{"code", to_string(code)}, {"message", message}, {"details", details}}}};
}

std::set<std::string> tag_set(const json& body, const char* key) {
    std::set<std::string> tags;
    if (!body.contains(key) || !body.at(key).is_array()) {
        throw Error(ErrorCode::ValidationError, std::string("body.") + key + " must be an array of strings");
    }
    for (const auto& t : body.at(key)) {
        if (!t.is_string()) throw Error(ErrorCode::ValidationError, std::string("body.") + key + " must hold strings");
        tags.insert(t.get<std::string>());
    }
    return tags;
}

json plan_json(const CompositePlan& plan) {
    return {{"steps", plan.steps}, {"covered_tags", plan.covered_tags}, {"residual_tags", plan.residual_tags}};
}

}  // namespace

json EnvelopeHandler::handle(const json& request) {
    if (!request.is_object() || !request.contains("op") || !request.at("op").is_string()) {
        return error_json(ErrorCode::ValidationError, "request must be an object with a string 'op'");
    }
    const auto op = request.at("op").get<std::string>();
    const json body = request.value("body", json::object());
    if (!body.is_object()) return error_json(ErrorCode::ValidationError, "body must be an object");

    try {
        if (op == "register") {
            auto desc = parse_service(body);
            return {{"ok", true}, {"result", record_json(registry_.register_service(desc, topology_, weights_, t_))}};
        }
        if (op == "discover") {
            if (!body.contains("name") || !body.at("name").is_string()) {
                return error_json(ErrorCode::ValidationError, "body.name must be a string");
            }
            std::optional<std::string> version;
            if (body.contains("version")) {
                if (!body.at("version").is_string()) {
                    return error_json(ErrorCode::ValidationError, "body.version must be a string");
                }
                version = body.at("version").get<std::string>();
            }
            return {{"ok", true},
                    {"result", record_json(registry_.discover_service(body.at("name").get<std::string>(), version))}};
        }
        if (op == "match") {
            FunctionalSpec q;
            q.required_tags = tag_set(body, "tags");
            if (body.contains("keywords")) {
                for (const auto& k : tag_set(body, "keywords")) q.keywords.push_back(k);
            }
            json out = json::array();
            for (const auto& m : registry_.match_services(q)) {
                auto r = record_json(m.record);
                r["score"] = m.score;
                out.push_back(std::move(r));
            }
            return {{"ok", true}, {"result", out}};
        }
        if (op == "compose") {
            FunctionalSpec goal;
            goal.required_tags = tag_set(body, "tags");
            return {{"ok", true}, {"result", plan_json(registry_.compose_services(goal))}};
        }
        return error_json(ErrorCode::ValidationError, "unknown op '" + op + "'");
    } catch (const Error& e) {
        return error_json(e.code(), e.what(), e.details());
    }
}

}  // namespace sami
