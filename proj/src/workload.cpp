#include "sami/workload.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <set>
#include <sstream>

#include "sami/billing.hpp"
#include "sami/error.hpp"
#include "sami/topology.hpp"
#include "sami/trust.hpp"

namespace sami {

using nlohmann::json;

const ServiceDescriptor* Scenario::find_service(const ServiceId& id) const {
    auto it = std::find_if(services.begin(), services.end(), [&](const auto& s) { return s.id == id; });
    return it == services.end() ? nullptr : &*it;
}

SchedulerWeights Scenario::weights_for(const ServiceId& service) const {
    const ConsumerSpec* dominant = nullptr;
    double best_rate = -1;
    for (const auto& c : consumers) {
        auto it = c.rates.find(service);
        if (it == c.rates.end()) continue;
        if (it->second > best_rate || (it->second == best_rate && dominant && c.id < dominant->id)) {
            dominant = &c;
            best_rate = it->second;
        }
    }
    if (dominant && dominant->weights) return *dominant->weights;
    return weights;
}

namespace {

// Walks a JSON document collecting every problem with its field path.
class Reader {
public:
    std::vector<std::string> errors;

    void fail(const std::string& path, const std::string& msg) { errors.push_back(path + ": " + msg); }

    bool expect_object(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
        if (!j.is_object()) {
            fail(path, "expected an object");
            return false;
        }
        for (const auto& [key, _] : j.items()) {
            if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
                fail(join(path, key), "unknown field");
            }
        }
        return true;
    }

    static std::string join(const std::string& path, const std::string& key) {
        return path.empty() ? key : path + "." + key;
    }

    static std::string index(const std::string& path, std::size_t i) {
        return path + "[" + std::to_string(i) + "]";
    }

    const json* field(const json& obj, const std::string& path, const char* key, bool required) {
        auto it = obj.find(key);
        if (it == obj.end()) {
            if (required) fail(join(path, key), "required field missing");
            return nullptr;
        }
        return &*it;
    }

    std::optional<double> number(const json& obj, const std::string& path, const char* key, bool required) {
        const auto* v = field(obj, path, key, required);
        if (!v) return std::nullopt;
        if (!v->is_number()) {
            fail(join(path, key), "expected a number");
            return std::nullopt;
        }
        return v->get<double>();
    }

    std::optional<std::int64_t> integer(const json& obj, const std::string& path, const char* key, bool required) {
        const auto* v = field(obj, path, key, required);
        if (!v) return std::nullopt;
        if (!v->is_number_integer()) {
            fail(join(path, key), "expected an integer");
            return std::nullopt;
        }
        return v->get<std::int64_t>();
    }

    std::optional<std::string> string(const json& obj, const std::string& path, const char* key, bool required) {
        const auto* v = field(obj, path, key, required);
        if (!v) return std::nullopt;
        if (!v->is_string()) {
            fail(join(path, key), "expected a string");
            return std::nullopt;
        }
        return v->get<std::string>();
    }

    std::optional<bool> boolean(const json& obj, const std::string& path, const char* key, bool required) {
        const auto* v = field(obj, path, key, required);
        if (!v) return std::nullopt;
        if (!v->is_boolean()) {
            fail(join(path, key), "expected a boolean");
            return std::nullopt;
        }
        return v->get<bool>();
    }

    void non_negative(const std::optional<double>& v, const std::string& path) {
        if (v && !(*v >= 0)) fail(path, "must be >= 0");
    }

    void positive(const std::optional<double>& v, const std::string& path) {
        if (v && !(*v > 0)) fail(path, "must be > 0");
    }

    std::optional<TrustLevel> level(const json& j, const std::string& path) {
        if (!j.is_string()) {
            fail(path, "expected a trust level string");
            return std::nullopt;
        }
        auto l = parse_trust_level(j.get<std::string>());
        if (!l) fail(path, "unknown trust level '" + j.get<std::string>() + "'");
        return l;
    }

    std::vector<TrustAssessment> levels(const json& obj, const std::string& path, TrustBasis basis) {
        std::vector<TrustAssessment> out;
        const auto* v = field(obj, path, "levels", true);
        if (!v) return out;
        if (!v->is_array()) {
            fail(join(path, "levels"), "expected an array");
            return out;
        }
        for (std::size_t i = 0; i < v->size(); ++i) {
            if (auto l = level((*v)[i], index(join(path, "levels"), i))) out.push_back({*l, basis});
        }
        return out;
    }

    Tariff tariff(const json& j, const std::string& path, const Tariff& fallback) {
        Tariff t = fallback;
        if (!expect_object(j, path, {"base_fee", "cpu_rate", "data_rate"})) return t;
        auto base = number(j, path, "base_fee", false);
        auto cpu = number(j, path, "cpu_rate", false);
        auto data = number(j, path, "data_rate", false);
        non_negative(base, join(path, "base_fee"));
        non_negative(cpu, join(path, "cpu_rate"));
        non_negative(data, join(path, "data_rate"));
        if (base) t.base_fee = *base;
        if (cpu) t.cpu_rate = *cpu;
        if (data) t.data_rate = *data;
        return t;
    }

    std::optional<SchedulerWeights> weights(const json& j, const std::string& path) {
        if (!expect_object(j, path, {"latency", "cost"})) return std::nullopt;
        auto lat = number(j, path, "latency", true);
        auto cost = number(j, path, "cost", true);
        if (!lat || !cost) return std::nullopt;
        if (*lat < 0 || *lat > 1 || *cost < 0 || *cost > 1) {
            fail(path, "weights must lie in [0,1]");
            return std::nullopt;
        }
        if (std::abs(*lat + *cost - 1.0) > 1e-9) {
            fail(path, "latency + cost must equal 1");
            return std::nullopt;
        }
        return SchedulerWeights{*lat, *cost};
    }

    TrustAssessment trust(const json& j, const std::string& path, const NodeId& node_id) {
        TrustAssessment fallback{TrustLevel::Untrusted, TrustBasis::Established};
        if (!j.is_object()) {
            fail(path, "expected an object");
            return fallback;
        }
        if (!j.contains("evidence")) {
            if (!expect_object(j, path, {"level", "basis"})) return fallback;
            const auto* lv = field(j, path, "level", true);
            auto basis_s = string(j, path, "basis", false);
            auto l = lv ? level(*lv, join(path, "level")) : std::nullopt;
            TrustBasis basis = TrustBasis::Established;
            if (basis_s) {
                if (auto b = parse_trust_basis(*basis_s)) {
                    basis = *b;
                } else {
                    fail(join(path, "basis"), "unknown trust basis '" + *basis_s + "'");
                }
            }
            return l ? TrustAssessment{*l, basis} : fallback;
        }

        if (!expect_object(j, path, {"evidence"})) return fallback;
        const auto& ev = j.at("evidence");
        const auto ev_path = join(path, "evidence");
        if (!ev.is_array() || ev.empty()) {
            fail(ev_path, "expected a nonempty array");
            return fallback;
        }
        std::vector<TrustAssessment> assessments;
        for (std::size_t i = 0; i < ev.size(); ++i) {
            const auto p = index(ev_path, i);
            const auto& item = ev[i];
            if (!item.is_object()) {
                fail(p, "expected an object");
                continue;
            }
            auto kind = string(item, p, "kind", true);
            if (!kind) continue;
            try {
                if (*kind == "probe") {
                    if (!expect_object(item, p, {"kind", "passed", "count"})) continue;
                    auto passed = boolean(item, p, "passed", true);
                    auto count = integer(item, p, "count", true);
                    if (count && *count < 1) fail(join(p, "count"), "must be >= 1");
                    if (passed && count && *count >= 1) {
                        assessments.push_back(trust::establish_trust(*passed, static_cast<int>(*count)));
                    }
                } else if (*kind == "reputation") {
                    if (!expect_object(item, p, {"kind", "legal_registered", "years_active", "complaint_rate"})) {
                        continue;
                    }
                    auto legal = boolean(item, p, "legal_registered", true);
                    auto years = integer(item, p, "years_active", true);
                    auto rate = number(item, p, "complaint_rate", true);
                    if (rate && (*rate < 0 || *rate > 1)) fail(join(p, "complaint_rate"), "must lie in [0,1]");
                    if (years && *years < 0) fail(join(p, "years_active"), "must be >= 0");
                    if (legal && years && rate && *rate >= 0 && *rate <= 1 && *years >= 0) {
                        assessments.push_back(trust::reputation_trust(
                            {node_id, *legal, static_cast<int>(*years), *rate}));
                    }
                } else if (*kind == "aggregate") {
                    if (!expect_object(item, p, {"kind", "levels"})) continue;
                    auto ops = levels(item, p, TrustBasis::Aggregated);
                    if (ops.empty()) {
                        fail(join(p, "levels"), "needs at least one opinion");
                    } else {
                        assessments.push_back(trust::aggregate_trust(ops));
                    }
                } else if (*kind == "chain") {
                    if (!expect_object(item, p, {"kind", "levels"})) continue;
                    auto chain = levels(item, p, TrustBasis::Indirect);
                    if (chain.size() < 2) {
                        fail(join(p, "levels"), "a trust chain needs at least two links");
                    } else {
                        assessments.push_back(trust::indirect_trust(chain));
                    }
                } else {
                    fail(join(p, "kind"), "unknown evidence kind '" + *kind + "'");
                }
            } catch (const Error& e) {
                fail(p, e.what());
            }
        }
        return assessments.empty() ? fallback : trust::effective_trust(assessments);
    }
};

ResourceNode read_node(Reader& r, const json& j, const std::string& path, const std::map<Tier, Tariff>& tariffs) {
    ResourceNode n;
    if (!r.expect_object(j, path,
                         {"id", "tier", "cpu_speed", "cpu_slots", "mem_capacity", "storage_capacity", "rtt_ms",
                          "bandwidth_mbps", "internet_path", "trust", "tariff", "open_hours", "security_norm",
                          "jitter_ms", "session_reestablish_ms", "speed_factor"})) {
        return n;
    }
    if (auto id = r.string(j, path, "id", true)) n.id = *id;
    if (auto tier = r.string(j, path, "tier", true)) {
        if (auto t = parse_tier(*tier)) {
            n.tier = *t;
        } else {
            r.fail(Reader::join(path, "tier"), "unknown tier '" + *tier + "' (Dealer|MNO|Cloud)");
        }
    }
    n.internet_path = n.tier == Tier::Cloud;
    if (auto v = r.number(j, path, "cpu_speed", true)) n.cpu_speed = *v;
    if (auto v = r.integer(j, path, "cpu_slots", true)) n.cpu_slots = static_cast<int>(*v);
    if (auto v = r.number(j, path, "mem_capacity", true)) n.mem_capacity = *v;
    if (auto v = r.number(j, path, "storage_capacity", false)) n.storage_capacity = *v;
    if (auto v = r.number(j, path, "rtt_ms", true)) n.rtt_ms = *v;
    if (auto v = r.number(j, path, "bandwidth_mbps", true)) n.bandwidth_mbps = *v;
    if (auto v = r.boolean(j, path, "internet_path", false)) n.internet_path = *v;
    if (auto v = r.number(j, path, "security_norm", false)) n.security_norm = *v;
    if (auto v = r.number(j, path, "jitter_ms", false)) n.jitter_ms = *v;
    if (auto v = r.number(j, path, "session_reestablish_ms", false)) n.session_reestablish_ms = *v;
    if (auto v = r.number(j, path, "speed_factor", false)) n.speed_factor = *v;
    if (const auto* t = r.field(j, path, "trust", true)) n.trust = r.trust(*t, Reader::join(path, "trust"), n.id);
    const auto tier_tariff = tariffs.count(n.tier) ? tariffs.at(n.tier) : billing::default_tariff(n.tier);
    n.tariff = tier_tariff;
    if (const auto* t = r.field(j, path, "tariff", false)) n.tariff = r.tariff(*t, Reader::join(path, "tariff"), tier_tariff);
    if (const auto* h = r.field(j, path, "open_hours", false)) {
        if (h->is_array() && h->size() == 2 && (*h)[0].is_number_integer() && (*h)[1].is_number_integer()) {
            n.open_hours = OpenHours{(*h)[0].get<int>(), (*h)[1].get<int>()};
        } else {
            r.fail(Reader::join(path, "open_hours"), "expected [open_minute, close_minute]");
        }
    }
    // Node invariants (tier rules, positivity) are shared with build_topology.
    for (const auto& e : validate_node(n)) r.errors.push_back(path + "." + e);
    return n;
}

ServiceDescriptor read_service(Reader& r, const json& j, const std::string& path) {
    ServiceDescriptor s;
    if (!r.expect_object(j, path,
                         {"id", "name", "version", "capability_tags", "description", "cpu_demand", "mem_demand",
                          "storage_demand", "payload_in", "payload_out", "latency_sensitive", "data_intensive",
                          "security_class", "sla_latency_ms", "test_vector"})) {
        return s;
    }
    if (auto v = r.string(j, path, "id", true)) s.id = *v;
    if (auto v = r.string(j, path, "name", true)) s.name = *v;
    if (auto v = r.string(j, path, "version", true)) s.version = *v;
    if (const auto* tags = r.field(j, path, "capability_tags", true)) {
        if (!tags->is_array()) {
            r.fail(Reader::join(path, "capability_tags"), "expected an array of strings");
        } else {
            for (std::size_t i = 0; i < tags->size(); ++i) {
                if ((*tags)[i].is_string()) {
                    s.capability_tags.insert((*tags)[i].get<std::string>());
                } else {
                    r.fail(Reader::index(Reader::join(path, "capability_tags"), i), "expected a string");
                }
            }
        }
    }
    if (auto v = r.string(j, path, "description", false)) s.description = *v;
    if (auto v = r.number(j, path, "cpu_demand", false)) s.cpu_demand = *v;
    if (auto v = r.number(j, path, "mem_demand", false)) s.mem_demand = *v;
    if (auto v = r.number(j, path, "storage_demand", false)) s.storage_demand = *v;
    if (auto v = r.number(j, path, "payload_in", false)) s.payload_in = *v;
    if (auto v = r.number(j, path, "payload_out", false)) s.payload_out = *v;
    if (auto v = r.boolean(j, path, "latency_sensitive", false)) s.latency_sensitive = *v;
    if (auto v = r.boolean(j, path, "data_intensive", false)) s.data_intensive = *v;
    if (auto v = r.string(j, path, "security_class", false)) {
        if (auto c = parse_security_class(*v)) {
            s.security_class = *c;
        } else {
            r.fail(Reader::join(path, "security_class"), "unknown class '" + *v + "' (Public|Sensitive|Critical)");
        }
    }
    if (auto v = r.number(j, path, "sla_latency_ms", true)) s.sla_latency_ms = *v;
    s.test_vector.digest = test_vector_digest(s.test_vector.input);
    if (const auto* tv = r.field(j, path, "test_vector", false)) {
        const auto tv_path = Reader::join(path, "test_vector");
        if (r.expect_object(*tv, tv_path, {"input", "digest"})) {
            if (auto in = r.string(*tv, tv_path, "input", false)) s.test_vector.input = *in;
            auto dg = r.string(*tv, tv_path, "digest", false);
            s.test_vector.digest = dg ? *dg : test_vector_digest(s.test_vector.input);
        }
    }
    return s;
}

ConsumerSpec read_consumer(Reader& r, const json& j, const std::string& path) {
    ConsumerSpec c;
    if (!r.expect_object(j, path, {"id", "weights", "rates"})) return c;
    if (auto v = r.string(j, path, "id", true)) c.id = *v;
    if (const auto* w = r.field(j, path, "weights", false)) c.weights = r.weights(*w, Reader::join(path, "weights"));
    if (const auto* rates = r.field(j, path, "rates", true)) {
        const auto rp = Reader::join(path, "rates");
        if (!rates->is_object()) {
            r.fail(rp, "expected an object of service id -> requests/second");
        } else {
            for (const auto& [sid, rate] : rates->items()) {
                if (!rate.is_number()) {
                    r.fail(Reader::join(rp, sid), "expected a number");
                } else if (!(rate.get<double>() >= 0)) {
                    r.fail(Reader::join(rp, sid), "rate must be >= 0");
                } else {
                    c.rates[sid] = rate.get<double>();
                }
            }
        }
    }
    return c;
}

void read_thresholds(Reader& r, const json& j, const std::string& path, Thresholds& t) {
    if (!r.expect_object(j, path,
                         {"theta_ms_per_s", "delta_ms", "k", "m", "window", "tol", "min_samples", "rebate_frac",
                          "analysis_interval_ms"})) {
        return;
    }
    auto theta = r.number(j, path, "theta_ms_per_s", false);
    auto delta = r.number(j, path, "delta_ms", false);
    auto k = r.number(j, path, "k", false);
    auto m = r.integer(j, path, "m", false);
    auto w = r.integer(j, path, "window", false);
    auto tol = r.number(j, path, "tol", false);
    auto ms = r.integer(j, path, "min_samples", false);
    auto rebate = r.number(j, path, "rebate_frac", false);
    auto interval = r.number(j, path, "analysis_interval_ms", false);
    r.non_negative(theta, Reader::join(path, "theta_ms_per_s"));
    r.non_negative(delta, Reader::join(path, "delta_ms"));
    r.positive(k, Reader::join(path, "k"));
    if (m && *m < 1) r.fail(Reader::join(path, "m"), "must be >= 1");
    if (w && *w < 1) r.fail(Reader::join(path, "window"), "must be >= 1");
    r.non_negative(tol, Reader::join(path, "tol"));
    if (ms && *ms < 1) r.fail(Reader::join(path, "min_samples"), "must be >= 1");
    if (rebate && (*rebate < 0 || *rebate > 1)) r.fail(Reader::join(path, "rebate_frac"), "must lie in [0,1]");
    r.positive(interval, Reader::join(path, "analysis_interval_ms"));
    if (theta) t.theta_ms_per_s = *theta;
    if (delta) t.delta_ms = *delta;
    if (k) t.k = *k;
    if (m) t.m = static_cast<int>(*m);
    if (w) t.window = static_cast<int>(*w);
    if (tol) t.tol = *tol;
    if (ms) t.min_samples = static_cast<int>(*ms);
    if (rebate) t.rebate_frac = *rebate;
    if (interval) t.analysis_interval_ms = *interval;
}

}  // namespace

Scenario parse_scenario(const json& doc, const std::filesystem::path& base_dir) {
    Reader r;
    Scenario sc;
    if (!r.expect_object(doc, "",
                         {"name", "seed", "horizon_ms", "vocabulary", "weights", "thresholds", "energy", "tariffs",
                          "nodes", "services", "consumers"})) {
        throw Error(ErrorCode::ValidationError, "scenario is invalid", std::move(r.errors));
    }
    if (auto v = r.string(doc, "", "name", false)) sc.name = *v;
    if (const auto* seed = r.field(doc, "", "seed", false)) {
        if (seed->is_number_unsigned()) {
            sc.seed = seed->get<std::uint64_t>();
        } else {
            r.fail("seed", "expected a non-negative integer");
        }
    }
    if (auto v = r.number(doc, "", "horizon_ms", false)) sc.horizon_ms = *v;
    r.positive(sc.horizon_ms, "horizon_ms");
    if (auto v = r.string(doc, "", "vocabulary", false)) {
        sc.vocabulary_path = *v;
        try {
            sc.vocabulary = Vocabulary::load(base_dir / *v);
        } catch (const Error&) {
            r.fail("vocabulary", "cannot read vocabulary file '" + (base_dir / *v).string() + "'");
        }
    }
    if (const auto* w = r.field(doc, "", "weights", false)) {
        if (auto ws = r.weights(*w, "weights")) sc.weights = *ws;
    }
    if (const auto* t = r.field(doc, "", "thresholds", false)) read_thresholds(r, *t, "thresholds", sc.thresholds);
    if (const auto* e = r.field(doc, "", "energy", false)) {
        if (r.expect_object(*e, "energy", {"p_tx_w", "p_idle_w"})) {
            auto tx = r.number(*e, "energy", "p_tx_w", false);
            auto idle = r.number(*e, "energy", "p_idle_w", false);
            r.positive(tx, "energy.p_tx_w");
            r.positive(idle, "energy.p_idle_w");
            if (tx) sc.energy.p_tx_w = *tx;
            if (idle) sc.energy.p_idle_w = *idle;
        }
    }
    for (Tier t : {Tier::Dealer, Tier::MNO, Tier::Cloud}) sc.tariffs[t] = billing::default_tariff(t);
    if (const auto* tf = r.field(doc, "", "tariffs", false)) {
        if (r.expect_object(*tf, "tariffs", {"Dealer", "MNO", "Cloud"})) {
            for (Tier t : {Tier::Dealer, Tier::MNO, Tier::Cloud}) {
                const std::string key(to_string(t));
                if (tf->contains(key)) sc.tariffs[t] = r.tariff(tf->at(key), "tariffs." + key, sc.tariffs[t]);
            }
        }
    }

    auto read_array = [&](const char* key) -> const json* {
        const auto* arr = r.field(doc, "", key, true);
        if (arr && !arr->is_array()) {
            r.fail(key, "expected an array");
            return nullptr;
        }
        return arr;
    };
    if (const auto* nodes = read_array("nodes")) {
        if (nodes->empty()) r.fail("nodes", "at least one node is required");
        std::set<NodeId> ids;
        for (std::size_t i = 0; i < nodes->size(); ++i) {
            const auto p = Reader::index("nodes", i);
            sc.nodes.push_back(read_node(r, (*nodes)[i], p, sc.tariffs));
            if (!sc.nodes.back().id.empty() && !ids.insert(sc.nodes.back().id).second) {
                r.fail(p + ".id", "duplicate node id '" + sc.nodes.back().id + "'");
            }
        }
    }
    if (const auto* services = read_array("services")) {
        std::set<ServiceId> ids;
        for (std::size_t i = 0; i < services->size(); ++i) {
            const auto p = Reader::index("services", i);
            sc.services.push_back(read_service(r, (*services)[i], p));
            if (!sc.services.back().id.empty() && !ids.insert(sc.services.back().id).second) {
                r.fail(p + ".id", "duplicate service id '" + sc.services.back().id + "'");
            }
        }
    }
    if (const auto* consumers = read_array("consumers")) {
        std::set<ConsumerId> ids;
        for (std::size_t i = 0; i < consumers->size(); ++i) {
            const auto p = Reader::index("consumers", i);
            sc.consumers.push_back(read_consumer(r, (*consumers)[i], p));
            const auto& c = sc.consumers.back();
            if (!c.id.empty() && !ids.insert(c.id).second) r.fail(p + ".id", "duplicate consumer id '" + c.id + "'");
            for (const auto& [sid, _] : c.rates) {
                if (!sc.find_service(sid)) r.fail(p + ".rates." + sid, "unknown service id");
            }
        }
    }

    if (!r.errors.empty()) throw Error(ErrorCode::ValidationError, "scenario is invalid", std::move(r.errors));
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open scenario file '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
    }
    return parse_scenario(doc, path.parent_path());
}

namespace {

json tariff_json(const Tariff& t) {
    return {{"base_fee", t.base_fee}, {"cpu_rate", t.cpu_rate}, {"data_rate", t.data_rate}};
}

}  // namespace

json serialize_scenario(const Scenario& sc) {
    json doc;
    doc["name"] = sc.name;
    doc["seed"] = sc.seed;
    doc["horizon_ms"] = sc.horizon_ms;
    if (sc.vocabulary_path) doc["vocabulary"] = *sc.vocabulary_path;
    doc["weights"] = {{"latency", sc.weights.w_latency}, {"cost", sc.weights.w_cost}};
    const auto& t = sc.thresholds;
    doc["thresholds"] = {{"theta_ms_per_s", t.theta_ms_per_s}, {"delta_ms", t.delta_ms},
                         {"k", t.k},
                         {"m", t.m},
                         {"window", t.window},
                         {"tol", t.tol},
                         {"min_samples", t.min_samples},
                         {"rebate_frac", t.rebate_frac},
                         {"analysis_interval_ms", t.analysis_interval_ms}};
    doc["energy"] = {{"p_tx_w", sc.energy.p_tx_w}, {"p_idle_w", sc.energy.p_idle_w}};
    json tariffs = json::object();
    for (const auto& [tier, tariff] : sc.tariffs) tariffs[std::string(to_string(tier))] = tariff_json(tariff);
    doc["tariffs"] = tariffs;

    json nodes = json::array();
    for (const auto& n : sc.nodes) {
        json j = {{"id", n.id},
                  {"tier", to_string(n.tier)},
                  {"cpu_speed", n.cpu_speed},
                  {"cpu_slots", n.cpu_slots},
                  {"mem_capacity", n.mem_capacity},
                  {"rtt_ms", n.rtt_ms},
                  {"bandwidth_mbps", n.bandwidth_mbps},
                  {"internet_path", n.internet_path},
                  {"trust", {{"level", to_string(n.trust.level)}, {"basis", to_string(n.trust.basis)}}},
                  {"tariff", tariff_json(n.tariff)},
                  {"security_norm", n.security_norm},
                  {"jitter_ms", n.jitter_ms},
                  {"session_reestablish_ms", n.session_reestablish_ms},
                  {"speed_factor", n.speed_factor}};
        if (n.storage_capacity) j["storage_capacity"] = *n.storage_capacity;
        if (n.open_hours) j["open_hours"] = {n.open_hours->open_minute, n.open_hours->close_minute};
        nodes.push_back(std::move(j));
    }
    doc["nodes"] = std::move(nodes);

    json services = json::array();
    for (const auto& s : sc.services) services.push_back(service_to_json(s));
    doc["services"] = std::move(services);

    json consumers = json::array();
    for (const auto& c : sc.consumers) {
        json j = {{"id", c.id}, {"rates", c.rates}};
        if (c.weights) j["weights"] = {{"latency", c.weights->w_latency}, {"cost", c.weights->w_cost}};
        consumers.push_back(std::move(j));
    }
    doc["consumers"] = std::move(consumers);
    return doc;
}

ServiceDescriptor parse_service(const json& block) {
    Reader r;
    auto s = read_service(r, block, "service");
    if (!r.errors.empty()) throw Error(ErrorCode::ValidationError, "service block is invalid", std::move(r.errors));
    return s;
}

json service_to_json(const ServiceDescriptor& s) {
        return {{"id", s.id},
                            {"name", s.name},
                            {"version", s.version},
                            {"capability_tags", s.capability_tags},
                            {"description", s.description},
                            {"cpu_demand", s.cpu_demand},
                            {"mem_demand", s.mem_demand},
                            {"storage_demand", s.storage_demand},
                            {"payload_in", s.payload_in},
                            {"payload_out", s.payload_out},
                            {"latency_sensitive", s.latency_sensitive},
                            {"data_intensive", s.data_intensive},
                            {"security_class", to_string(s.security_class)},
                            {"sla_latency_ms", s.sla_latency_ms},
                            {"test_vector", {{"input", s.test_vector.input}, {"digest", s.test_vector.digest}}}};
}

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double SplitMix64::next_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint64_t stream_key(const ConsumerId& consumer, const ServiceId& service) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&](std::string_view s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
    };
    mix(consumer);
    mix("/");
    mix(service);
    return h;
}

std::vector<Arrival> generate_stream(const ConsumerId& consumer, const ServiceId& service, double rate_per_s,
                                     SimMs horizon_ms, std::uint64_t seed) {
    std::vector<Arrival> out;
    if (!(rate_per_s > 0)) return out;
    SplitMix64 rng(seed ^ stream_key(consumer, service));
    SimMs t = 0;
    while (true) {
        const double u = rng.next_unit();
        t += -std::log1p(-u) / rate_per_s * 1000.0;
        if (t >= horizon_ms) break;
        // A zero draw would repeat the previous time; skip it to keep the
        // stream strictly increasing.
        if (!out.empty() && !(t > out.back().t)) continue;
        out.push_back({t, consumer, service});
    }
    return out;
}

std::vector<Arrival> generate_workload(const Scenario& scenario, std::uint64_t seed) {
    std::vector<Arrival> all;
    for (const auto& c : scenario.consumers) {
        for (const auto& [sid, rate] : c.rates) {
            auto stream = generate_stream(c.id, sid, rate, scenario.horizon_ms, seed);
            all.insert(all.end(), std::make_move_iterator(stream.begin()), std::make_move_iterator(stream.end()));
        }
    }
    std::stable_sort(all.begin(), all.end(), [](const Arrival& a, const Arrival& b) {
        if (a.t != b.t) return a.t < b.t;
        if (a.consumer_id != b.consumer_id) return a.consumer_id < b.consumer_id;
        return a.service_id < b.service_id;
    });
    return all;
}

}  // namespace sami
