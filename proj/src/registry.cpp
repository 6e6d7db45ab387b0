#include "sami/registry.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>

#include "sami/error.hpp"
#include "sami/scheduler.hpp"
#include "sami/semver.hpp"

namespace sami {

std::string_view to_string(RecordState s) {
    switch (s) {
    case RecordState::Active: return "Active";
    case RecordState::Replaced: return "Replaced";
    case RecordState::Deregistered: return "Deregistered";
    }
    return "?";
}

namespace {

std::vector<std::string> violation_strings(const std::vector<Violation>& vs) {
    std::vector<std::string> out;
    out.reserve(vs.size());
    for (const auto& v : vs) out.push_back(format_violation(v));
    return out;
}

// Semver of a record that passed the standard; unparsable sorts lowest.
SemVer version_of(const ServiceRecord& r) {
    return SemVer::parse(r.descriptor.version).value_or(SemVer{});
}

bool newer(const ServiceRecord& a, const ServiceRecord& b) {
    return version_of(b) < version_of(a);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

bool passes_keywords(const ServiceDescriptor& d, const std::vector<std::string>& keywords) {
    if (keywords.empty()) return true;
    const auto text = lower(d.description);
    return std::any_of(keywords.begin(), keywords.end(),
                       [&](const std::string& k) { return text.find(lower(k)) != std::string::npos; });
}

std::size_t overlap(const std::set<std::string>& a, const std::set<std::string>& b) {
    std::size_t n = 0;
    for (const auto& x : a) n += b.count(x);
    return n;
}

}  // namespace

void Registry::check_insertable(const ServiceDescriptor& desc) const {
    if (auto v = enforce_standard(desc, vocab_); !v.empty()) {
        throw Error(ErrorCode::StandardViolation, "service '" + desc.id + "' violates the standard",
                    violation_strings(v));
    }
    if (records_.count(desc.id)) throw Error(ErrorCode::DuplicateService, "service id '" + desc.id + "' exists");
    for (const auto& [id, rec] : records_) {
        if (rec.state == RecordState::Active && rec.descriptor.name == desc.name &&
            rec.descriptor.version == desc.version) {
            throw Error(ErrorCode::DuplicateService, desc.name + "@" + desc.version + " is already registered");
        }
    }
}

ServiceRecord Registry::register_service(const ServiceDescriptor& desc, const Topology& topology,
                                         const SchedulerWeights& weights, SimMs t) {
    std::unique_lock lock(mu_);
    check_insertable(desc);
    auto placement = schedule_service(desc, topology.nodes(), weights, t);
    ServiceRecord rec{desc, std::move(placement), t, RecordState::Active, std::nullopt};
    records_.emplace(desc.id, rec);
    return rec;
}

ServiceRecord Registry::register_with_placement(const ServiceDescriptor& desc, const PlacementDecision& placement,
                                                SimMs t) {
    std::unique_lock lock(mu_);
    check_insertable(desc);
    ServiceRecord rec{desc, placement, t, RecordState::Active, std::nullopt};
    records_.emplace(desc.id, rec);
    return rec;
}

const ServiceRecord* Registry::resolve_forward(const ServiceRecord& rec) const {
    const ServiceRecord* cur = &rec;
    // Chains are acyclic: a link only ever points at a record that was
    // Active when the link was made, and Replaced is terminal.
    while (cur->state == RecordState::Replaced && cur->replaced_by) {
        auto it = records_.find(*cur->replaced_by);
        if (it == records_.end()) return nullptr;
        cur = &it->second;
    }
    return cur->state == RecordState::Active ? cur : nullptr;
}

ServiceRecord Registry::discover_service(const std::string& name, const std::optional<std::string>& version) const {
    std::shared_lock lock(mu_);
    auto matches = [&](const ServiceRecord& r) {
        return r.descriptor.name == name && (!version || r.descriptor.version == *version);
    };

    const ServiceRecord* best = nullptr;
    for (const auto& [id, rec] : records_) {
        if (rec.state == RecordState::Active && matches(rec) && (!best || newer(rec, *best))) best = &rec;
    }
    if (best) return *best;

    const ServiceRecord* best_replaced = nullptr;
    const ServiceRecord* successor = nullptr;
    for (const auto& [id, rec] : records_) {
        if (rec.state != RecordState::Replaced || !matches(rec)) continue;
        const auto* next = resolve_forward(rec);
        if (next && (!best_replaced || newer(rec, *best_replaced))) {
            best_replaced = &rec;
            successor = next;
        }
    }
    if (successor) return *successor;
    throw Error(ErrorCode::NotFound, "no active service named '" + name + "'" + (version ? "@" + *version : ""));
}

std::vector<MatchResult> Registry::match_services(const FunctionalSpec& query) const {
    std::shared_lock lock(mu_);
    std::vector<MatchResult> out;
    if (query.required_tags.empty()) return out;
    for (const auto& [id, rec] : records_) {
        if (rec.state != RecordState::Active) continue;
        const auto common = overlap(query.required_tags, rec.descriptor.capability_tags);
        if (common == 0 || !passes_keywords(rec.descriptor, query.keywords)) continue;
        const auto uni = query.required_tags.size() + rec.descriptor.capability_tags.size() - common;
        out.push_back({rec, static_cast<double>(common) / static_cast<double>(uni)});
    }
    std::sort(out.begin(), out.end(), [](const MatchResult& a, const MatchResult& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.record.descriptor.name != b.record.descriptor.name) {
            return a.record.descriptor.name < b.record.descriptor.name;
        }
        if (auto c = compare(version_of(a.record), version_of(b.record)); c != 0) return c > 0;
        return a.record.descriptor.id < b.record.descriptor.id;
    });
    return out;
}

CompositePlan Registry::plan_composition(const FunctionalSpec& goal) const {
    if (goal.required_tags.empty()) {
        throw Error(ErrorCode::PreconditionViolation, "composition goal needs at least one tag");
    }
    std::shared_lock lock(mu_);
    std::vector<const ServiceRecord*> pool;
    for (const auto& [id, rec] : records_) {
        if (rec.state == RecordState::Active) pool.push_back(&rec);
    }
    std::sort(pool.begin(), pool.end(), [](const ServiceRecord* a, const ServiceRecord* b) {
        if (a->descriptor.name != b->descriptor.name) return a->descriptor.name < b->descriptor.name;
        return a->descriptor.id < b->descriptor.id;
    });

    CompositePlan plan;
    plan.residual_tags = goal.required_tags;
    std::set<ServiceId> used;
    while (!plan.residual_tags.empty()) {
        const ServiceRecord* pick = nullptr;
        std::size_t pick_gain = 0;
        for (const auto* rec : pool) {
            if (used.count(rec->descriptor.id)) continue;
            // Pool is name-ordered, so a strict improvement keeps the first
            // name among equals.
            const auto gain = overlap(plan.residual_tags, rec->descriptor.capability_tags);
            if (gain > pick_gain) {
                pick = rec;
                pick_gain = gain;
            }
        }
        if (!pick) break;
        used.insert(pick->descriptor.id);
        plan.steps.push_back(pick->descriptor.id);
        for (const auto& tag : pick->descriptor.capability_tags) {
            if (plan.residual_tags.erase(tag)) plan.covered_tags.insert(tag);
        }
    }
    return plan;
}

CompositePlan Registry::compose_services(const FunctionalSpec& goal) const {
    auto plan = plan_composition(goal);
    if (!plan.residual_tags.empty()) {
        throw Error(ErrorCode::UncoverableGoal, "no registered service provides every required tag",
                    {plan.residual_tags.begin(), plan.residual_tags.end()});
    }
    return plan;
}

ServiceRecord Registry::replace_service(const ServiceId& old_id, const ServiceId& new_id) {
    std::unique_lock lock(mu_);
    auto old_it = records_.find(old_id);
    if (old_it == records_.end() || old_it->second.state != RecordState::Active) {
        throw Error(ErrorCode::NotFound, "no active service with id '" + old_id + "'");
    }
    auto new_it = records_.find(new_id);
    if (new_it == records_.end() || new_it->second.state != RecordState::Active) {
        throw Error(ErrorCode::NotFound, "no active service with id '" + new_id + "'");
    }
    if (old_id == new_id) throw Error(ErrorCode::IncompatibleReplacement, "a service cannot replace itself");

    std::vector<std::string> missing;
    for (const auto& tag : old_it->second.descriptor.capability_tags) {
        if (!new_it->second.descriptor.capability_tags.count(tag)) missing.push_back(tag);
    }
    if (!missing.empty()) {
        throw Error(ErrorCode::IncompatibleReplacement, "'" + new_id + "' does not cover every tag of '" + old_id + "'",
                    std::move(missing));
    }
    // The standard is re-checked for the successor; the vocabulary may have
    // changed since it registered.
    if (auto v = enforce_standard(new_it->second.descriptor, vocab_); !v.empty()) {
        throw Error(ErrorCode::StandardViolation, "replacement '" + new_id + "' violates the standard",
                    violation_strings(v));
    }
    old_it->second.state = RecordState::Replaced;
    old_it->second.replaced_by = new_id;
    return old_it->second;
}

ServiceRecord Registry::deregister_service(const ServiceId& id) {
    std::unique_lock lock(mu_);
    auto it = records_.find(id);
    if (it == records_.end() || it->second.state != RecordState::Active) {
        throw Error(ErrorCode::NotFound, "no active service with id '" + id + "'");
    }
    it->second.state = RecordState::Deregistered;
    return it->second;
}

ServiceRecord Registry::update_placement(const ServiceId& id, const PlacementDecision& placement) {
    std::unique_lock lock(mu_);
    auto it = records_.find(id);
    if (it == records_.end() || it->second.state != RecordState::Active) {
        throw Error(ErrorCode::NotFound, "no active service with id '" + id + "'");
    }
    it->second.placement = placement;
    return it->second;
}

ServiceRecord Registry::get(const ServiceId& id) const {
    std::shared_lock lock(mu_);
    auto it = records_.find(id);
    if (it == records_.end()) throw Error(ErrorCode::NotFound, "no service with id '" + id + "'");
    return it->second;
}

std::vector<ServiceRecord> Registry::records() const {
    std::shared_lock lock(mu_);
    std::vector<ServiceRecord> out;
    out.reserve(records_.size());
    for (const auto& [id, rec] : records_) out.push_back(rec);
    return out;
}

std::size_t Registry::active_count() const {
    std::shared_lock lock(mu_);
    return static_cast<std::size_t>(std::count_if(records_.begin(), records_.end(), [](const auto& kv) {
        return kv.second.state == RecordState::Active;
    }));
}

}  // namespace sami
