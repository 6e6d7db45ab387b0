#include "sami/sim.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <queue>
#include <set>

#include "sami/analysis.hpp"
#include "sami/billing.hpp"
#include "sami/error.hpp"
#include "sami/infra.hpp"
#include "sami/scheduler.hpp"

namespace sami {

std::string_view to_string(Policy p) {
    switch (p) {
    case Policy::Sami: return "sami";
    case Policy::CloudOnly: return "cloud-only";
    case Policy::MnoOnly: return "mno-only";
    case Policy::DealerOnly: return "dealer-only";
    }
    return "?";
}

std::optional<Policy> parse_policy(std::string_view s) {
    for (Policy p : kAllPolicies) {
        if (to_string(p) == s) return p;
    }
    return std::nullopt;
}

std::string_view to_string(ArbitrationKind k) {
    switch (k) {
    case ArbitrationKind::Registration: return "registration";
    case ArbitrationKind::AnalysisEvaluation: return "analysis";
    case ArbitrationKind::Reschedule: return "reschedule";
    }
    return "?";
}

namespace {

std::optional<Tier> pinned_tier(Policy p) {
    switch (p) {
    case Policy::CloudOnly: return Tier::Cloud;
    case Policy::MnoOnly: return Tier::MNO;
    case Policy::DealerOnly: return Tier::Dealer;
    case Policy::Sami: return std::nullopt;
    }
    return std::nullopt;
}

struct EventOrder {
    bool operator()(const SimEvent& a, const SimEvent& b) const {
        if (a.time_ms != b.time_ms) return a.time_ms > b.time_ms;
        return a.seq > b.seq;
    }
};

enum class RequestState { Pending, Transferring, Queued, Running, Finished };

struct Request {
    std::uint64_t id = 0;
    std::size_t service = 0;
    ConsumerId consumer;
    std::size_t node = 0;
    SimMs t_arrive = 0;
    SimMs t_enqueue = 0;
    SimMs t_start = 0;
    double transfer_ms = 0;
    double exec_ms = 0;
    RequestState state = RequestState::Pending;
};

struct ServiceState {
    const ServiceDescriptor* desc = nullptr;
    SchedulerWeights weights;
    std::optional<PlacementDecision> placement;
    std::set<std::size_t> deployed;  // nodes holding a copy
    ServiceMetrics metrics;
    std::vector<double> latencies;
};

struct NodeState {
    const ResourceNode* node = nullptr;
    std::deque<std::size_t> queue;
    int in_flight = 0;
};

struct Migration {
    std::size_t service = 0;
    std::size_t node = 0;
};

class Simulator {
public:
    Simulator(const Topology& topology, Registry& registry, const Scenario& scenario, std::uint64_t seed,
              SimMs horizon, Policy policy)
        : topo_(topology),
          registry_(registry),
          scenario_(scenario),
          seed_(seed),
          horizon_(horizon),
          policy_(policy),
          pinned_(pinned_tier(policy)) {
        ctx_.window_size = static_cast<std::size_t>(scenario.thresholds.window);
        for (const auto& n : topo_.nodes()) {
            node_index_[n.id] = nodes_.size();
            nodes_.push_back({&n, {}, 0});
        }
        for (const auto& s : scenario_.services) {
            ServiceState st;
            st.desc = &s;
            st.weights = scenario_.weights_for(s.id);
            st.metrics.service_id = s.id;
            service_index_[s.id] = services_.size();
            services_.push_back(std::move(st));
        }
        for (const auto& c : scenario_.consumers) {
            UserProfile p;
            p.consumer_id = c.id;
            p.weights = c.weights.value_or(scenario_.weights);
            result_.profiles.emplace(c.id, std::move(p));
        }
    }

    SimResult run() {
        if (!(horizon_ > 0)) throw Error(ErrorCode::PreconditionViolation, "horizon_ms must be > 0");
        register_services();
        schedule_calendar();
        for (const auto& a : generate_workload(scenario_, seed_)) {
            if (a.t > horizon_) break;
            Request r;
            r.id = requests_.size();
            r.service = service_index_.at(a.service_id);
            r.consumer = a.consumer_id;
            r.t_arrive = a.t;
            requests_.push_back(std::move(r));
            push(a.t, EventKind::Arrival, requests_.size() - 1);
        }
        if (!pinned_ && scenario_.thresholds.analysis_interval_ms <= horizon_) {
            push(scenario_.thresholds.analysis_interval_ms, EventKind::AnalysisTick, 0);
        }

        while (!events_.empty() && events_.top().time_ms <= horizon_) {
            const SimEvent ev = events_.top();
            events_.pop();
            dispatch(ev);
        }
        return finish();
    }

private:
    void push(SimMs t, EventKind kind, std::size_t ref) { events_.push({t, seq_++, kind, ref}); }

    void log(SimMs t, ArbitrationKind kind, std::size_t svc, NodeId from = {}, NodeId to = {},
             std::optional<AdviceTrigger> trigger = std::nullopt) {
        result_.log.push_back({t, kind, services_[svc].desc->id, std::move(from), std::move(to), trigger});
        ++services_[svc].metrics.arbitration_events;
    }

    std::size_t node_of(const PlacementDecision& d) const { return node_index_.at(d.node_id); }

    void register_services() {
        for (std::size_t i = 0; i < services_.size(); ++i) {
            auto& st = services_[i];
            log(0, ArbitrationKind::Registration, i);
            if (!pinned_) {
                st.placement = registry_.register_service(*st.desc, topo_, st.weights, 0).placement;
            } else if (auto d = schedule_in_tier(*st.desc, topo_.nodes(), *pinned_, st.weights, 0)) {
                st.placement = registry_.register_with_placement(*st.desc, *d, 0).placement;
            } else if (auto v = enforce_standard(*st.desc, registry_.vocabulary()); !v.empty()) {
                std::vector<std::string> details;
                for (const auto& x : v) details.push_back(format_violation(x));
                throw Error(ErrorCode::StandardViolation, "service '" + st.desc->id + "' violates the standard",
                            std::move(details));
            }
            if (st.placement) st.deployed.insert(node_of(*st.placement));
        }
    }

    void schedule_calendar() {
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            const auto& n = *nodes_[i].node;
            if (n.tier != Tier::Dealer || !n.open_hours) continue;
            // A window covering the whole day never opens or closes.
            if (n.open_hours->open_minute == 0 && n.open_hours->close_minute == kMinutesPerDay) continue;
            for (auto [minute, kind] : {std::pair{n.open_hours->open_minute, EventKind::DealerOpen},
                                        std::pair{n.open_hours->close_minute, EventKind::DealerClose}}) {
                if (minute >= kMinutesPerDay) minute = 0;  // closing at 24:00 is midnight
                for (SimMs t = next_minute_of_day(-1, minute); t <= horizon_; t += kMinutesPerDay * kMsPerMinute) {
                    push(t, kind, i);
                }
            }
        }
    }

    void dispatch(const SimEvent& ev) {
        switch (ev.kind) {
        case EventKind::Arrival: on_arrival(ev.time_ms, ev.ref); break;
        case EventKind::TransferDone: on_transfer_done(ev.time_ms, ev.ref); break;
        case EventKind::ExecDone: on_exec_done(ev.time_ms, ev.ref); break;
        case EventKind::DealerOpen: on_dealer_open(ev.time_ms, ev.ref); break;
        case EventKind::DealerClose: on_dealer_close(ev.time_ms, ev.ref); break;
        case EventKind::AnalysisTick: on_analysis_tick(ev.time_ms); break;
        case EventKind::MigrationDone: try_start(migrations_[ev.ref].node, ev.time_ms); break;
        }
    }

    void change_placement(std::size_t svc, PlacementDecision decision, SimMs t,
                          std::optional<AdviceTrigger> trigger) {
        auto& st = services_[svc];
        const NodeId from = st.placement ? st.placement->node_id : NodeId{};
        decision.reason = PlacementReason::Reschedule;
        decision.decided_at = t;
        const auto target = node_of(decision);
        st.placement = decision;
        if (is_registered(svc)) {
            registry_.update_placement(st.desc->id, decision);
        } else {
            registry_.register_with_placement(*st.desc, decision, t);
        }
        ++st.metrics.reschedules;
        log(t, ArbitrationKind::Reschedule, svc, from, decision.node_id, trigger);
        ctx_.reset_service(st.desc->id);
        if (st.deployed.insert(target).second) {
            const double delay = migration_delay_ms(*st.desc, *nodes_[target].node);
            if (delay > 0) {
                stalled_until_[{svc, target}] = t + delay;
                migrations_.push_back({svc, target});
                push(t + delay, EventKind::MigrationDone, migrations_.size() - 1);
            }
        }
    }

    bool is_registered(std::size_t svc) const {
        try {
            registry_.get(services_[svc].desc->id);
            return true;
        } catch (const Error&) {
            return false;
        }
    }

    // Makes sure the service has an admissible placement at t; returns false
    // when none exists.
    bool resolve_placement(std::size_t svc, SimMs t) {
        auto& st = services_[svc];
        if (st.placement && is_admissible(*st.desc, *nodes_[node_of(*st.placement)].node, t)) return true;

        std::optional<PlacementDecision> d;
        if (pinned_) {
            d = schedule_in_tier(*st.desc, topo_.nodes(), *pinned_, st.weights, t);
        } else {
            try {
                d = schedule_service(*st.desc, topo_.nodes(), st.weights, t);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::NoAdmissibleNode) throw;
            }
        }
        if (!d) return false;
        if (!st.placement || st.placement->node_id != d->node_id) change_placement(svc, *d, t, std::nullopt);
        return true;
    }

    bool security_blocks_tier(const ServiceDescriptor& desc) const {
        bool any = false;
        for (const auto& n : topo_.nodes()) {
            if (n.tier != *pinned_) continue;
            any = true;
            if (passes_security_gate(desc, n)) return false;
        }
        return any;
    }

    void finish_request(std::size_t rid, SimMs t, Outcome outcome) {
        auto& r = requests_[rid];
        auto& st = services_[r.service];
        r.state = RequestState::Finished;
        InvocationRecord inv;
        inv.request_id = r.id;
        inv.service_id = st.desc->id;
        inv.consumer_id = r.consumer;
        inv.t_arrive = r.t_arrive;
        inv.outcome = outcome;
        inv.payload_mb = st.desc->payload_total();
        if (outcome == Outcome::Completed) {
            const auto& node = *nodes_[r.node].node;
            inv.node_id = node.id;
            inv.t_start = r.t_start;
            inv.t_done = t;
            inv.transfer_ms = r.transfer_ms;
            inv.exec_ms = r.exec_ms;
            inv.queue_ms = r.t_start - r.t_enqueue;
            const double tx = transmit_ms(inv.payload_mb, node.bandwidth_mbps);
            inv.energy_j = energy_j(inv.payload_mb, node.bandwidth_mbps, inv.latency_ms() - tx, scenario_.energy);
            inv.charge = billing::apply_slo_rebate(billing::compute_charge(inv, node.tariff), node.qos(),
                                                   inv.latency_ms(), st.desc->sla_latency_ms,
                                                   scenario_.thresholds.rebate_frac);
            ++st.metrics.completed;
            st.metrics.energy_j_total += inv.energy_j;
            st.metrics.charge_total += inv.charge;
            st.latencies.push_back(inv.latency_ms());
            if (!passes_security_gate(*st.desc, node)) ++st.metrics.security_violations;
        } else {
            inv.node_id = r.state == RequestState::Pending ? NodeId{} : nodes_[r.node].node->id;
            inv.t_start = t;
            inv.t_done = t;
            ++(outcome == Outcome::Rejected ? st.metrics.rejected : st.metrics.dropped);
        }
        result_.records.push_back(std::move(inv));
    }

    void on_arrival(SimMs t, std::size_t rid) {
        auto& r = requests_[rid];
        auto& st = services_[r.service];
        ++st.metrics.invocations;
        ++result_.arrivals;
        {
            InvocationRecord marker;
            marker.service_id = st.desc->id;
            auto& profile = result_.profiles[r.consumer];
            profile = update_user_profile(std::move(profile), marker);
        }
        if (!resolve_placement(r.service, t)) {
            if (pinned_) {
                if (security_blocks_tier(*st.desc)) ++st.metrics.security_violations;
                finish_request(rid, t, Outcome::Rejected);
            } else {
                finish_request(rid, t, Outcome::Dropped);
            }
            return;
        }
        r.node = node_of(*st.placement);
        const auto& node = *nodes_[r.node].node;
        r.transfer_ms = node.rtt_ms + transmit_ms(st.desc->payload_total(), node.bandwidth_mbps);
        r.state = RequestState::Transferring;
        push(t + r.transfer_ms, EventKind::TransferDone, rid);
    }

    void on_transfer_done(SimMs t, std::size_t rid) {
        auto& r = requests_[rid];
        const auto& node = *nodes_[r.node].node;
        if (node.tier == Tier::Dealer && !within_open_hours(node, t)) {
            finish_request(rid, t, Outcome::Rejected);
            return;
        }
        r.state = RequestState::Queued;
        r.t_enqueue = t;
        nodes_[r.node].queue.push_back(rid);
        try_start(r.node, t);
    }

    bool stalled(std::size_t svc, std::size_t node, SimMs t) const {
        auto it = stalled_until_.find({svc, node});
        return it != stalled_until_.end() && t < it->second;
    }

    void try_start(std::size_t ni, SimMs t) {
        auto& ns = nodes_[ni];
        if (ns.node->tier == Tier::Dealer && !within_open_hours(*ns.node, t)) return;
        while (!ns.queue.empty() && ns.in_flight < ns.node->cpu_slots) {
            const auto rid = ns.queue.front();
            auto& r = requests_[rid];
            if (stalled(r.service, ni, t)) break;  // FIFO: the head blocks the queue
            ns.queue.pop_front();
            r.state = RequestState::Running;
            r.t_start = t;
            r.exec_ms = services_[r.service].desc->cpu_demand / (ns.node->cpu_speed * ns.node->speed_factor) * 1000.0;
            ++ns.in_flight;
            if (ns.in_flight > ns.node->cpu_slots) ++result_.max_concurrency_violations;
            push(t + r.exec_ms, EventKind::ExecDone, rid);
        }
        ctx_.set_node_load(ns.node->id, ns.in_flight, ns.node->cpu_slots);
    }

    void on_exec_done(SimMs t, std::size_t rid) {
        auto& r = requests_[rid];
        auto& ns = nodes_[r.node];
        --ns.in_flight;
        ctx_.set_node_load(ns.node->id, ns.in_flight, ns.node->cpu_slots);
        finish_request(rid, t, Outcome::Completed);
        const auto& st = services_[r.service];
        if (st.placement && node_of(*st.placement) == r.node) ctx_.record(result_.records.back());
        try_start(r.node, t);
    }

    void on_dealer_close(SimMs t, std::size_t ni) {
        auto& ns = nodes_[ni];
        while (!ns.queue.empty()) {
            const auto rid = ns.queue.front();
            ns.queue.pop_front();
            finish_request(rid, t, Outcome::Rejected);
        }
    }

    // Latency-sensitive services that fell back when the dealer closed are
    // offered the dealer again.
    void on_dealer_open(SimMs t, std::size_t) {
        if (pinned_) return;
        for (std::size_t i = 0; i < services_.size(); ++i) {
            auto& st = services_[i];
            if (!st.desc->latency_sensitive || !st.placement || st.placement->tier == Tier::Dealer) continue;
            std::optional<PlacementDecision> d;
            try {
                d = schedule_service(*st.desc, topo_.nodes(), st.weights, t);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::NoAdmissibleNode) throw;
            }
            if (d && d->tier == Tier::Dealer && d->objective_ms < st.placement->objective_ms) {
                change_placement(i, *d, t, std::nullopt);
            }
        }
    }

    void on_analysis_tick(SimMs t) {
        const auto& th = scenario_.thresholds;
        for (std::size_t i = 0; i < services_.size(); ++i) {
            auto& st = services_[i];
            if (!st.placement) continue;
            log(t, ArbitrationKind::AnalysisEvaluation, i);
            const auto& node = *nodes_[node_of(*st.placement)].node;
            auto advice = analyze_performance(ctx_, *st.desc, *st.placement, topo_.nodes(), th, t);
            if (!advice) {
                const double expected = expected_exec_ms(*st.desc, node);
                auto it = ctx_.services.find(st.desc->id);
                if (expected > 0 && it != ctx_.services.end()) {
                    const auto observed = it->second.recent_exec_ms(static_cast<std::size_t>(th.m));
                    advice = analyze_computation(observed, expected, th.k, th.m);
                    if (advice) advice->service_id = st.desc->id;
                }
            }
            if (!advice || !(advice->projected_gain_ms > 0)) continue;
            try {
                auto res = reschedule(*st.desc, *st.placement, *advice, topo_.nodes(), st.weights, t);
                if (res.moved) change_placement(i, res.decision, t, advice->trigger);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::NoAdmissibleNode) throw;
            }
        }
        const SimMs next = t + th.analysis_interval_ms;
        if (next <= horizon_) push(next, EventKind::AnalysisTick, 0);
    }

    SimResult finish() {
        auto& rep = result_.report;
        rep.run.policy = std::string(to_string(policy_));
        rep.run.seed = seed_;
        rep.run.wall_ms = horizon_;
        auto& tot = rep.run.totals;
        std::vector<double> all_latencies;
        for (auto& st : services_) {
            auto& m = st.metrics;
            m.tier = st.placement ? std::string(to_string(st.placement->tier)) : "none";
            m.in_flight = m.invocations - m.completed - m.rejected - m.dropped;
            if (!st.latencies.empty()) {
                m.mean_latency_ms = std::accumulate(st.latencies.begin(), st.latencies.end(), 0.0) /
                                    static_cast<double>(st.latencies.size());
                m.p95_latency_ms = nearest_rank_percentile(st.latencies, 95.0);
            }
            all_latencies.insert(all_latencies.end(), st.latencies.begin(), st.latencies.end());
            tot.invocations += m.invocations;
            tot.completed += m.completed;
            tot.rejected += m.rejected;
            tot.dropped += m.dropped;
            tot.in_flight += m.in_flight;
            tot.energy_j_total += m.energy_j_total;
            tot.charge_total += m.charge_total;
            tot.reschedules += m.reschedules;
            tot.security_violations += m.security_violations;
            rep.services.push_back(m);
        }
        tot.arbitration_events = result_.log.size();
        if (!all_latencies.empty()) {
            tot.mean_latency_ms = std::accumulate(all_latencies.begin(), all_latencies.end(), 0.0) /
                                  static_cast<double>(all_latencies.size());
            tot.p95_latency_ms = nearest_rank_percentile(all_latencies, 95.0);
        }
        result_.in_flight_at_horizon = tot.in_flight;
        return std::move(result_);
    }

    const Topology& topo_;
    Registry& registry_;
    const Scenario& scenario_;
    std::uint64_t seed_;
    SimMs horizon_;
    Policy policy_;
    std::optional<Tier> pinned_;

    std::vector<NodeState> nodes_;
    std::map<NodeId, std::size_t> node_index_;
    std::vector<ServiceState> services_;
    std::map<ServiceId, std::size_t> service_index_;
    std::vector<Request> requests_;
    std::vector<Migration> migrations_;
    std::map<std::pair<std::size_t, std::size_t>, SimMs> stalled_until_;
    std::priority_queue<SimEvent, std::vector<SimEvent>, EventOrder> events_;
    std::uint64_t seq_ = 0;
    ContextSnapshot ctx_;
    SimResult result_;
};

}  // namespace

SimResult run(const Topology& topology, Registry& registry, const Scenario& workload, std::uint64_t seed,
              SimMs horizon_ms, Policy policy) {
    Simulator sim(topology, registry, workload, seed, horizon_ms, policy);
    return sim.run();
}

SimResult simulate(const Scenario& scenario, Policy policy, std::uint64_t seed) {
    const auto topology = build_topology(scenario.nodes);
    Registry registry(scenario.vocabulary);
    return run(topology, registry, scenario, seed, scenario.horizon_ms, policy);
}

}  // namespace sami
