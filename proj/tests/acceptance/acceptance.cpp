// Acceptance checks 1-11. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails. Tolerances are fixed here.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "sami/billing.hpp"
#include "sami/infra.hpp"
#include "sami/scheduler.hpp"
#include "sami/sim.hpp"
#include "sami/trust.hpp"

using namespace sami;

namespace {

constexpr double kOracleBudgetS = 10.0;
// Node and reason must match exactly; the response value may differ by
// rounding because the oracle sums the terms in another order.
constexpr double kObjectiveRelTol = 1e-12;
constexpr double kLatencyRatio = 0.5;
constexpr double kLatencyBudgetS = 30.0;
constexpr int kMigrationTicks = 5;
constexpr int kSecurityScenarios = 1000;

struct Verdict {
    bool pass = true;
    std::string detail;
};

// Collects the first few failure messages.
struct Check {
    Verdict out;
    int failures = 0;
    void expect(bool ok, const std::string& what) {
        if (ok) return;
        out.pass = false;
        if (++failures <= 3) out.detail += (out.detail.empty() ? "" : "; ") + what;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

const char* kShipped[] = {"t0.json", "latency_mix.json", "hot_cloud_service.json", "dealer_hours.json"};

ResourceNode random_node(SplitMix64& rng, Tier tier, const std::string& id) {
    auto n = tier == Tier::Dealer ? fx::dealer(id) : tier == Tier::MNO ? fx::mno(id) : fx::cloud(id);
    n.rtt_ms = 1 + std::floor(rng.next_unit() * 250);
    n.bandwidth_mbps = 1 + std::floor(rng.next_unit() * 100);
    n.cpu_speed = 200 + std::floor(rng.next_unit() * 8000);
    n.trust = {static_cast<TrustLevel>(rng.next() % 4), static_cast<TrustBasis>(rng.next() % 4)};
    if (tier != Tier::Cloud && rng.next() % 3 == 0) n.storage_capacity = std::floor(rng.next_unit() * 128);
    if (tier == Tier::Dealer && rng.next() % 2) n.open_hours = OpenHours{540, 1020};
    if (tier == Tier::Cloud && rng.next() % 2) n.tariff.base_fee = 0.01 + rng.next_unit() * 0.1;
    return n;
}

// 1. Placement equals the enumeration oracle.
Verdict scheduler_oracle() {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    SplitMix64 rng(1);
    long cases = 0;
    const SimMs times[] = {600 * kMsPerMinute, 100 * kMsPerMinute};
    const SchedulerWeights weights[] = {{0.7, 0.3}, {0.2, 0.8}, {1.0, 0.0}};
    for (int nd = 0; nd <= 3; ++nd) {
        for (int nm = 0; nm <= 3; ++nm) {
            for (int nc = 0; nc <= 3; ++nc) {
                for (int variant = 0; variant < 12; ++variant) {
                    std::vector<ResourceNode> nodes;
                    for (int i = 0; i < nd; ++i) nodes.push_back(random_node(rng, Tier::Dealer, "D" + std::to_string(i)));
                    for (int i = 0; i < nm; ++i) nodes.push_back(random_node(rng, Tier::MNO, "M" + std::to_string(i)));
                    for (int i = 0; i < nc; ++i) nodes.push_back(random_node(rng, Tier::Cloud, "C" + std::to_string(i)));
                    for (int flags = 0; flags < 8; ++flags) {
                        for (int cls = 0; cls < 3; ++cls) {
                            auto s = fx::service("s");
                            s.latency_sensitive = flags & 1;
                            s.data_intensive = flags & 2;
                            s.storage_demand = (flags & 4) ? 96 : 8;
                            s.security_class = static_cast<SecurityClass>(cls);
                            for (SimMs t : times) {
                                for (const auto& w : weights) {
                                    ++cases;
                                    const auto want = oracle::place(s, nodes, w, t);
                                    try {
                                        const auto got = schedule_service(s, nodes, w, t);
                                        c.expect(want && got.node_id == want->node && got.reason == want->reason &&
                                                     std::abs(got.objective_ms - want->response) <=
                                                         kObjectiveRelTol * want->response,
                                                 "mismatch at case " + std::to_string(cases));
                                    } catch (const Error& e) {
                                        c.expect(!want && e.code() == ErrorCode::NoAdmissibleNode,
                                                 "unexpected error at case " + std::to_string(cases));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    const double secs = seconds_since(t0);
    c.expect(secs < kOracleBudgetS, fmt("took %.2f s", secs));
    c.out.detail = std::to_string(cases) + " cases, " + fmt("%.2f s", secs) +
                   (c.out.detail.empty() ? "" : "; " + c.out.detail);
    return c.out;
}

Scenario random_scenario(SplitMix64& rng, int index) {
    Scenario sc;
    sc.name = "random" + std::to_string(index);
    sc.horizon_ms = 4000;
    const Tier tiers[] = {Tier::Dealer, Tier::MNO, Tier::Cloud};
    for (Tier tier : tiers) {
        const int n = static_cast<int>(rng.next() % 3);
        for (int i = 0; i < n; ++i) {
            auto node = random_node(rng, tier, std::string("DMC"[static_cast<int>(tier)], 1) + std::to_string(i));
            node.open_hours = tier == Tier::Dealer ? std::optional<OpenHours>(OpenHours{0, 1440}) : std::nullopt;
            if (node.trust.level == TrustLevel::Untrusted) node.trust.level = TrustLevel::Low;
            sc.nodes.push_back(node);
        }
    }
    // Always at least one MNO so Critical services have somewhere to go.
    auto m = random_node(rng, Tier::MNO, "M9");
    m.trust.level = TrustLevel::High;
    m.storage_capacity.reset();
    sc.nodes.push_back(m);
    const int ns = 1 + static_cast<int>(rng.next() % 4);
    ConsumerSpec consumer{"u", std::nullopt, {}};
    for (int i = 0; i < ns; ++i) {
        auto s = fx::service("s" + std::to_string(i));
        s.security_class = i == 0 ? SecurityClass::Critical : static_cast<SecurityClass>(rng.next() % 3);
        s.latency_sensitive = rng.next() % 2;
        s.data_intensive = rng.next() % 2;
        s.cpu_demand = 10 + std::floor(rng.next_unit() * 500);
        sc.services.push_back(s);
        consumer.rates[s.id] = 1 + std::floor(rng.next_unit() * 20);
    }
    sc.consumers.push_back(consumer);
    sc.thresholds.min_samples = 3;
    sc.thresholds.theta_ms_per_s = 100;
    sc.thresholds.analysis_interval_ms = 500;
    return sc;
}

// 2. No Critical placement on an internet-path node, in schedule/reschedule
// sequences and in full simulations.
Verdict security_invariant() {
    Check c;
    SplitMix64 rng(2);
    long placements = 0;
    for (int i = 0; i < kSecurityScenarios; ++i) {
        const auto sc = random_scenario(rng, i);
        const auto topo = build_topology(sc.nodes);
        auto on_internet = [&](const NodeId& id) { return topo.at(id).internet_path; };
        for (const auto& s : sc.services) {
            if (s.security_class != SecurityClass::Critical) continue;
            auto d = schedule_service(s, topo.nodes(), sc.weights, 0);
            ++placements;
            c.expect(!on_internet(d.node_id), "schedule placed Critical on " + d.node_id);
            for (int step = 0; step < 8; ++step) {
                const auto trig = rng.next() % 2 ? AdviceTrigger::DelayPressure : AdviceTrigger::ComputeShortfall;
                std::optional<Tier> hint;
                if (rng.next() % 2) hint = static_cast<Tier>(rng.next() % 3);
                try {
                    d = reschedule(s, d, {s.id, trig, hint, 1 + rng.next_unit() * 1000}, topo.nodes(), sc.weights,
                                   step * 1000.0)
                            .decision;
                } catch (const Error& e) {
                    c.expect(e.code() == ErrorCode::NoAdmissibleNode, "unexpected reschedule error");
                    break;
                }
                ++placements;
                c.expect(!on_internet(d.node_id), "reschedule placed Critical on " + d.node_id);
            }
        }
        const auto r = simulate(sc, Policy::Sami, 1000 + i);
        for (const auto& inv : r.records) {
            const auto* s = sc.find_service(inv.service_id);
            if (s->security_class != SecurityClass::Critical || inv.outcome != sami::Outcome::Completed) continue;
            ++placements;
            c.expect(!on_internet(inv.node_id), "Critical executed on " + inv.node_id);
        }
        for (const auto& e : r.log) {
            if (e.kind != ArbitrationKind::Reschedule) continue;
            if (sc.find_service(e.service_id)->security_class != SecurityClass::Critical) continue;
            c.expect(!on_internet(e.to_node), "Critical moved to " + e.to_node);
        }
    }
    c.out.detail = std::to_string(kSecurityScenarios) + " scenarios, " + std::to_string(placements) +
                   " Critical placements checked" + (c.out.detail.empty() ? "" : "; " + c.out.detail);
    return c.out;
}

// 3. sami mean latency at most half of cloud-only on latency_mix.
Verdict latency_advantage() {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    const auto sc = load_scenario(fx::scenario_path("latency_mix.json"));
    const double sami = simulate(sc, Policy::Sami, sc.seed).report.run.totals.mean_latency_ms;
    const double cloud = simulate(sc, Policy::CloudOnly, sc.seed).report.run.totals.mean_latency_ms;
    const double secs = seconds_since(t0);
    c.expect(sami <= kLatencyRatio * cloud, "ratio too high");
    c.expect(secs < kLatencyBudgetS, "too slow");
    c.out.detail = fmt("sami %.1f ms, cloud-only %.1f ms, ratio %.3f", sami, cloud, sami / cloud) +
                   fmt(" (limit %.2f), %.2f s", kLatencyRatio, secs) +
                   (c.out.pass ? "" : "; " + c.out.detail);
    return c.out;
}

// 4. The hot cloud service migrates early and gets at least delta faster.
Verdict rescheduling_efficacy() {
    Check c;
    const auto sc = load_scenario(fx::scenario_path("hot_cloud_service.json"));
    const auto r = simulate(sc, Policy::Sami, sc.seed);
    const ArbitrationEvent* move = nullptr;
    for (const auto& e : r.log) {
        if (e.kind == ArbitrationKind::Reschedule && e.service_id == "hot") {
            move = &e;
            break;
        }
    }
    c.expect(move != nullptr, "no migration");
    if (!move) return c.out;
    const double last_tick = kMigrationTicks * sc.thresholds.analysis_interval_ms;
    c.expect(move->t <= last_tick, fmt("migrated at %.0f ms", move->t));
    c.expect(move->trigger == AdviceTrigger::DelayPressure, "trigger is not DelayPressure");
    c.expect(move->from_node == "C1" && move->to_node == "M1", "moved " + move->from_node + "->" + move->to_node);

    double before = 0, after = 0;
    int nb = 0, na = 0;
    for (const auto& inv : r.records) {
        if (inv.service_id != "hot" || inv.outcome != sami::Outcome::Completed) continue;
        if (inv.node_id == move->from_node && inv.t_arrive < move->t) {
            before += inv.latency_ms();
            ++nb;
        } else if (inv.node_id == move->to_node && inv.t_arrive >= move->t) {
            after += inv.latency_ms();
            ++na;
        }
    }
    c.expect(nb > 0 && na > 0, "missing samples");
    if (nb == 0 || na == 0) return c.out;
    before /= nb;
    after /= na;
    c.expect(before - after >= sc.thresholds.delta_ms, "gain below delta");
    c.out.detail = fmt("moved C1->M1 at %.0f ms (tick %.0f); mean %.1f -> ", move->t,
                       move->t / sc.thresholds.analysis_interval_ms, before) +
                   fmt("%.1f ms, drop %.1f ms (delta %.0f)", after, before - after, sc.thresholds.delta_ms) +
                   (c.out.pass ? "" : "; " + c.out.detail);
    return c.out;
}

// 5. Energy strictly falls with bandwidth at fixed bytes and wait.
Verdict energy_model() {
    Check c;
    const double bws[] = {1, 2, 5, 8, 10, 20, 50, 100, 300, 1000};
    const double mbs[] = {0.001, 0.01, 0.1, 0.5, 1, 2, 5, 10, 50, 100};
    const EnergyModel m{};
    int pairs = 0;
    for (double mb : mbs) {
        for (double wait : {0.0, 250.0}) {
            for (double b1 : bws) {
                for (double b2 : bws) {
                    if (!(b2 > b1)) continue;
                    ++pairs;
                    c.expect(energy_j(mb, b2, wait, m) < energy_j(mb, b1, wait, m),
                             fmt("mb %g, b1 %g, b2 %g", mb, b1, b2));
                }
            }
        }
    }
    c.out.detail = "100-point grid, " + std::to_string(pairs) + " ordered pairs" +
                   (c.out.pass ? "" : "; " + c.out.detail);
    return c.out;
}

// 6. Every arrival is accounted for.
Verdict conservation() {
    Check c;
    int runs = 0;
    auto check = [&](const Scenario& sc, Policy p, std::uint64_t seed) {
        const auto r = simulate(sc, p, seed);
        const auto& t = r.report.run.totals;
        ++runs;
        c.expect(r.arrivals == t.completed + t.rejected + t.dropped + t.in_flight,
                 sc.name + "/" + std::string(to_string(p)));
        c.expect(r.arrivals == t.invocations, sc.name + " invocation count");
    };
    for (const char* name : kShipped) {
        const auto sc = load_scenario(fx::scenario_path(name));
        for (Policy p : kAllPolicies) check(sc, p, sc.seed);
    }
    SplitMix64 rng(6);
    for (int i = 0; i < 100; ++i) {
        const auto sc = random_scenario(rng, i);
        for (Policy p : kAllPolicies) {
            try {
                check(sc, p, i);
            } catch (const Error& e) {
                c.expect(false, sc.name + ": " + e.what());
            }
        }
    }
    c.out.detail = std::to_string(runs) + " runs" + (c.out.pass ? "" : "; " + c.out.detail);
    return c.out;
}

// 7. Trust lattice bounds, every chain of length 1-4.
Verdict trust_lattice() {
    Check c;
    int chains = 0;
    std::function<void(std::vector<TrustAssessment>&)> walk = [&](std::vector<TrustAssessment>& chain) {
        if (!chain.empty()) {
            ++chains;
            TrustLevel lo = TrustLevel::High, hi = TrustLevel::Untrusted;
            for (const auto& a : chain) {
                lo = std::min(lo, a.level);
                hi = std::max(hi, a.level);
            }
            const auto agg = trust::aggregate_trust(chain).level;
            c.expect(agg >= lo && agg <= hi, "aggregate out of bounds");
            if (chain.size() >= 2) {
                const auto ind = trust::indirect_trust(chain).level;
                c.expect(ind <= lo && ind <= TrustLevel::Low, "indirect above bound");
            }
        }
        if (chain.size() == 4) return;
        for (int l = 0; l < 4; ++l) {
            chain.push_back({static_cast<TrustLevel>(l), TrustBasis::Established});
            walk(chain);
            chain.pop_back();
        }
    };
    std::vector<TrustAssessment> chain;
    walk(chain);
    c.out.detail = std::to_string(chains) + " chains" + (c.out.pass ? "" : "; " + c.out.detail);
    return c.out;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(SAMI_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// 8. compare.csv is byte-identical across runs with one seed.
Verdict determinism() {
    Check c;
    for (const char* name : kShipped) {
        const auto a = fx::scratch_dir("accept_a"), b = fx::scratch_dir("accept_b");
        const auto scen = fx::scenario_path(name).string();
        c.expect(run_cli("compare --scenario " + scen + " --seed 42 --out " + a.string()) == 0, "compare failed");
        c.expect(run_cli("compare --scenario " + scen + " --seed 42 --out " + b.string()) == 0, "compare failed");
        const auto x = slurp(a / "compare.csv"), y = slurp(b / "compare.csv");
        c.expect(!x.empty() && x == y, std::string(name) + " differs");
    }
    c.out.detail = "4 scenarios x 2 runs via the sami binary" + std::string(c.out.pass ? "" : "; " + c.out.detail);
    return c.out;
}

// 9. Dealer executions stay inside opening hours; after-hours arrivals go
// to the MNO or cloud.
Verdict dealer_hours() {
    Check c;
    const auto sc = load_scenario(fx::scenario_path("dealer_hours.json"));
    const auto topo = build_topology(sc.nodes);
    int on_dealer = 0, after_hours = 0;
    for (Policy p : kAllPolicies) {
        const auto r = simulate(sc, p, sc.seed);
        for (const auto& inv : r.records) {
            if (inv.outcome != sami::Outcome::Completed) continue;
            const auto& node = topo.at(inv.node_id);
            const long start_minute = static_cast<long>(std::floor(inv.t_start / kMsPerMinute)) % 1440;
            if (node.tier == Tier::Dealer) {
                if (p == Policy::Sami) ++on_dealer;
                c.expect(start_minute >= 540 && start_minute < 1020, fmt("dealer start at minute %.0f",
                                                                         static_cast<double>(start_minute)));
            }
            if (p != Policy::Sami) continue;
            const long arrive_minute = static_cast<long>(std::floor(inv.t_arrive / kMsPerMinute)) % 1440;
            if (arrive_minute < 540 || arrive_minute >= 1020) {
                ++after_hours;
                c.expect(node.tier != Tier::Dealer, "after-hours request ran on the dealer");
            }
        }
    }
    c.expect(on_dealer > 0 && after_hours > 0, "scenario exercised neither side");
    c.out.detail = std::to_string(on_dealer) + " dealer executions in hours, " + std::to_string(after_hours) +
                   " after-hours requests served elsewhere" + (c.out.pass ? "" : "; " + c.out.detail);
    return c.out;
}

// 10. arbitration_events equals an independent recount of the event log.
Verdict overhead_metric() {
    Check c;
    for (const char* name : kShipped) {
        const auto sc = load_scenario(fx::scenario_path(name));
        const auto r = simulate(sc, Policy::Sami, sc.seed);
        std::uint64_t reg = 0, eval = 0, moves = 0;
        std::map<ServiceId, std::uint64_t> per_service;
        for (const auto& e : r.log) {
            reg += e.kind == ArbitrationKind::Registration;
            eval += e.kind == ArbitrationKind::AnalysisEvaluation;
            moves += e.kind == ArbitrationKind::Reschedule;
            ++per_service[e.service_id];
        }
        const auto ticks = static_cast<std::uint64_t>(sc.horizon_ms / sc.thresholds.analysis_interval_ms);
        c.expect(reg == sc.services.size(), std::string(name) + " registrations");
        c.expect(eval == ticks * sc.services.size(), std::string(name) + " evaluations");
        c.expect(moves == r.report.run.totals.reschedules, std::string(name) + " reschedules");
        c.expect(r.report.run.totals.arbitration_events == reg + eval + moves, std::string(name) + " total");
        for (const auto& s : r.report.services) {
            c.expect(s.arbitration_events == per_service[s.service_id], s.service_id + " per-service count");
        }
    }
    c.out.detail = "4 scenarios, totals and per-service counts" + std::string(c.out.pass ? "" : "; " + c.out.detail);
    return c.out;
}

// 11. Billing: unbilled outcomes, additivity, zero-rebate identity.
Verdict billing_properties() {
    Check c;
    SplitMix64 rng(11);
    int samples = 0;
    for (int i = 0; i < 10000; ++i, ++samples) {
        const Tariff t{rng.next_unit() * 3, rng.next_unit() * 2, rng.next_unit() * 0.2};
        InvocationRecord a, b, ab;
        a.exec_ms = rng.next_unit() * 10000;
        a.payload_mb = rng.next_unit() * 50;
        b.exec_ms = rng.next_unit() * 10000;
        b.payload_mb = rng.next_unit() * 50;
        ab.exec_ms = a.exec_ms + b.exec_ms;
        ab.payload_mb = a.payload_mb + b.payload_mb;
        const double lhs = billing::compute_charge(ab, t);
        const double rhs = billing::compute_charge(a, t) + billing::compute_charge(b, t) - t.base_fee;
        c.expect(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(lhs)), "additivity");

        for (auto o : {sami::Outcome::Rejected, sami::Outcome::Dropped}) {
            auto x = a;
            x.outcome = o;
            c.expect(billing::charge_or_zero(x, t) == 0.0, "non-Completed billed");
        }
        const double charge = rng.next_unit() * 100;
        const QoSParameters q{0, rng.next_unit() * 50, rng.next_unit() * 500, 10, 0};
        c.expect(billing::apply_slo_rebate(charge, q, rng.next_unit() * 2000, rng.next_unit() * 2000, 0.0) == charge,
                 "rebate identity");
    }
    for (const char* name : kShipped) {
        const auto sc = load_scenario(fx::scenario_path(name));
        for (Policy p : kAllPolicies) {
            for (const auto& inv : simulate(sc, p, sc.seed).records) {
                if (inv.outcome != sami::Outcome::Completed) c.expect(inv.charge == 0.0, "simulated unbilled charge");
            }
        }
    }
    c.out.detail = std::to_string(samples) + " random usages plus simulated records" +
                   (c.out.pass ? "" : "; " + c.out.detail);
    return c.out;
}

}  // namespace

int main() {
    const std::pair<const char*, Verdict (*)()> criteria[] = {
        {"scheduler matches enumeration oracle", scheduler_oracle},
        {"Critical never on an internet path", security_invariant},
        {"latency_mix: sami <= 0.5 x cloud-only", latency_advantage},
        {"hot_cloud_service migrates and speeds up", rescheduling_efficacy},
        {"energy falls with bandwidth", energy_model},
        {"request conservation", conservation},
        {"trust lattice bounds", trust_lattice},
        {"compare.csv determinism", determinism},
        {"dealer opening hours", dealer_hours},
        {"arbitration_events recount", overhead_metric},
        {"billing properties", billing_properties},
    };
    int failed = 0, id = 0;
    for (const auto& [name, fn] : criteria) {
        ++id;
        Verdict o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%d criteria passed\n", id - failed, id);
    return failed == 0 ? 0 : 1;
}
