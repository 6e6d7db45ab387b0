#include "doctest.h"
#include "fixtures.hpp"
#include "oracle.hpp"
#include "sami/scheduler.hpp"
#include "sami/workload.hpp"

using namespace sami;
using fx::code_of;

TEST_SUITE("scheduler") {
TEST_CASE("spec placements on T0") {
    const auto nodes = fx::t0();
    SUBCASE("Critical pins to the MNO") {
        auto s = fx::service("s");
        s.security_class = SecurityClass::Critical;
        const auto d = schedule_service(s, nodes, {}, 0);
        CHECK(d.node_id == "M1");
        CHECK(d.reason == PlacementReason::SecurityPin);
    }
    SUBCASE("latency-sensitive Public prefers the open dealer") {
        auto s = fx::service("s");
        s.latency_sensitive = true;
        const auto d = schedule_service(s, nodes, {}, 0);
        CHECK(d.node_id == "D1");
        CHECK(d.reason == PlacementReason::LatencyPreference);
        CHECK(d.objective_ms == doctest::Approx(projected_response_ms(s, nodes[0])));
    }
    SUBCASE("data-intensive prefers clouds") {
        auto s = fx::service("s");
        s.data_intensive = true;
        const auto d = schedule_service(s, nodes, {}, 0);
        CHECK(d.node_id == "C1");
        CHECK(d.reason == PlacementReason::DataIntensive);
    }
    SUBCASE("storage beyond every MNO prefers clouds") {
        auto s = fx::service("s");
        s.storage_demand = 2048;
        CHECK(schedule_service(s, nodes, {}, 0).reason == PlacementReason::DataIntensive);
    }
    SUBCASE("all Untrusted") {
        auto untrusted = nodes;
        for (auto& n : untrusted) n.trust.level = TrustLevel::Untrusted;
        CHECK(code_of([&] { schedule_service(fx::service("s"), untrusted, {}, 0); }) ==
              ErrorCode::NoAdmissibleNode);
    }
    SUBCASE("closed dealer falls through to the other tiers") {
        auto closed = nodes;
        closed[0].open_hours = OpenHours{540, 1020};
        auto s = fx::service("s");
        s.latency_sensitive = true;
        const auto d = schedule_service(s, closed, {}, 0);
        CHECK(d.tier != Tier::Dealer);
        CHECK(d.reason == PlacementReason::CapacityFallback);
    }
}

TEST_CASE("Critical with a single MNO ignores the weights") {
    auto s = fx::service("s");
    s.security_class = SecurityClass::Critical;
    auto nodes = fx::t0();
    nodes.push_back(fx::dealer("D2", 1, 1000, 100000));
    SplitMix64 rng(3);
    for (int i = 0; i < 200; ++i) {
        const double wl = rng.next_unit();
        CHECK(schedule_service(s, nodes, {wl, 1 - wl}, 0).node_id == "M1");
    }
}

TEST_CASE("matches the enumeration oracle on random topologies") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 3000; ++trial) {
        std::vector<ResourceNode> nodes;
        const int per_tier[3] = {static_cast<int>(rng.next() % 4), static_cast<int>(rng.next() % 4),
                                 static_cast<int>(rng.next() % 4)};
        for (int tier = 0; tier < 3; ++tier) {
            for (int i = 0; i < per_tier[tier]; ++i) {
                const std::string id = std::string("DMC"[tier], 1) + std::to_string(i);
                auto n = tier == 0 ? fx::dealer(id) : tier == 1 ? fx::mno(id) : fx::cloud(id);
                n.rtt_ms = 1 + static_cast<double>(rng.next() % 200);
                n.bandwidth_mbps = 1 + static_cast<double>(rng.next() % 100);
                n.cpu_speed = 100 + static_cast<double>(rng.next() % 8000);
                n.trust.level = static_cast<TrustLevel>(rng.next() % 4);
                n.trust.basis = static_cast<TrustBasis>(rng.next() % 4);
                if (rng.next() % 4 == 0) n.storage_capacity = static_cast<double>(rng.next() % 128);
                if (tier == 0 && rng.next() % 2) n.open_hours = OpenHours{540, 1020};
                nodes.push_back(n);
            }
        }
        auto s = fx::service("s");
        s.latency_sensitive = rng.next() % 2;
        s.data_intensive = rng.next() % 2;
        s.security_class = static_cast<SecurityClass>(rng.next() % 3);
        s.storage_demand = static_cast<double>(rng.next() % 100);
        s.cpu_demand = static_cast<double>(rng.next() % 1000);
        const double wl = rng.next_unit();
        const SchedulerWeights w{wl, 1 - wl};
        const SimMs t = static_cast<double>(rng.next() % 1440) * kMsPerMinute;

        const auto expected = oracle::place(s, nodes, w, t);
        if (!expected) {
            CHECK(code_of([&] { schedule_service(s, nodes, w, t); }) == ErrorCode::NoAdmissibleNode);
            continue;
        }
        const auto got = schedule_service(s, nodes, w, t);
        CHECK(got.node_id == expected->node);
        CHECK(got.reason == expected->reason);
        CHECK(got.objective_ms == doctest::Approx(expected->response));
    }
}

TEST_CASE("reschedule") {
    auto nodes = fx::t0();
    auto s = fx::service("s");
    s.latency_sensitive = true;
    s.storage_demand = 100;
    nodes[0].storage_capacity = 200;

    SUBCASE("delay pressure moves cloud to dealer") {
        PlacementDecision current{s.id, "C1", Tier::Cloud, projected_response_ms(s, nodes[2]),
                                  PlacementReason::DataIntensive, 0};
        const auto r = reschedule(s, current, {s.id, AdviceTrigger::DelayPressure, Tier::Dealer, 100}, nodes, {}, 5);
        CHECK(r.moved);
        CHECK(r.decision.node_id == "D1");
        CHECK(r.decision.reason == PlacementReason::Reschedule);
        CHECK(r.decision.decided_at == 5);
        CHECK(r.migration_delay_ms == doctest::Approx(transmit_ms(100, nodes[0].bandwidth_mbps)));
    }
    SUBCASE("already optimal stays put") {
        const auto current = schedule_service(s, nodes, {}, 0);
        const auto r = reschedule(s, current, {s.id, AdviceTrigger::DelayPressure, Tier::Dealer, 10}, nodes, {}, 5);
        CHECK_FALSE(r.moved);
        CHECK(r.decision == current);
    }
    SUBCASE("compute shortfall leaves the slow node") {
        PlacementDecision current{s.id, "D1", Tier::Dealer, projected_response_ms(s, nodes[0]),
                                  PlacementReason::LatencyPreference, 0};
        const auto r = reschedule(s, current, {s.id, AdviceTrigger::ComputeShortfall, std::nullopt, 1000}, nodes, {}, 5);
        CHECK(r.moved);
        CHECK(r.decision.node_id != "D1");
    }
    SUBCASE("non-positive gain is rejected") {
        const auto current = schedule_service(s, nodes, {}, 0);
        CHECK(code_of([&] {
                  reschedule(s, current, {s.id, AdviceTrigger::DelayPressure, std::nullopt, 0}, nodes, {}, 0);
              }) == ErrorCode::PreconditionViolation);
    }
}

TEST_CASE("migration of 100 MB over 50 Mbps takes 16 s") {
    auto s = fx::service("s");
    s.storage_demand = 100;
    CHECK(migration_delay_ms(s, fx::mno("M", 50, 50)) == doctest::Approx(16000.0));
}

TEST_CASE("reschedule never worsens objective and never exposes Critical") {
    SplitMix64 rng(77);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<ResourceNode> nodes{fx::dealer("D1", 1 + rng.next_unit() * 20), fx::mno("M1"),
                                        fx::mno("M2", 20 + rng.next_unit() * 60), fx::cloud("C1"),
                                        fx::cloud("C2", 60 + rng.next_unit() * 200)};
        auto s = fx::service("s");
        s.latency_sensitive = rng.next() % 2;
        s.data_intensive = rng.next() % 2;
        s.security_class = static_cast<SecurityClass>(rng.next() % 3);
        auto current = schedule_service(s, nodes, {}, 0);
        for (int step = 0; step < 5; ++step) {
            const auto trigger = rng.next() % 2 ? AdviceTrigger::DelayPressure : AdviceTrigger::ComputeShortfall;
            std::optional<Tier> hint;
            if (rng.next() % 2) hint = static_cast<Tier>(rng.next() % 3);
            const double gain = 1 + rng.next_unit() * 500;
            RescheduleResult r;
            if (code_of([&] { r = reschedule(s, current, {s.id, trigger, hint, gain}, nodes, {}, step); })) break;
            const double bar = current.objective_ms + (trigger == AdviceTrigger::ComputeShortfall ? gain : 0.0);
            CHECK(r.decision.objective_ms <= bar);
            if (s.security_class == SecurityClass::Critical) {
                const auto& n = *std::find_if(nodes.begin(), nodes.end(),
                                              [&](const auto& x) { return x.id == r.decision.node_id; });
                CHECK_FALSE(n.internet_path);
            }
            current = r.decision;
        }
    }
}

TEST_CASE("cloud scoring") {
    auto best = fx::cloud("A", 50, 100);
    best.tariff.base_fee = 0.01;
    best.security_norm = 1.0;
    auto worst = fx::cloud("B", 300, 10);
    worst.tariff.base_fee = 0.09;
    worst.security_norm = 0.1;
    const std::vector<ResourceNode> pair{best, worst};
    const auto norm = cloud_normalizers(pair);
    CHECK(score_cloud(best, norm) == doctest::Approx(1.0));
    CHECK(classify_cloud(score_cloud(best, norm)) == CloudClass::High);
    CHECK(score_cloud(worst, norm) == doctest::Approx(0.0));
    CHECK(classify_cloud(score_cloud(worst, norm)) == CloudClass::Low);

    // One metric differs: it contributes 1 or 0, the other three 0.5 each.
    auto a = fx::cloud("A", 100, 20), b = fx::cloud("B", 200, 20);
    const std::vector<ResourceNode> mid{a, b};
    const auto n2 = cloud_normalizers(mid);
    CHECK(score_cloud(a, n2) == doctest::Approx(0.625));
    CHECK(score_cloud(b, n2) == doctest::Approx(0.375));
    CHECK(classify_cloud(0.625) == CloudClass::Mid);
}
}
