#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sami/error.hpp"
#include "sami/model.hpp"
#include "sami/workload.hpp"

namespace fx {

using namespace sami;

inline TrustAssessment trusted(TrustLevel l = TrustLevel::High, TrustBasis b = TrustBasis::Established) {
    return {l, b};
}

inline ResourceNode dealer(const std::string& id, double rtt = 5, double bw = 100, double speed = 1000) {
    ResourceNode n;
    n.id = id;
    n.tier = Tier::Dealer;
    n.cpu_speed = speed;
    n.cpu_slots = 2;
    n.mem_capacity = 1024;
    n.storage_capacity = 64;
    n.rtt_ms = rtt;
    n.bandwidth_mbps = bw;
    n.internet_path = false;
    n.trust = trusted();
    n.tariff = {0.01, 0.02, 0.001};
    n.open_hours = OpenHours{0, 1440};
    return n;
}

inline ResourceNode mno(const std::string& id, double rtt = 50, double bw = 50, double speed = 4000) {
    ResourceNode n;
    n.id = id;
    n.tier = Tier::MNO;
    n.cpu_speed = speed;
    n.cpu_slots = 8;
    n.mem_capacity = 8192;
    n.storage_capacity = 1024;
    n.rtt_ms = rtt;
    n.bandwidth_mbps = bw;
    n.internet_path = false;
    n.trust = trusted();
    n.tariff = {0.02, 0.03, 0.002};
    n.security_norm = 0.9;
    return n;
}

inline ResourceNode cloud(const std::string& id, double rtt = 120, double bw = 20, double speed = 8000) {
    ResourceNode n;
    n.id = id;
    n.tier = Tier::Cloud;
    n.cpu_speed = speed;
    n.cpu_slots = 32;
    n.mem_capacity = 65536;
    n.rtt_ms = rtt;
    n.bandwidth_mbps = bw;
    n.internet_path = true;
    n.trust = trusted();
    n.tariff = {0.05, 0.01, 0.004};
    n.security_norm = 0.6;
    return n;
}

// D1 dealer, M1 MNO, C1 cloud.
inline std::vector<ResourceNode> t0() { return {dealer("D1"), mno("M1"), cloud("C1")}; }

inline ServiceDescriptor service(const std::string& id, std::set<std::string> tags = {"compute"}) {
    ServiceDescriptor s;
    s.id = id;
    s.name = id;
    s.version = "1.0.0";
    s.capability_tags = std::move(tags);
    s.description = id + " service";
    s.cpu_demand = 50;
    s.mem_demand = 64;
    s.storage_demand = 8;
    s.payload_in = 0.1;
    s.payload_out = 0.05;
    s.sla_latency_ms = 500;
    return s;
}

inline std::filesystem::path scenario_path(const std::string& name) {
    return std::filesystem::path(SAMI_SCENARIO_DIR) / name;
}

// A fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("sami_test_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

// The ErrorCode thrown by f, or nullopt when it returns normally.
template <class F>
std::optional<ErrorCode> code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

}  // namespace fx
