#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace sami {

struct ServiceMetrics {
    std::string service_id;
    std::string tier;  // final placement tier, "none" when unplaced
    std::uint64_t invocations = 0;
    std::uint64_t completed = 0;
    std::uint64_t rejected = 0;
    std::uint64_t dropped = 0;
    std::uint64_t in_flight = 0;
    double mean_latency_ms = 0;
    double p95_latency_ms = 0;
    double energy_j_total = 0;
    double charge_total = 0;
    std::uint64_t reschedules = 0;
    std::uint64_t arbitration_events = 0;
    std::uint64_t security_violations = 0;
};

struct RunMetrics {
    std::string policy;
    std::uint64_t seed = 0;
    ServiceMetrics totals;  // service_id/tier unused
    double wall_ms = 0;     // simulated time covered by the run
};

struct MetricsReport {
    RunMetrics run;
    std::vector<ServiceMetrics> services;
};

// Column order of metrics.csv and compare.csv.
const std::vector<std::string>& metrics_columns();

// Six significant digits, "%.6g" style.
std::string format_float(double v);

// Header, then one "service" row per service and one "run" row per report.
void write_metrics_csv(std::ostream& os, const std::vector<MetricsReport>& reports);

nlohmann::json metrics_json(const MetricsReport& report);

}  // namespace sami
