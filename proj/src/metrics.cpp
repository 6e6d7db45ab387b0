#include "sami/metrics.hpp"

#include <cstdio>
#include <cstdlib>

namespace sami {

const std::vector<std::string>& metrics_columns() {
    static const std::vector<std::string> cols = {
        "row",           "policy",         "seed",           "service_id",   "tier",
        "invocations",   "completed",      "rejected",       "dropped",      "in_flight",
        "mean_latency_ms", "p95_latency_ms", "energy_j_total", "charge_total", "reschedules",
        "arbitration_events", "security_violations", "wall_ms"};
    return cols;
}

std::string format_float(double v) {
    if (v == 0) return "0";  // folds -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_row(std::ostream& os, const std::string& kind, const RunMetrics& run, const ServiceMetrics& m,
               const std::string& wall) {
    os << kind << ',' << csv_field(run.policy) << ',' << run.seed << ',' << csv_field(m.service_id) << ','
       << csv_field(m.tier) << ',' << m.invocations << ',' << m.completed << ',' << m.rejected << ',' << m.dropped
       << ',' << m.in_flight << ',' << format_float(m.mean_latency_ms) << ',' << format_float(m.p95_latency_ms)
       << ',' << format_float(m.energy_j_total) << ',' << format_float(m.charge_total) << ',' << m.reschedules
       << ',' << m.arbitration_events << ',' << m.security_violations << ',' << wall << '\n';
}

// JSON numbers carry the same rounding as the CSV.
double rounded(double v) {
    return std::strtod(format_float(v).c_str(), nullptr);
}

nlohmann::json service_json(const ServiceMetrics& m) {
    return {{"service_id", m.service_id},
            {"tier", m.tier},
            {"invocations", m.invocations},
            {"completed", m.completed},
            {"rejected", m.rejected},
            {"dropped", m.dropped},
            {"in_flight", m.in_flight},
            {"mean_latency_ms", rounded(m.mean_latency_ms)},
            {"p95_latency_ms", rounded(m.p95_latency_ms)},
            {"energy_j_total", rounded(m.energy_j_total)},
            {"charge_total", rounded(m.charge_total)},
            {"reschedules", m.reschedules},
            {"arbitration_events", m.arbitration_events},
            {"security_violations", m.security_violations}};
}

}  // namespace

void write_metrics_csv(std::ostream& os, const std::vector<MetricsReport>& reports) {
    const auto& cols = metrics_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << '\n';
    for (const auto& r : reports) {
        for (const auto& s : r.services) write_row(os, "service", r.run, s, "");
        write_row(os, "run", r.run, r.run.totals, format_float(r.run.wall_ms));
    }
}

nlohmann::json metrics_json(const MetricsReport& report) {
    nlohmann::json services = nlohmann::json::array();
    for (const auto& s : report.services) services.push_back(service_json(s));
    auto run = service_json(report.run.totals);
    run.erase("service_id");
    run.erase("tier");
    run["policy"] = report.run.policy;
    run["seed"] = report.run.seed;
    run["wall_ms"] = rounded(report.run.wall_ms);
    return {{"columns", metrics_columns()}, {"run", run}, {"services", services}};
}

}  // namespace sami
