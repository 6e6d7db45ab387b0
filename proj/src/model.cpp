#include "sami/model.hpp"

#include <cmath>

#include "sami/trust.hpp"

namespace sami {

std::string_view to_string(Tier t) {
    switch (t) {
    case Tier::Dealer: return "Dealer";
    case Tier::MNO: return "MNO";
    case Tier::Cloud: return "Cloud";
    }
    return "?";
}

std::string_view to_string(SecurityClass c) {
    switch (c) {
    case SecurityClass::Public: return "Public";
    case SecurityClass::Sensitive: return "Sensitive";
    case SecurityClass::Critical: return "Critical";
    }
    return "?";
}

std::string_view to_string(TrustLevel l) {
    switch (l) {
    case TrustLevel::Untrusted: return "Untrusted";
    case TrustLevel::Low: return "Low";
    case TrustLevel::Medium: return "Medium";
    case TrustLevel::High: return "High";
    }
    return "?";
}

std::string_view to_string(TrustBasis b) {
    switch (b) {
    case TrustBasis::Established: return "Established";
    case TrustBasis::Aggregated: return "Aggregated";
    case TrustBasis::Indirect: return "Indirect";
    case TrustBasis::Reputation: return "Reputation";
    }
    return "?";
}

std::string_view to_string(CloudClass c) {
    switch (c) {
    case CloudClass::Low: return "Low";
    case CloudClass::Mid: return "Mid";
    case CloudClass::High: return "High";
    }
    return "?";
}

std::string_view to_string(PlacementReason r) {
    switch (r) {
    case PlacementReason::SecurityPin: return "SecurityPin";
    case PlacementReason::LatencyPreference: return "LatencyPreference";
    case PlacementReason::DataIntensive: return "DataIntensive";
    case PlacementReason::CapacityFallback: return "CapacityFallback";
    case PlacementReason::Reschedule: return "Reschedule";
    }
    return "?";
}

std::string_view to_string(Outcome o) {
    switch (o) {
    case Outcome::Completed: return "Completed";
    case Outcome::Rejected: return "Rejected";
    case Outcome::Dropped: return "Dropped";
    }
    return "?";
}

std::optional<Tier> parse_tier(std::string_view s) {
    if (s == "Dealer") return Tier::Dealer;
    if (s == "MNO") return Tier::MNO;
    if (s == "Cloud") return Tier::Cloud;
    return std::nullopt;
}

std::optional<SecurityClass> parse_security_class(std::string_view s) {
    if (s == "Public") return SecurityClass::Public;
    if (s == "Sensitive") return SecurityClass::Sensitive;
    if (s == "Critical") return SecurityClass::Critical;
    return std::nullopt;
}

std::optional<TrustLevel> parse_trust_level(std::string_view s) {
    if (s == "Untrusted") return TrustLevel::Untrusted;
    if (s == "Low") return TrustLevel::Low;
    if (s == "Medium") return TrustLevel::Medium;
    if (s == "High") return TrustLevel::High;
    return std::nullopt;
}

std::optional<TrustBasis> parse_trust_basis(std::string_view s) {
    if (s == "Established") return TrustBasis::Established;
    if (s == "Aggregated") return TrustBasis::Aggregated;
    if (s == "Indirect") return TrustBasis::Indirect;
    if (s == "Reputation") return TrustBasis::Reputation;
    return std::nullopt;
}

double transmit_ms(double mb, double bandwidth_mbps) {
    return mb * 8.0 * 1000.0 / bandwidth_mbps;
}

double expected_exec_ms(const ServiceDescriptor& service, const ResourceNode& node) {
    return service.cpu_demand / node.cpu_speed * 1000.0;
}

double projected_response_ms(const ServiceDescriptor& service, const ResourceNode& node) {
    return node.rtt_ms + transmit_ms(service.payload_total(), node.bandwidth_mbps) +
           expected_exec_ms(service, node);
}

bool within_open_hours(const ResourceNode& node, SimMs t) {
    if (!node.open_hours) return true;
    const double minute = std::fmod(std::floor(t / kMsPerMinute), kMinutesPerDay);
    return minute >= node.open_hours->open_minute && minute < node.open_hours->close_minute;
}

bool fits_capacity(const ServiceDescriptor& service, const ResourceNode& node) {
    if (service.mem_demand > node.mem_capacity) return false;
    if (node.storage_capacity && service.storage_demand > *node.storage_capacity) return false;
    // A positive cpu demand needs at least one execution slot.
    if (service.cpu_demand > 0 && node.cpu_slots < 1) return false;
    return true;
}

bool passes_security_gate(const ServiceDescriptor& service, const ResourceNode& node) {
    switch (service.security_class) {
    case SecurityClass::Critical:
        return !node.internet_path && node.tier == Tier::MNO;
    case SecurityClass::Sensitive:
        return !node.internet_path ||
               trust::admissibility_level(node.trust, SecurityClass::Sensitive) >= TrustLevel::High;
    case SecurityClass::Public:
        return true;
    }
    return false;
}

bool is_admissible(const ServiceDescriptor& service, const ResourceNode& node, SimMs t) {
    if (!fits_capacity(service, node)) return false;
    if (node.tier == Tier::Dealer && !within_open_hours(node, t)) return false;
    if (!passes_security_gate(service, node)) return false;
    return node.trust.level > TrustLevel::Untrusted;
}

}  // namespace sami
