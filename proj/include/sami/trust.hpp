#pragma once

// Four ways a consumer can come to trust an infrastructure node: testing it
// first, aggregating neighbours' opinions, following a chain of trust, or
// relying on the provider's reputation.

#include <span>
#include <vector>

#include "sami/model.hpp"

namespace sami::trust {

struct ReputationRecord {
    NodeId node_id;
    bool legal_registered = false;
    int years_active = 0;
    double complaint_rate = 0;  // [0,1]

    friend bool operator==(const ReputationRecord&, const ReputationRecord&) = default;
};

// High after >= 3 passing probes, Medium after fewer, Untrusted on failure.
TrustAssessment establish_trust(bool probe_passed, int probe_count);

// Lower median of the opinion levels.
TrustAssessment aggregate_trust(std::span<const TrustAssessment> opinions);

// Weakest link of the chain, never above Low.
TrustAssessment indirect_trust(std::span<const TrustAssessment> chain);

TrustAssessment reputation_trust(const ReputationRecord& rec);

// Strongest assessment in the list. A Reputation result is corroborated
// (re-labelled Aggregated) only when some non-Reputation assessment is also
// present; otherwise it keeps its Reputation basis and is capped for
// Sensitive services by admissibility_level.
TrustAssessment effective_trust(std::span<const TrustAssessment> assessments);

// Trust level that counts toward the security gate. Uncorroborated
// reputation evidence is capped at Medium for Sensitive services.
TrustLevel admissibility_level(const TrustAssessment& trust, SecurityClass cls);

}  // namespace sami::trust
