#include "sami/trust.hpp"

#include <algorithm>

#include "sami/error.hpp"

namespace sami::trust {

TrustAssessment establish_trust(bool probe_passed, int probe_count) {
    if (probe_count < 1) {
        throw Error(ErrorCode::PreconditionViolation, "probe_count must be >= 1");
    }
    TrustAssessment out{TrustLevel::Untrusted, TrustBasis::Established};
    if (!probe_passed) return out;
    out.level = probe_count >= 3 ? TrustLevel::High : TrustLevel::Medium;
    return out;
}

TrustAssessment aggregate_trust(std::span<const TrustAssessment> opinions) {
    if (opinions.empty()) throw Error(ErrorCode::EmptyOpinions, "no opinions to aggregate");
    std::vector<TrustLevel> levels;
    levels.reserve(opinions.size());
    for (const auto& o : opinions) levels.push_back(o.level);
    std::sort(levels.begin(), levels.end());
    return {levels[(levels.size() - 1) / 2], TrustBasis::Aggregated};
}

TrustAssessment indirect_trust(std::span<const TrustAssessment> chain) {
    if (chain.size() < 2) throw Error(ErrorCode::ChainTooShort, "indirect trust needs at least two links");
    auto weakest = std::min_element(chain.begin(), chain.end(), [](const auto& a, const auto& b) {
                       return a.level < b.level;
                   })->level;
    return {std::min(weakest, TrustLevel::Low), TrustBasis::Indirect};
}

TrustAssessment reputation_trust(const ReputationRecord& rec) {
    TrustAssessment out{TrustLevel::Untrusted, TrustBasis::Reputation};
    if (!rec.legal_registered) return out;
    if (rec.years_active >= 5 && rec.complaint_rate < 0.05) {
        out.level = TrustLevel::High;
    } else if (rec.complaint_rate < 0.2) {
        out.level = TrustLevel::Medium;
    } else {
        out.level = TrustLevel::Low;
    }
    return out;
}

TrustAssessment effective_trust(std::span<const TrustAssessment> assessments) {
    if (assessments.empty()) throw Error(ErrorCode::EmptyOpinions, "no assessments");
    // Highest level wins; on equal levels prefer non-Reputation evidence.
    auto best = std::max_element(assessments.begin(), assessments.end(), [](const auto& a, const auto& b) {
        if (a.level != b.level) return a.level < b.level;
        return (a.basis == TrustBasis::Reputation) && (b.basis != TrustBasis::Reputation);
    });
    TrustAssessment out = *best;
    if (out.basis == TrustBasis::Reputation) {
        const bool corroborated = std::any_of(assessments.begin(), assessments.end(), [](const auto& a) {
            return a.basis != TrustBasis::Reputation;
        });
        if (corroborated) out.basis = TrustBasis::Aggregated;
    }
    return out;
}

TrustLevel admissibility_level(const TrustAssessment& trust, SecurityClass cls) {
    if (cls == SecurityClass::Sensitive && trust.basis == TrustBasis::Reputation) {
        return std::min(trust.level, TrustLevel::Medium);
    }
    return trust.level;
}

}  // namespace sami::trust
