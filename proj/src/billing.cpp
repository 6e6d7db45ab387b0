#include "sami/billing.hpp"

#include "sami/error.hpp"

namespace sami::billing {

Tariff default_tariff(Tier tier) {
    switch (tier) {
    case Tier::Dealer: return {0.01, 0.02, 0.001};
    case Tier::MNO: return {0.02, 0.03, 0.002};
    case Tier::Cloud: return {0.05, 0.01, 0.004};
    }
    return {};
}

double compute_charge(const InvocationRecord& inv, const Tariff& tariff) {
    if (inv.outcome != Outcome::Completed) {
        throw Error(ErrorCode::NotBillable, "invocation " + std::to_string(inv.request_id) + " is " +
                                                std::string(to_string(inv.outcome)));
    }
    return tariff.base_fee + tariff.cpu_rate * inv.exec_ms / 1000.0 + tariff.data_rate * inv.payload_mb;
}

double charge_or_zero(const InvocationRecord& inv, const Tariff& tariff) {
    if (inv.outcome != Outcome::Completed) return 0.0;
    return compute_charge(inv, tariff);
}

double projected_charge(const ServiceDescriptor& service, const ResourceNode& node) {
    InvocationRecord inv;
    inv.exec_ms = expected_exec_ms(service, node);
    inv.payload_mb = service.payload_total();
    return compute_charge(inv, node.tariff);
}

double apply_slo_rebate(double charge, const QoSParameters& qos, double observed_latency_ms, double sla_ms,
                        double rebate_frac) {
    if (rebate_frac < 0.0 || rebate_frac > 1.0) {
        throw Error(ErrorCode::PreconditionViolation, "rebate_frac must lie in [0,1]");
    }
    if (observed_latency_ms + qos.jitter_ms + qos.session_reestablish_ms > sla_ms) {
        return charge * (1.0 - rebate_frac);
    }
    return charge;
}

}  // namespace sami::billing
