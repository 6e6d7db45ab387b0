#pragma once

#include "sami/model.hpp"

namespace sami::billing {

inline constexpr double kDefaultRebateFrac = 0.1;

// Tier default tariffs; base fees rise with distance from the consumer.
Tariff default_tariff(Tier tier);

// base_fee + cpu_rate * exec seconds + data_rate * MB moved.
// Throws NotBillable for anything but a Completed invocation.
double compute_charge(const InvocationRecord& inv, const Tariff& tariff);

// Same as compute_charge but returns 0 for non-billable outcomes.
double charge_or_zero(const InvocationRecord& inv, const Tariff& tariff);

// Charge the arbitrator expects for one invocation of `service` on `node`,
// using the advertised cpu speed.
double projected_charge(const ServiceDescriptor& service, const ResourceNode& node);

// Discount the charge when the consumer-perceived latency (observed +
// jitter + session re-establishment) exceeds the SLA.
double apply_slo_rebate(double charge, const QoSParameters& qos, double observed_latency_ms, double sla_ms,
                        double rebate_frac = kDefaultRebateFrac);

}  // namespace sami::billing
