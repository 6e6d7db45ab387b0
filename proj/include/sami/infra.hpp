#pragma once

#include "sami/model.hpp"

namespace sami {

// Device-side power draw while transmitting and while waiting for a reply.
struct EnergyModel {
    double p_tx_w = 1.2;
    double p_idle_w = 0.3;

    friend bool operator==(const EnergyModel&, const EnergyModel&) = default;
};

// p_tx * transmit time + p_idle * wait time, in joules. Faster links spend
// less energy per byte.
double energy_j(double mb, double bandwidth_mbps, double wait_ms, const EnergyModel& model);

// Half-open [open_minute, close_minute) check on the minute of day.
// Throws NonDealerNode for other tiers.
bool is_dealer_open(const ResourceNode& node, SimMs t);

// Start of the next minute-of-day boundary `minute` strictly after t.
SimMs next_minute_of_day(SimMs t, int minute);

}  // namespace sami
