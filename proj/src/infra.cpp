#include "sami/infra.hpp"

#include <cmath>

#include "sami/error.hpp"

namespace sami {

double energy_j(double mb, double bandwidth_mbps, double wait_ms, const EnergyModel& model) {
    return model.p_tx_w * transmit_ms(mb, bandwidth_mbps) / 1000.0 + model.p_idle_w * wait_ms / 1000.0;
}

bool is_dealer_open(const ResourceNode& node, SimMs t) {
    if (node.tier != Tier::Dealer) throw Error(ErrorCode::NonDealerNode, node.id + " is not a dealer");
    return within_open_hours(node, t);
}

SimMs next_minute_of_day(SimMs t, int minute) {
    const double day_ms = kMinutesPerDay * kMsPerMinute;
    const double day_start = std::floor(t / day_ms) * day_ms;
    double candidate = day_start + minute * kMsPerMinute;
    while (candidate <= t) candidate += day_ms;
    return candidate;
}

}  // namespace sami
