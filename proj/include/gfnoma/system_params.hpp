#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "gfnoma/units.hpp"

namespace gfnoma {

// Scenario constants. Every physical quantity carries its unit in the field
// name; distances and powers are normalized (cell radius and antenna constant
// default to 1).
struct SystemParams {
    double total_bandwidth_khz = 180.0;
    double subchannel_bandwidth_khz = 3.75;
    double target_sinr_db = 6.0;
    double pathloss_exponent = 3.8;
    double cell_radius = 1.0;
    double antenna_constant = 1.0;
    double slot_period_ms = 0.2;
    double delay_requirement_ms = 1.0;
    double max_avg_power_dbm = 18.0;
    int receiver_max_levels = 5;
    int num_devices = 300;
    double broadcast_overhead_bytes = 2.0;
    double connection_setup_bytes = 220.0;

    int num_subchannels() const {
        const double m = total_bandwidth_khz / subchannel_bandwidth_khz;
        return static_cast<int>(std::lround(m));
    }

    double target_sinr() const { return from_db(target_sinr_db); }
    double max_avg_power() const { return from_db(max_avg_power_dbm); }

    void validate() const {
        const double m = total_bandwidth_khz / subchannel_bandwidth_khz;
        if (!(total_bandwidth_khz > 0.0) || !(subchannel_bandwidth_khz > 0.0)) {
            throw std::invalid_argument("SystemParams: bandwidths must be > 0");
        }
        if (std::fabs(m - std::lround(m)) > 1e-9 * std::max(1.0, m)) {
            throw std::invalid_argument(
                "SystemParams: total bandwidth must be an integer multiple of the subchannel bandwidth");
        }
        if (num_subchannels() < 2) {
            throw std::invalid_argument("SystemParams: need at least 2 subchannels");
        }
        if (!std::isfinite(target_sinr_db)) {
            throw std::invalid_argument("SystemParams: target SINR must be finite");
        }
        if (!(slot_period_ms > 0.0) || !(slot_period_ms <= delay_requirement_ms)) {
            throw std::invalid_argument("SystemParams: require 0 < slot period <= delay requirement");
        }
        if (!(pathloss_exponent > 2.0)) {
            throw std::invalid_argument("SystemParams: pathloss exponent must be > 2");
        }
        if (!(cell_radius > 0.0) || !(antenna_constant > 0.0)) {
            throw std::invalid_argument("SystemParams: cell radius and antenna constant must be > 0");
        }
        if (receiver_max_levels < 1) {
            throw std::invalid_argument("SystemParams: receiver level limit must be >= 1");
        }
        if (num_devices < 1) {
            throw std::invalid_argument("SystemParams: device count must be >= 1");
        }
        if (!(broadcast_overhead_bytes > 0.0) || !(connection_setup_bytes > 0.0)) {
            throw std::invalid_argument("SystemParams: overhead byte counts must be > 0");
        }
    }

    // E[1/g] over a uniform disk with deterministic pathloss g = A0 * d^(-beta).
    // Used by the random-NOMA average power model unless overridden.
    double default_inv_gain_expectation() const {
        return 2.0 * std::pow(cell_radius, pathloss_exponent)
               / ((pathloss_exponent + 2.0) * antenna_constant);
    }
};

} // namespace gfnoma
