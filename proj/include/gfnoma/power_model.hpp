#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

#include "gfnoma/system_params.hpp"
#include "gfnoma/units.hpp"

namespace gfnoma {

// Upper bound on the average transmission power of the layered scheme:
//   min{2 ln 2, M/(M-1)} / L * sum_l v_l * (D*sqrt(l/L))^beta / A0.
// Each device aims at its ring's level from the best of M subchannels; the
// min{} factor bounds the expected inverse of the best fading gain.
inline double avg_power_ub_hybrid(const SystemParams& params, int num_levels) {
    if (params.num_subchannels() < 2) {
        throw std::invalid_argument("avg_power_ub_hybrid: bound requires M >= 2");
    }
    if (num_levels < 1) {
        throw std::invalid_argument("avg_power_ub_hybrid: level count must be >= 1");
    }
    const double m = params.num_subchannels();
    const double gamma = params.target_sinr();
    const double factor = std::min(2.0 * std::log(2.0), m / (m - 1.0));
    double sum = 0.0;
    for (int l = 1; l <= num_levels; ++l) {
        const double v = gamma * std::pow(gamma + 1.0, num_levels - l);
        const double radius = params.cell_radius * std::sqrt(static_cast<double>(l) / num_levels);
        sum += v * std::pow(radius, params.pathloss_exponent) / params.antenna_constant;
    }
    return factor / num_levels * sum;
}

// Average power when subchannel and level are picked uniformly at random:
// (1/L) * sum_l v_l * E[1/g]. The inverse-gain expectation is a model knob;
// see SystemParams::default_inv_gain_expectation().
inline double avg_power_random_noma(const SystemParams& params, int num_levels,
                                    double inv_gain_expectation) {
    if (num_levels < 1) {
        throw std::invalid_argument("avg_power_random_noma: level count must be >= 1");
    }
    if (!(inv_gain_expectation > 0.0)) {
        throw std::invalid_argument("avg_power_random_noma: inverse-gain expectation must be > 0");
    }
    const double gamma = params.target_sinr();
    double sum = 0.0;
    for (int l = 1; l <= num_levels; ++l) {
        sum += gamma * std::pow(gamma + 1.0, num_levels - l);
    }
    return sum / num_levels * inv_gain_expectation;
}

struct MaxLevelsResult {
    int levels = 1;         // min(receiver cap, largest L with power below the limit)
    int uncapped = 0;       // largest L with power below the limit, cap ignored (0 = none)
    bool degenerate = false; // even L = 1 violates the power limit
    bool scan_limited = false; // uncapped hit the scan limit without crossing
};

// Largest level count whose average power stays strictly below the limit,
// capped by the receiver's level limit. Assumes power_fn is increasing in L;
// scanning stops at the first crossing. Returns at least 1 (flagged) when
// even a single level exceeds the limit.
inline MaxLevelsResult max_levels(const SystemParams& params,
                                  const std::function<double(int)>& power_fn) {
    const double limit = params.max_avg_power();
    const int scan_limit = std::max(params.receiver_max_levels, 64);
    MaxLevelsResult r;
    int last_ok = 0;
    for (int l = 1; l <= scan_limit; ++l) {
        if (power_fn(l) < limit) {
            last_ok = l;
        } else {
            break;
        }
        if (l == scan_limit) {
            r.scan_limited = true;
        }
    }
    r.uncapped = last_ok;
    r.degenerate = (last_ok == 0);
    r.levels = r.degenerate ? 1 : std::min(params.receiver_max_levels, last_ok);
    return r;
}

inline MaxLevelsResult max_levels_hybrid(const SystemParams& params) {
    return max_levels(params, [&](int l) { return avg_power_ub_hybrid(params, l); });
}

inline MaxLevelsResult max_levels_random_noma(const SystemParams& params,
                                              double inv_gain_expectation) {
    return max_levels(params, [&](int l) {
        return avg_power_random_noma(params, l, inv_gain_expectation);
    });
}

} // namespace gfnoma
