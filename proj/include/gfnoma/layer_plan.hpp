#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gfnoma/errors.hpp"
#include "gfnoma/system_params.hpp"

namespace gfnoma {

// Concrete cell layering: aiming received power per level and the concentric
// ring boundaries that assign a device to a level by distance.
//
// power_levels[l-1] = Gamma * (Gamma+1)^(L-l), strictly decreasing, so the
// SIC chain sees SINR exactly Gamma at every stage under unit noise:
//   v_l / (1 + sum_{j>l} v_j) = Gamma.
// ring_boundaries[l] = D*sqrt(l/L) makes all ring areas equal.
struct LayerPlan {
    int num_levels = 1;
    std::vector<double> power_levels;     // index l-1, descending
    std::vector<double> ring_boundaries;  // index 0..L, ascending, [0]=0, [L]=D

    double level_value(int l) const { return power_levels.at(static_cast<std::size_t>(l - 1)); }
};

inline LayerPlan build_layer_plan(const SystemParams& params, int num_levels) {
    if (num_levels < 1) {
        throw std::invalid_argument("build_layer_plan: level count must be >= 1");
    }
    const double gamma = params.target_sinr();
    LayerPlan plan;
    plan.num_levels = num_levels;
    plan.power_levels.resize(static_cast<std::size_t>(num_levels));
    plan.ring_boundaries.resize(static_cast<std::size_t>(num_levels) + 1);
    for (int l = 1; l <= num_levels; ++l) {
        plan.power_levels[static_cast<std::size_t>(l - 1)] =
            gamma * std::pow(gamma + 1.0, num_levels - l);
    }
    plan.ring_boundaries[0] = 0.0;
    for (int l = 1; l <= num_levels; ++l) {
        plan.ring_boundaries[static_cast<std::size_t>(l)] =
            params.cell_radius * std::sqrt(static_cast<double>(l) / num_levels);
    }
    plan.ring_boundaries.back() = params.cell_radius;  // exact outer edge
    return plan;
}

// Level of a device at distance d: the unique l with D_{l-1} < d <= D_l.
// d = 0 maps to level 1 (measure-zero inner boundary).
inline int layer_of(double distance, const LayerPlan& plan) {
    if (distance < 0.0 || distance > plan.ring_boundaries.back()) {
        throw OutOfCellError("layer_of: distance outside the cell");
    }
    if (distance == 0.0) {
        return 1;
    }
    const auto it = std::lower_bound(plan.ring_boundaries.begin() + 1,
                                     plan.ring_boundaries.end(), distance);
    return static_cast<int>(it - plan.ring_boundaries.begin());
}

// Transmission power targeting received power level_value on the best
// subchannel. Ties break toward the lowest index. Received power on the
// chosen subchannel equals level_value by construction.
inline std::pair<double, int> tx_power(double level_value, std::span<const double> gains) {
    if (gains.empty()) {
        throw std::invalid_argument("tx_power: need at least one subchannel gain");
    }
    for (double g : gains) {
        if (!(g > 0.0)) {
            throw std::invalid_argument("tx_power: channel gains must be > 0");
        }
    }
    const auto best = std::max_element(gains.begin(), gains.end());
    const int idx = static_cast<int>(best - gains.begin());
    return {level_value / *best, idx + 1};
}

} // namespace gfnoma
