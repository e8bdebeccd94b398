#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gfnoma/power_model.hpp"
#include "gfnoma/system_params.hpp"

namespace gfnoma {

// Joint access-control and level-selection output.
struct OptResult {
    double pe_star = 1.0;
    int levels = 1;
    double throughput = 0.0;
    double access_probability = 0.0;
    double avg_delay_ms = 0.0;
    bool feasible = false; // delay requirement met at pe_star
    double grid_step = 1e-3;
    MaxLevelsResult level_selection;
};

// Access parameters on the search grid whose mean access delay meets the
// requirement: T_P / p_a(p_E) <= D_req with p_a = p_E * p_succ(Q*p_E/L).
// Grid points are k/N, k = 1..N, N = round(1/grid_step). May be empty.
std::vector<double> feasible_set(int num_devices, int num_subchannels, int num_levels,
                                 double slot_period_ms, double delay_requirement_ms,
                                 double grid_step);

// Throughput-maximizing access parameter over the restricted grid (or the
// full grid when no restriction is given). Ties break toward the smaller
// p_E. Returns (p_E*, throughput).
std::pair<double, double> optimize_pe(int num_devices, int num_subchannels, int num_levels,
                                      double grid_step,
                                      const std::vector<double>* restrict_to = nullptr);

// Level count from the power constraint, then the best feasible access
// parameter; falls back to the unconstrained maximizer (feasible = false)
// when no grid point meets the delay requirement.
OptResult jacnls(int num_devices, int num_subchannels, const SystemParams& params,
                 double grid_step = 1e-3);

} // namespace gfnoma
