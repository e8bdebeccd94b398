#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gfnoma {

// Parameters of one contention round under the layered access model.
// contenders_per_layer is real-valued: the access-control substitution
// C = p_E * Q / L is generally fractional.
struct AccessModel {
    int num_subchannels = 48;
    double contenders_per_layer = 0.0;
    int num_levels = 1;
    double eab_parameter = 1.0;   // p_E in (0, 1]
    double slot_period_ms = 0.2;

    void validate() const {
        if (num_subchannels < 2) {
            throw std::invalid_argument("AccessModel: need at least 2 subchannels");
        }
        if (num_levels < 1) {
            throw std::invalid_argument("AccessModel: level count must be >= 1");
        }
        if (!(eab_parameter > 0.0) || !(eab_parameter <= 1.0)) {
            throw std::invalid_argument("AccessModel: access parameter must be in (0, 1]");
        }
        if (!(contenders_per_layer >= 0.0)) {
            throw std::invalid_argument("AccessModel: contender count must be >= 0");
        }
    }
};

// Probability that a device of layer l is decoded, with C contenders per
// layer on M subchannels:
//   (1 - 1/M)^(C*l - 1) * (1 + C/(M-1))^(l - 1).
// The layer survives only if it is alone on its subchannel and every
// shallower level on that subchannel carries at most one signal. For C < 1
// the expression is an analytic extension (values may exceed 1); callers
// relying on a probability should pass C >= 1.
inline double connection_prob(int num_subchannels, double contenders_per_layer, int layer) {
    if (num_subchannels < 2) {
        throw std::invalid_argument("connection_prob: need at least 2 subchannels");
    }
    if (layer < 1) {
        throw std::invalid_argument("connection_prob: layer index must be >= 1");
    }
    if (!(contenders_per_layer >= 0.0)) {
        throw std::invalid_argument("connection_prob: contender count must be >= 0");
    }
    const double m = num_subchannels;
    return std::pow(1.0 - 1.0 / m, contenders_per_layer * layer - 1.0)
           * std::pow(1.0 + contenders_per_layer / (m - 1.0), layer - 1.0);
}

// Expected decoded devices of layer l per slot.
inline double layer_throughput(int num_subchannels, double contenders_per_layer, int layer) {
    if (contenders_per_layer == 0.0) {
        return 0.0;
    }
    return contenders_per_layer * connection_prob(num_subchannels, contenders_per_layer, layer);
}

// Expected decoded devices per slot across all layers with C = p_E*Q/L.
inline double total_throughput(int num_subchannels, int num_devices, int num_levels,
                               double eab_parameter) {
    if (num_subchannels < 2) {
        throw std::invalid_argument("total_throughput: need at least 2 subchannels");
    }
    if (num_levels < 1) {
        throw std::invalid_argument("total_throughput: level count must be >= 1");
    }
    if (!(eab_parameter > 0.0) || !(eab_parameter <= 1.0)) {
        throw std::invalid_argument("total_throughput: access parameter must be in (0, 1]");
    }
    if (num_devices < 0) {
        throw std::invalid_argument("total_throughput: device count must be >= 0");
    }
    const double c = eab_parameter * num_devices / num_levels;
    double sum = 0.0;
    for (int l = 1; l <= num_levels; ++l) {
        sum += layer_throughput(num_subchannels, c, l);
    }
    return sum;
}

// Layer-averaged success probability of a contender that joined the slot.
inline double success_prob(int num_subchannels, double contenders_per_layer, int num_levels) {
    if (num_levels < 1) {
        throw std::invalid_argument("success_prob: level count must be >= 1");
    }
    double sum = 0.0;
    for (int l = 1; l <= num_levels; ++l) {
        sum += connection_prob(num_subchannels, contenders_per_layer, l);
    }
    return sum / num_levels;
}

// Per-slot probability that a device both passes the access gate and is
// decoded.
inline double access_prob(double eab_parameter, double succ_prob) {
    if (!(eab_parameter > 0.0) || !(eab_parameter <= 1.0)) {
        throw std::invalid_argument("access_prob: access parameter must be in (0, 1]");
    }
    if (!(succ_prob >= 0.0)) {
        throw std::invalid_argument("access_prob: success probability must be >= 0");
    }
    return eab_parameter * succ_prob;
}

// Mean access delay under fast retrial: geometric attempt count times the
// slot period. Access probability 0 yields +infinity rather than an error.
inline double avg_delay(double slot_period_ms, double access_probability) {
    if (access_probability == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    if (!(access_probability > 0.0)) {
        throw std::invalid_argument("avg_delay: access probability must be >= 0");
    }
    return slot_period_ms / access_probability;
}

} // namespace gfnoma
