#include "gfnoma/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <future>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "gfnoma/analytic.hpp"
#include "gfnoma/errors.hpp"
#include "gfnoma/layer_plan.hpp"

namespace gfnoma {

std::int64_t SlotOutcome::total_attempts() const {
    return std::accumulate(attempts_per_layer.begin(), attempts_per_layer.end(), std::int64_t{0});
}

std::int64_t SlotOutcome::total_successes() const {
    return std::accumulate(successes_per_layer.begin(), successes_per_layer.end(), std::int64_t{0});
}

namespace {

// Reusable buffers for the per-slot resolution.
struct SlotScratch {
    std::vector<int> occupancy;    // num_subchannels * num_levels
    std::vector<int> block_depth;  // per subchannel: first level with a power collision
    std::vector<int> gated;        // indices of devices that passed the gate
    std::vector<int> gated_subchannel;
    std::vector<int> gated_level;

    void prepare(int num_subchannels, int num_levels, std::size_t num_devices) {
        occupancy.assign(static_cast<std::size_t>(num_subchannels) * num_levels, 0);
        block_depth.assign(static_cast<std::size_t>(num_subchannels), num_levels + 1);
        gated.clear();
        gated_subchannel.clear();
        gated_level.clear();
        gated.reserve(num_devices);
        gated_subchannel.reserve(num_devices);
        gated_level.reserve(num_devices);
    }
};

SlotOutcome resolve_slot(const SchemeConfig& scheme, int num_subchannels,
                         std::span<const DeviceState> devices, std::mt19937_64& rng,
                         SlotScratch& scratch, std::vector<std::uint8_t>* per_device_success) {
    const int num_levels = scheme.kind == SchemeKind::CoordinatedOma ? 1 : scheme.num_levels;
    SlotOutcome out;
    out.attempts_per_layer.assign(static_cast<std::size_t>(num_levels), 0);
    out.successes_per_layer.assign(static_cast<std::size_t>(num_levels), 0);
    out.power_collisions_per_layer.assign(static_cast<std::size_t>(num_levels), 0);
    if (per_device_success) {
        per_device_success->assign(devices.size(), 0);
    }
    scratch.prepare(num_subchannels, num_levels, devices.size());

    const double pe = scheme.effective_pe();
    for (std::size_t i = 0; i < devices.size(); ++i) {
        if (!devices[i].active) {
            continue;
        }
        if (scheme.eab_enabled && !(next_u01(rng) < pe)) {
            ++out.blocked_by_eab;
            continue;
        }
        int level;
        switch (scheme.kind) {
            case SchemeKind::HybridLayered:
                level = devices[i].layer;
                if (level < 1 || level > num_levels) {
                    throw std::invalid_argument("run_slot: device layer outside 1..L");
                }
                break;
            case SchemeKind::RandomNoma:
                level = 1 + static_cast<int>(next_index(rng, static_cast<std::uint64_t>(num_levels)));
                break;
            case SchemeKind::GrantFreeOma:
            case SchemeKind::CoordinatedOma:
                level = 1;
                break;
            default:
                throw std::invalid_argument("run_slot: unknown scheme kind");
        }
        ++out.attempts_per_layer[static_cast<std::size_t>(level - 1)];
        scratch.gated.push_back(static_cast<int>(i));
        scratch.gated_level.push_back(level);
        if (scheme.kind == SchemeKind::CoordinatedOma) {
            scratch.gated_subchannel.push_back(0); // BS assigns, no contention
            continue;
        }
        const int m = static_cast<int>(next_index(rng, static_cast<std::uint64_t>(num_subchannels)));
        scratch.gated_subchannel.push_back(m);
        ++scratch.occupancy[static_cast<std::size_t>(m) * num_levels + (level - 1)];
    }

    if (scheme.kind == SchemeKind::CoordinatedOma) {
        // Scheduled baseline: min(M, gated) served, no collisions.
        const std::int64_t gated = static_cast<std::int64_t>(scratch.gated.size());
        const std::int64_t served = std::min<std::int64_t>(num_subchannels, gated);
        out.successes_per_layer[0] = served;
        if (per_device_success) {
            for (std::int64_t k = 0; k < served; ++k) {
                (*per_device_success)[static_cast<std::size_t>(scratch.gated[static_cast<std::size_t>(k)])] = 1;
            }
        }
        return out;
    }

    for (int m = 0; m < num_subchannels; ++m) {
        const int base = m * num_levels;
        int block = num_levels + 1;
        for (int l = 1; l <= num_levels; ++l) {
            const int c = scratch.occupancy[static_cast<std::size_t>(base + l - 1)];
            if (c >= 2) {
                ++out.power_collisions_per_layer[static_cast<std::size_t>(l - 1)];
                ++out.power_collision_events;
                if (block > num_levels) {
                    block = l;
                }
            }
        }
        scratch.block_depth[static_cast<std::size_t>(m)] = block;
        for (int l = 1; l < block; ++l) {
            if (scratch.occupancy[static_cast<std::size_t>(base + l - 1)] == 1) {
                ++out.successes_per_layer[static_cast<std::size_t>(l - 1)];
            }
        }
    }

    if (per_device_success) {
        for (std::size_t k = 0; k < scratch.gated.size(); ++k) {
            const int m = scratch.gated_subchannel[k];
            const int level = scratch.gated_level[k];
            const bool ok =
                scratch.occupancy[static_cast<std::size_t>(m) * num_levels + (level - 1)] == 1
                && level < scratch.block_depth[static_cast<std::size_t>(m)];
            if (ok) {
                (*per_device_success)[static_cast<std::size_t>(scratch.gated[k])] = 1;
            }
        }
    }
    return out;
}

} // namespace

std::vector<std::vector<int>> sic_decode(const std::vector<std::vector<int>>& occupancy,
                                         int num_levels) {
    if (num_levels < 1) {
        throw std::invalid_argument("sic_decode: level count must be >= 1");
    }
    std::vector<std::vector<int>> decoded(occupancy.size());
    for (std::size_t m = 0; m < occupancy.size(); ++m) {
        const auto& counts = occupancy[m];
        if (counts.size() != static_cast<std::size_t>(num_levels)) {
            throw std::invalid_argument("sic_decode: occupancy row size != level count");
        }
        for (int l = 1; l <= num_levels; ++l) {
            const int c = counts[static_cast<std::size_t>(l - 1)];
            if (c < 0) {
                throw std::invalid_argument("sic_decode: negative occupancy count");
            }
            if (c >= 2) {
                break; // power collision: this level and all weaker ones are lost
            }
            if (c == 1) {
                decoded[m].push_back(l);
            }
        }
    }
    return decoded;
}

SlotOutcome run_slot(const SchemeConfig& scheme, int num_subchannels,
                     std::span<const DeviceState> devices, std::mt19937_64& rng,
                     std::vector<std::uint8_t>* per_device_success) {
    scheme.validate();
    if (num_subchannels < 1) {
        throw std::invalid_argument("run_slot: need at least one subchannel");
    }
    SlotScratch scratch;
    return resolve_slot(scheme, num_subchannels, devices, rng, scratch, per_device_success);
}

namespace {

struct StreamAccum {
    std::int64_t n_slots = 0;
    std::int64_t succ_sum = 0;
    std::int64_t succ_sumsq = 0;
    std::vector<std::int64_t> layer_sum;
    std::vector<std::int64_t> layer_sumsq;

    void merge(const StreamAccum& other) {
        n_slots += other.n_slots;
        succ_sum += other.succ_sum;
        succ_sumsq += other.succ_sumsq;
        for (std::size_t l = 0; l < layer_sum.size(); ++l) {
            layer_sum[l] += other.layer_sum[l];
            layer_sumsq[l] += other.layer_sumsq[l];
        }
    }
};

// Draws the per-slot layer assignment for Placement::UniformDisk. Only the
// hybrid scheme consumes positions; other schemes ignore the ring geometry.
void assign_disk_layers(std::vector<DeviceState>& devices, const LayerPlan& plan,
                        std::mt19937_64& rng) {
    const double radius = plan.ring_boundaries.back();
    for (auto& d : devices) {
        const double u = 1.0 - next_u01(rng); // (0, 1]
        d.layer = layer_of(radius * std::sqrt(u), plan);
    }
}

StreamAccum run_stream(const SimOptions& options, const LayerPlan* plan,
                       std::int64_t n_slots, const RngSpec& stream_spec,
                       std::ostream* slot_csv) {
    const int num_levels =
        options.scheme.kind == SchemeKind::CoordinatedOma ? 1 : options.scheme.num_levels;
    StreamAccum acc;
    acc.layer_sum.assign(static_cast<std::size_t>(num_levels), 0);
    acc.layer_sumsq.assign(static_cast<std::size_t>(num_levels), 0);

    std::vector<DeviceState> devices;
    if (options.placement == Placement::EqualPerLayer) {
        devices.resize(static_cast<std::size_t>(options.per_layer_contenders) * num_levels);
        for (std::size_t i = 0; i < devices.size(); ++i) {
            devices[i].layer = static_cast<int>(i / options.per_layer_contenders) + 1;
        }
    } else {
        devices.resize(static_cast<std::size_t>(options.num_devices));
    }

    auto rng = make_engine(stream_spec);
    SlotScratch scratch;
    const bool need_positions = options.placement == Placement::UniformDisk
                                && options.scheme.kind == SchemeKind::HybridLayered;
    for (std::int64_t s = 0; s < n_slots; ++s) {
        if (need_positions) {
            assign_disk_layers(devices, *plan, rng);
        }
        const SlotOutcome outcome =
            resolve_slot(options.scheme, options.num_subchannels, devices, rng, scratch, nullptr);
        acc.n_slots += 1;
        const std::int64_t total = outcome.total_successes();
        acc.succ_sum += total;
        acc.succ_sumsq += total * total;
        for (int l = 0; l < num_levels; ++l) {
            const std::int64_t v = outcome.successes_per_layer[static_cast<std::size_t>(l)];
            acc.layer_sum[static_cast<std::size_t>(l)] += v;
            acc.layer_sumsq[static_cast<std::size_t>(l)] += v * v;
        }
        if (slot_csv) {
            for (int l = 0; l < num_levels; ++l) {
                *slot_csv << s << ',' << (l + 1) << ','
                          << outcome.attempts_per_layer[static_cast<std::size_t>(l)] << ','
                          << outcome.successes_per_layer[static_cast<std::size_t>(l)] << ','
                          << outcome.power_collisions_per_layer[static_cast<std::size_t>(l)]
                          << '\n';
            }
        }
    }
    return acc;
}

double sample_std_error(std::int64_t n, std::int64_t sum, std::int64_t sumsq) {
    if (n < 2) {
        return 0.0;
    }
    const double mean = static_cast<double>(sum) / static_cast<double>(n);
    const double var =
        (static_cast<double>(sumsq) - static_cast<double>(n) * mean * mean) / static_cast<double>(n - 1);
    return std::sqrt(std::max(var, 0.0) / static_cast<double>(n));
}

} // namespace

ThroughputEstimate simulate_throughput(const SimOptions& options) {
    options.scheme.validate();
    if (options.n_slots < 1) {
        throw std::invalid_argument("simulate_throughput: need at least one slot");
    }
    if (options.num_subchannels < 1) {
        throw std::invalid_argument("simulate_throughput: need at least one subchannel");
    }
    if (options.placement == Placement::EqualPerLayer) {
        if (options.per_layer_contenders < 0) {
            throw std::invalid_argument("simulate_throughput: per-layer contender count must be >= 0");
        }
    } else if (options.num_devices < 0) {
        throw std::invalid_argument("simulate_throughput: device count must be >= 0");
    }

    LayerPlan plan;
    if (options.placement == Placement::UniformDisk
        && options.scheme.kind == SchemeKind::HybridLayered) {
        SystemParams geometry;
        geometry.cell_radius = options.cell_radius;
        plan = build_layer_plan(geometry, options.scheme.num_levels);
    }

    // A fixed replication count keeps results identical for any thread count.
    const std::int64_t num_streams =
        options.slot_csv ? 1 : std::min<std::int64_t>(16, options.n_slots);
    std::vector<StreamAccum> parts(static_cast<std::size_t>(num_streams));
    const std::int64_t base = options.n_slots / num_streams;
    const std::int64_t extra = options.n_slots % num_streams;
    auto stream_slots = [&](std::int64_t s) { return base + (s < extra ? 1 : 0); };

    if (options.num_threads > 1 && num_streams > 1) {
        std::vector<std::future<StreamAccum>> futures;
        futures.reserve(static_cast<std::size_t>(num_streams));
        for (std::int64_t s = 0; s < num_streams; ++s) {
            futures.push_back(std::async(std::launch::async, [&, s] {
                return run_stream(options, &plan, stream_slots(s),
                                  options.rng.substream(static_cast<std::uint64_t>(s)), nullptr);
            }));
        }
        for (std::int64_t s = 0; s < num_streams; ++s) {
            parts[static_cast<std::size_t>(s)] = futures[static_cast<std::size_t>(s)].get();
        }
    } else {
        for (std::int64_t s = 0; s < num_streams; ++s) {
            parts[static_cast<std::size_t>(s)] =
                run_stream(options, &plan, stream_slots(s),
                           options.rng.substream(static_cast<std::uint64_t>(s)),
                           num_streams == 1 ? options.slot_csv : nullptr);
        }
    }

    StreamAccum total = parts[0];
    for (std::size_t s = 1; s < parts.size(); ++s) {
        total.merge(parts[s]);
    }

    ThroughputEstimate est;
    est.n_slots = total.n_slots;
    est.mean = static_cast<double>(total.succ_sum) / static_cast<double>(total.n_slots);
    est.std_error = sample_std_error(total.n_slots, total.succ_sum, total.succ_sumsq);
    est.ci99_halfwidth = 2.576 * est.std_error;
    est.per_layer_means.resize(total.layer_sum.size());
    est.per_layer_std_errors.resize(total.layer_sum.size());
    for (std::size_t l = 0; l < total.layer_sum.size(); ++l) {
        est.per_layer_means[l] =
            static_cast<double>(total.layer_sum[l]) / static_cast<double>(total.n_slots);
        est.per_layer_std_errors[l] =
            sample_std_error(total.n_slots, total.layer_sum[l], total.layer_sumsq[l]);
    }
    return est;
}

std::vector<double> exhaustive_connection_prob(int num_subchannels, int contenders_per_layer,
                                               int num_levels) {
    if (num_subchannels < 2) {
        throw std::invalid_argument("exhaustive_connection_prob: need at least 2 subchannels");
    }
    if (contenders_per_layer < 1 || num_levels < 1) {
        throw std::invalid_argument("exhaustive_connection_prob: need C >= 1 and L >= 1");
    }
    const int n = contenders_per_layer * num_levels;
    std::int64_t total = 1;
    for (int i = 0; i < n; ++i) {
        total *= num_subchannels;
        if (total > 10'000'000) {
            throw BudgetError("exhaustive_connection_prob: more than 1e7 assignments");
        }
    }

    std::vector<int> digits(static_cast<std::size_t>(n), 0); // device i -> subchannel
    std::vector<int> occupancy(static_cast<std::size_t>(num_subchannels) * num_levels, 0);
    std::vector<std::int64_t> success_count(static_cast<std::size_t>(num_levels), 0);

    for (std::int64_t a = 0; a < total; ++a) {
        std::fill(occupancy.begin(), occupancy.end(), 0);
        for (int i = 0; i < n; ++i) {
            const int layer = i / contenders_per_layer; // 0-based
            ++occupancy[static_cast<std::size_t>(digits[static_cast<std::size_t>(i)]) * num_levels
                        + layer];
        }
        for (int m = 0; m < num_subchannels; ++m) {
            const int base = m * num_levels;
            for (int l = 0; l < num_levels; ++l) {
                const int c = occupancy[static_cast<std::size_t>(base + l)];
                if (c >= 2) {
                    break;
                }
                if (c == 1) {
                    ++success_count[static_cast<std::size_t>(l)];
                }
            }
        }
        // odometer
        for (int i = 0; i < n; ++i) {
            if (++digits[static_cast<std::size_t>(i)] < num_subchannels) {
                break;
            }
            digits[static_cast<std::size_t>(i)] = 0;
        }
    }

    std::vector<double> probs(static_cast<std::size_t>(num_levels));
    for (int l = 0; l < num_levels; ++l) {
        probs[static_cast<std::size_t>(l)] =
            static_cast<double>(success_count[static_cast<std::size_t>(l)])
            / (static_cast<double>(contenders_per_layer) * static_cast<double>(total));
    }
    return probs;
}

DelayEstimate simulate_delay(const DelayOptions& options) {
    options.scheme.validate();
    options.params.validate();
    if (options.tracked_target < 1) {
        throw std::invalid_argument("simulate_delay: tracked target must be >= 1");
    }
    if (options.max_slots < 1) {
        throw std::invalid_argument("simulate_delay: need at least one slot");
    }

    const int q = options.params.num_devices;
    SchemeConfig scheme = options.scheme;
    scheme.num_levels = options.num_levels;
    scheme.validate();

    // Fixed placement for the whole run: a device keeps its ring.
    auto rng = make_engine(options.rng);
    const LayerPlan plan = build_layer_plan(options.params, options.num_levels);
    std::vector<DeviceState> devices(static_cast<std::size_t>(q));
    if (scheme.kind == SchemeKind::HybridLayered) {
        assign_disk_layers(devices, plan, rng);
    }

    std::vector<std::int64_t> packet_birth(static_cast<std::size_t>(q), 0);
    std::vector<std::uint8_t> packet_tracked(static_cast<std::size_t>(q), 0);
    std::int64_t marked = 0;
    for (auto& t : packet_tracked) {
        if (marked < options.tracked_target) {
            t = 1;
            ++marked;
        }
    }

    std::vector<std::int64_t> delays;
    delays.reserve(static_cast<std::size_t>(options.tracked_target));
    std::vector<std::uint8_t> decoded;
    SlotScratch scratch;
    std::int64_t outstanding = marked;

    for (std::int64_t t = 0; t < options.max_slots; ++t) {
        resolve_slot(scheme, options.params.num_subchannels(), devices, rng, scratch, &decoded);
        for (int i = 0; i < q; ++i) {
            if (!decoded[static_cast<std::size_t>(i)]) {
                continue;
            }
            if (packet_tracked[static_cast<std::size_t>(i)]) {
                delays.push_back(t - packet_birth[static_cast<std::size_t>(i)] + 1);
                --outstanding;
            }
            // Saturation: the next packet is ready immediately.
            packet_birth[static_cast<std::size_t>(i)] = t + 1;
            if (marked < options.tracked_target) {
                packet_tracked[static_cast<std::size_t>(i)] = 1;
                ++marked;
                ++outstanding;
            } else {
                packet_tracked[static_cast<std::size_t>(i)] = 0;
            }
        }
        if (marked >= options.tracked_target && outstanding == 0) {
            break;
        }
    }

    DelayEstimate est;
    est.tracked = marked;
    est.completed = static_cast<std::int64_t>(delays.size());
    est.completion_fraction =
        marked > 0 ? static_cast<double>(est.completed) / static_cast<double>(marked) : 0.0;
    est.truncated = est.completion_fraction < 0.99;
    if (est.completed == 0) {
        est.mean_slots = std::numeric_limits<double>::quiet_NaN();
        est.mean_delay_ms = std::numeric_limits<double>::quiet_NaN();
        return est;
    }
    est.mean_slots = static_cast<double>(std::accumulate(delays.begin(), delays.end(), std::int64_t{0}))
                     / static_cast<double>(est.completed);
    est.mean_delay_ms = est.mean_slots * options.params.slot_period_ms;
    std::sort(delays.begin(), delays.end());
    auto quantile = [&](double p) {
        const std::size_t idx = static_cast<std::size_t>(
            std::min<double>(static_cast<double>(delays.size() - 1),
                             std::floor(p * static_cast<double>(delays.size()))));
        return static_cast<double>(delays[idx]);
    };
    est.p50_slots = quantile(0.50);
    est.p95_slots = quantile(0.95);
    est.p99_slots = quantile(0.99);
    est.max_slots_observed = delays.back();
    return est;
}

PowerEstimate simulate_avg_power(const SystemParams& params, int num_levels,
                                 std::int64_t n_samples, FadingModel fading,
                                 const RngSpec& rng_spec) {
    params.validate();
    if (params.num_subchannels() < 2) {
        throw std::invalid_argument("simulate_avg_power: bound comparison requires M >= 2");
    }
    if (n_samples < 1) {
        throw std::invalid_argument("simulate_avg_power: need at least one sample");
    }
    const int m = params.num_subchannels();
    const LayerPlan plan = build_layer_plan(params, num_levels);
    auto rng = make_engine(rng_spec);

    std::vector<double> gains(static_cast<std::size_t>(m));
    double sum = 0.0;
    double sumsq = 0.0;
    for (std::int64_t s = 0; s < n_samples; ++s) {
        const double u = 1.0 - next_u01(rng); // (0, 1], keeps the distance positive
        const double d = params.cell_radius * std::sqrt(u);
        const int layer = layer_of(d, plan);
        const double pathloss = params.antenna_constant * std::pow(d, -params.pathloss_exponent);
        for (auto& g : gains) {
            g = fading == FadingModel::RayleighExp ? pathloss * next_exp(rng) : pathloss;
        }
        const double p = tx_power(plan.level_value(layer), gains).first;
        sum += p;
        sumsq += p * p;
    }

    PowerEstimate est;
    est.n_samples = n_samples;
    est.mean = sum / static_cast<double>(n_samples);
    if (n_samples > 1) {
        const double var = (sumsq - static_cast<double>(n_samples) * est.mean * est.mean)
                           / static_cast<double>(n_samples - 1);
        est.std_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(n_samples));
    }
    return est;
}

} // namespace gfnoma
