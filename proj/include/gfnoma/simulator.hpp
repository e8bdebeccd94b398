#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "gfnoma/rng.hpp"
#include "gfnoma/scheme.hpp"
#include "gfnoma/system_params.hpp"

namespace gfnoma {

struct DeviceState {
    int layer = 1;
    bool active = true;
};

// Per-slot contention result, counted per layer (for random level selection
// the drawn level plays the role of the layer).
struct SlotOutcome {
    std::vector<std::int64_t> attempts_per_layer;
    std::vector<std::int64_t> successes_per_layer;
    std::vector<std::int64_t> power_collisions_per_layer; // cells with >= 2 signals
    std::int64_t power_collision_events = 0;
    std::int64_t blocked_by_eab = 0;

    std::int64_t total_attempts() const;
    std::int64_t total_successes() const;
};

struct ThroughputEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    double ci99_halfwidth = 0.0; // 2.576 * std_error
    std::int64_t n_slots = 0;
    std::vector<double> per_layer_means;
    std::vector<double> per_layer_std_errors;
};

// How contenders are assigned to layers each slot.
enum class Placement {
    UniformDisk,   // positions redrawn uniformly in the disk every slot
    EqualPerLayer, // exactly C contenders per layer, the closed-form model
};

struct SimOptions {
    SchemeConfig scheme;
    int num_subchannels = 48;
    Placement placement = Placement::UniformDisk;
    int num_devices = 0;          // total devices (UniformDisk)
    int per_layer_contenders = 0; // C (EqualPerLayer)
    std::int64_t n_slots = 10000;
    RngSpec rng;
    int num_threads = 1;          // replication streams may run in parallel
    double cell_radius = 1.0;
    std::ostream* slot_csv = nullptr; // optional per-slot records; serializes the run
};

// Successive interference cancellation per subchannel: levels are scanned
// from the strongest down; an empty level is transparent, a lone signal is
// decoded and cancelled, and two or more signals at one level (a power
// collision) stop decoding for that level and every weaker one.
// occupancy[m][l-1] holds the number of signals on subchannel m at level l;
// the result lists the decoded levels of each subchannel in ascending order.
std::vector<std::vector<int>> sic_decode(const std::vector<std::vector<int>>& occupancy,
                                         int num_levels);

// One contention slot. Gated devices pick subchannels uniformly; the level
// rule depends on the scheme. If per_device_success is non-null it is
// resized to devices.size() and flags which devices were decoded.
SlotOutcome run_slot(const SchemeConfig& scheme, int num_subchannels,
                     std::span<const DeviceState> devices, std::mt19937_64& rng,
                     std::vector<std::uint8_t>* per_device_success = nullptr);

// Mean decoded devices per slot with a 99% confidence halfwidth. Replication
// streams are derived deterministically from the seed, so the estimate is
// identical for any thread count.
ThroughputEstimate simulate_throughput(const SimOptions& options);

// Exact per-layer connection probability by enumerating all M^(C*L)
// subchannel assignments (C contenders in each of L layers). Throws
// BudgetError when the assignment count exceeds 1e7.
std::vector<double> exhaustive_connection_prob(int num_subchannels, int contenders_per_layer,
                                               int num_levels);

struct DelayEstimate {
    double mean_delay_ms = 0.0;
    double mean_slots = 0.0;
    std::int64_t tracked = 0;
    std::int64_t completed = 0;
    double completion_fraction = 0.0;
    bool truncated = false; // fewer than 99% of tracked packets finished
    double p50_slots = 0.0;
    double p95_slots = 0.0;
    double p99_slots = 0.0;
    std::int64_t max_slots_observed = 0;
};

struct DelayOptions {
    SchemeConfig scheme;
    SystemParams params;
    int num_levels = 1;
    int tracked_target = 10000; // packets whose delay is recorded
    std::int64_t max_slots = 20000;
    RngSpec rng;
};

// Saturated fast-retrial delay run: params.num_devices devices with fixed
// uniform-disk positions always have a packet and retry every slot until
// decoded. Packets are marked for tracking at birth until the target count
// is reached; the run then continues until every tracked packet completes
// or max_slots is hit (truncation flag).
DelayEstimate simulate_delay(const DelayOptions& options);

enum class FadingModel {
    None,        // gains are pure pathloss, identical across subchannels
    RayleighExp, // unit-mean exponential power fading per subchannel
};

struct PowerEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t n_samples = 0;
};

// Samples the transmit power of a random device under the layered scheme:
// position uniform in the disk, per-subchannel gain = fading * A0*d^(-beta),
// power chosen to hit the device's ring level on its best subchannel.
PowerEstimate simulate_avg_power(const SystemParams& params, int num_levels,
                                 std::int64_t n_samples, FadingModel fading,
                                 const RngSpec& rng);

} // namespace gfnoma
