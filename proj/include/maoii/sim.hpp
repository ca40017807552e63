#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "maoii/steady.hpp"

namespace maoii {

/// Scheduling policy driven by the simulator.
///
/// transmit() is queried once per slot with the current ladder index.
/// on_delivery() fires on each successful transmission and carries the
/// piggybacked transition observation stored at the previous delivery
/// epoch (absent on the first delivery).
class Policy {
public:
    virtual ~Policy() = default;
    virtual bool transmit(int j, long long t) = 0;
    virtual void on_delivery(long long t, std::optional<int> prev_p_obs) {
        (void)t;
        (void)prev_p_obs;
    }
};

/// Fixed threshold policy (finite or infinite), regime-aware.
class FixedThresholdPolicy : public Policy {
public:
    FixedThresholdPolicy(const SourceParams& params, ThresholdPolicy threshold)
        : params_(params), threshold_(threshold) {}
    bool transmit(int j, long long) override {
        return threshold_transmits(params_, threshold_, j);
    }

private:
    SourceParams params_;
    ThresholdPolicy threshold_;
};

struct SlotRecord {
    long long t;
    int x;
    int x_hat;
    int j;
    bool action;
    bool success;
    double cost;
};

struct Trajectory {
    long long T = 0;
    std::uint64_t seed = 0;
    double total_cost = 0.0;
    double sum_age = 0.0;               ///< sum of a_{j(t)} over slots
    long long schedule_count = 0;
    long long success_count = 0;
    std::vector<long long> occupancy;   ///< visit counts per ladder index
    std::vector<double> realized_age_sum;
    std::vector<long long> realized_age_count;
    std::vector<double> checkpoint_costs;  ///< prefix cost at requested horizons
    std::vector<SlotRecord> records;       ///< only when record_stride > 0
};

struct SimOptions {
    int record_stride = 0;        ///< 0 = summaries only; k keeps every k-th slot
    std::vector<long long> checkpoints;  ///< increasing horizons for prefix costs
    int realized_age_max_j = 64;  ///< ladder indices tracked for realized age
    double tail_tol = 1e-9;       ///< age table truncation
};

/// Runs the slotted source/channel/monitor loop for T slots.
/// Deterministic given (seed); source and channel use separate substreams.
Trajectory simulate(const SourceParams& params, Policy& policy, long long T,
                    std::uint64_t seed, const SimOptions& options = {});

/// Time averages of age, activity, and cost.
SteadyAverages empirical_cost(const Trajectory& traj);

/// Visit frequencies per ladder index.
std::vector<double> empirical_occupancy(const Trajectory& traj);

/// Per ladder index, the empirical mean of t - V(t) where V(t) is the
/// last slot whose true state matched the monitor estimate. Converges
/// to the ladder value a_j.
std::vector<std::pair<int, double>> conditional_realized_age(const Trajectory& traj);

/// CSV rows `t,x,x_hat,j,action,success,cost` (requires record_stride > 0).
void write_trajectory_csv(const Trajectory& traj, std::ostream& out);

}  // namespace maoii
