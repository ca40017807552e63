#include "maoii/sim.hpp"

#include <limits>

#include "maoii/csv.hpp"
#include "maoii/rng.hpp"

namespace maoii {

Trajectory simulate(const SourceParams& params, Policy& policy, long long T,
                    std::uint64_t seed, const SimOptions& options) {
    if (T < 1) throw OutOfRange("horizon T must be >= 1");
    const AgeTable ages(params, options.tail_tol);
    Rng source = Rng::stream(seed, 0, 0);
    Rng channel = Rng::stream(seed, 0, 1);

    Trajectory traj;
    traj.T = T;
    traj.seed = seed;
    traj.realized_age_sum.assign(options.realized_age_max_j, 0.0);
    traj.realized_age_count.assign(options.realized_age_max_j, 0);

    int x = 0, x_hat = 0, j = 0;
    long long last_match = 0;
    std::optional<int> pending_obs;
    std::size_t next_checkpoint = 0;

    for (long long t = 0; t < T; ++t) {
        const double age = ages.at(j);
        const bool action = policy.transmit(j, t);
        const double cost = age + (action ? params.lambda : 0.0);

        traj.total_cost += cost;
        traj.sum_age += age;
        if (action) ++traj.schedule_count;
        if (j >= static_cast<int>(traj.occupancy.size()))
            traj.occupancy.resize(j + 1, 0);
        ++traj.occupancy[j];
        if (x == x_hat) last_match = t;
        if (j < options.realized_age_max_j) {
            traj.realized_age_sum[j] += static_cast<double>(t - last_match);
            ++traj.realized_age_count[j];
        }

        const bool success = action && channel.bernoulli(params.rho);
        if (options.record_stride > 0 && t % options.record_stride == 0)
            traj.records.push_back({t, x, x_hat, j, action, success, cost});

        // source transition at the end of the slot; its realization is the
        // observation a delivery epoch stores and forwards
        int p_obs = 0;
        if (source.bernoulli(1.0 - params.p)) {
            x = static_cast<int>((x + 1 + source.below(params.N - 1)) % params.N);
            p_obs = 1;
        }

        if (success) {
            ++traj.success_count;
            policy.on_delivery(t, pending_obs);
            pending_obs = p_obs;
            x_hat = x;  // monitor holds the state as of the next slot
            j = 0;
        } else {
            ++j;
        }

        while (next_checkpoint < options.checkpoints.size() &&
               options.checkpoints[next_checkpoint] == t + 1) {
            traj.checkpoint_costs.push_back(traj.total_cost);
            ++next_checkpoint;
        }
    }
    return traj;
}

SteadyAverages empirical_cost(const Trajectory& traj) {
    SteadyAverages avg;
    const double T = static_cast<double>(traj.T);
    avg.avg_age = traj.sum_age / T;
    avg.avg_active = static_cast<double>(traj.schedule_count) / T;
    avg.avg_cost = traj.total_cost / T;
    return avg;
}

std::vector<double> empirical_occupancy(const Trajectory& traj) {
    std::vector<double> freq(traj.occupancy.size());
    for (std::size_t i = 0; i < freq.size(); ++i)
        freq[i] = static_cast<double>(traj.occupancy[i]) / static_cast<double>(traj.T);
    return freq;
}

std::vector<std::pair<int, double>> conditional_realized_age(const Trajectory& traj) {
    std::vector<std::pair<int, double>> out;
    for (std::size_t j = 0; j < traj.realized_age_sum.size(); ++j)
        if (traj.realized_age_count[j] > 0)
            out.emplace_back(static_cast<int>(j),
                             traj.realized_age_sum[j] /
                                 static_cast<double>(traj.realized_age_count[j]));
    return out;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
    out << "t,x,x_hat,j,action,success,cost\n";
    for (const auto& rec : traj.records) {
        out << rec.t << ',' << rec.x << ',' << rec.x_hat << ',' << rec.j << ','
            << (rec.action ? 1 : 0) << ',' << (rec.success ? 1 : 0) << ','
            << csv_double(rec.cost) << '\n';
    }
}

}  // namespace maoii
