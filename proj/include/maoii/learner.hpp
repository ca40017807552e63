#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "maoii/sim.hpp"
#include "maoii/solver.hpp"

namespace maoii {

/// Running estimate of the transition probability r from piggybacked
/// one-step observations. Each observation is a Bernoulli((N-1)r) bit;
/// r_hat is the running mean of obs/(N-1), kept incrementally.
struct EstimatorState {
    int count = 0;            ///< observations incorporated
    long long transitions = 0;///< integer count of observed transitions
    double r_hat = 0.0;

    void add(int p_obs, int N) {
        const double i = static_cast<double>(count + 1);
        r_hat = ((i - 1.0) / i) * r_hat +
                static_cast<double>(p_obs) / (static_cast<double>(N - 1) * i);
        transitions += p_obs;
        ++count;
    }
};

/// Confidence radius sqrt(ln T / i) around r_hat after i observations.
double confidence_radius(int i, long long T);

enum class LearnerPhase : unsigned char {
    Explore,        ///< threshold 0, testing both exit conditions
    Refine,         ///< threshold 0, widened 2-radius commit test
    CommitFinite,   ///< apply the solved threshold, keep estimating
    CommitInfinite, ///< never transmit again (absorbing)
};

std::string phase_name(LearnerPhase phase);

/// One delivery epoch: estimator and phase state right after processing it.
struct DeliveryRecord {
    long long t;
    int i;
    double r_hat;
    LearnerPhase phase;
    ThresholdPolicy applied;  ///< policy in force from the next slot on
};

struct LearnerTrace {
    Trajectory traj;
    std::vector<DeliveryRecord> deliveries;
    std::optional<long long> T0;  ///< slot of the Explore exit
    std::optional<long long> T1;  ///< slot of the CommitFinite entry
    LearnerPhase final_phase = LearnerPhase::Explore;
    ThresholdPolicy final_policy = ThresholdPolicy::finite(0);
    std::vector<double> slot_costs;  ///< only when options.record_costs
};

struct LearnerOptions {
    bool record_costs = false;  ///< keep the per-slot cost stream
    std::vector<long long> checkpoints;
    double tail_tol = 1e-9;
};

/// Phased estimator-policy scheduler for unknown r (known N, rho, lambda,
/// horizon T). Explores with threshold 0 until the estimate separates from
/// the finite/infinite boundary r_l, then commits: Infinite if the source
/// is confidently too volatile, otherwise the solved threshold for r_hat
/// with continued re-estimation.
class ProposedPolicy : public Policy {
public:
    ProposedPolicy(int N, double rho, double lambda, long long T);

    bool transmit(int j, long long t) override;
    void on_delivery(long long t, std::optional<int> prev_p_obs) override;

    const EstimatorState& estimator() const { return est_; }
    LearnerPhase phase() const { return phase_; }
    ThresholdPolicy applied() const { return applied_; }
    const std::vector<DeliveryRecord>& deliveries() const { return deliveries_; }
    std::optional<long long> T0() const { return T0_; }
    std::optional<long long> T1() const { return T1_; }

private:
    int N_;
    double rho_, lambda_;
    long long T_;
    double r_l_;
    EstimatorState est_;
    LearnerPhase phase_ = LearnerPhase::Explore;
    ThresholdPolicy applied_ = ThresholdPolicy::finite(0);
    std::vector<DeliveryRecord> deliveries_;
    std::optional<long long> T0_, T1_;
};

/// Baseline that re-solves for the point estimate at every delivery with
/// no confidence guard. An estimate above r_l installs the Infinite
/// threshold, which permanently stops deliveries and hence learning.
class GreedyPolicy : public Policy {
public:
    GreedyPolicy(int N, double rho, double lambda);

    bool transmit(int j, long long t) override;
    void on_delivery(long long t, std::optional<int> prev_p_obs) override;

    const EstimatorState& estimator() const { return est_; }
    ThresholdPolicy applied() const { return applied_; }
    const std::vector<DeliveryRecord>& deliveries() const { return deliveries_; }

private:
    int N_;
    double rho_, lambda_;
    EstimatorState est_;
    ThresholdPolicy applied_ = ThresholdPolicy::finite(0);
    std::vector<DeliveryRecord> deliveries_;
};

/// Clamps an estimate into (1e-9, 1/(N-1)] before it reaches the solver.
double clamp_estimate(double r_hat, int N);

LearnerTrace run_proposed(double true_r, int N, double rho, double lambda,
                          long long T, std::uint64_t seed,
                          const LearnerOptions& options = {});

LearnerTrace run_greedy(double true_r, int N, double rho, double lambda,
                        long long T, std::uint64_t seed,
                        const LearnerOptions& options = {});

/// CSV rows `t,cost,phase,i,r_hat,threshold`, one per slot
/// (requires record_costs). The state columns reflect the learner state
/// the slot's decision was made under.
void write_learner_csv(const LearnerTrace& trace, std::ostream& out);

}  // namespace maoii
