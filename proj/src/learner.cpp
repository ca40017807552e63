#include "maoii/learner.hpp"

#include <algorithm>
#include <cmath>

#include "maoii/csv.hpp"

namespace maoii {

double confidence_radius(int i, long long T) {
    if (i < 1) throw OutOfRange("confidence_radius: i must be >= 1");
    if (T < 3) throw OutOfRange("confidence_radius: T must be >= 3");
    return std::sqrt(std::log(static_cast<double>(T)) / static_cast<double>(i));
}

std::string phase_name(LearnerPhase phase) {
    switch (phase) {
        case LearnerPhase::Explore: return "explore";
        case LearnerPhase::Refine: return "refine";
        case LearnerPhase::CommitFinite: return "commit_finite";
        case LearnerPhase::CommitInfinite: return "commit_infinite";
    }
    return "?";
}

double clamp_estimate(double r_hat, int N) {
    return std::clamp(r_hat, 1e-9, 1.0 / static_cast<double>(N - 1));
}

ProposedPolicy::ProposedPolicy(int N, double rho, double lambda, long long T)
    : N_(N), rho_(rho), lambda_(lambda), T_(T), r_l_(r_limit(N, rho, lambda)) {
    if (N <= 2) throw OutOfRange("ProposedPolicy: N must be > 2");
    if (T < 3) throw OutOfRange("ProposedPolicy: T must be >= 3");
}

bool ProposedPolicy::transmit(int j, long long) {
    switch (phase_) {
        case LearnerPhase::CommitInfinite:
            return false;
        case LearnerPhase::CommitFinite:
            return applied_.is_finite() && j >= applied_.index();
        default:
            return true;  // threshold 0
    }
}

void ProposedPolicy::on_delivery(long long t, std::optional<int> prev_p_obs) {
    if (prev_p_obs) est_.add(*prev_p_obs, N_);

    if (phase_ == LearnerPhase::Explore && est_.count >= 1) {
        const double rad = confidence_radius(est_.count, T_);
        if (est_.r_hat - rad >= r_l_) {
            phase_ = LearnerPhase::CommitInfinite;
            applied_ = ThresholdPolicy::infinite();
            T0_ = t;
        } else if (est_.r_hat + rad < r_l_) {
            phase_ = LearnerPhase::Refine;
            T0_ = t;
        }
    }
    if (phase_ == LearnerPhase::Refine) {
        const double rad = confidence_radius(est_.count, T_);
        if (est_.r_hat + 2.0 * rad < r_l_) {
            phase_ = LearnerPhase::CommitFinite;
            T1_ = t;
        }
    }
    if (phase_ == LearnerPhase::CommitFinite) {
        const double rc = clamp_estimate(est_.r_hat, N_);
        applied_ = rc < r_l_
                       ? optimal_threshold(make_params(N_, rc, rho_, lambda_))
                       : ThresholdPolicy::finite(0);
    }
    deliveries_.push_back({t, est_.count, est_.r_hat, phase_, applied_});
}

GreedyPolicy::GreedyPolicy(int N, double rho, double lambda)
    : N_(N), rho_(rho), lambda_(lambda) {
    if (N <= 2) throw OutOfRange("GreedyPolicy: N must be > 2");
}

bool GreedyPolicy::transmit(int j, long long) {
    if (!applied_.is_finite()) return false;
    return j >= applied_.index();
}

void GreedyPolicy::on_delivery(long long t, std::optional<int> prev_p_obs) {
    if (prev_p_obs) est_.add(*prev_p_obs, N_);
    if (est_.count >= 1) {
        const double rc = clamp_estimate(est_.r_hat, N_);
        applied_ = optimal_threshold(make_params(N_, rc, rho_, lambda_));
    }
    const LearnerPhase phase = est_.count >= 1 ? LearnerPhase::CommitFinite
                                               : LearnerPhase::Explore;
    deliveries_.push_back({t, est_.count, est_.r_hat, phase, applied_});
}

namespace {

SimOptions to_sim_options(const LearnerOptions& options) {
    SimOptions sim;
    sim.record_stride = options.record_costs ? 1 : 0;
    sim.checkpoints = options.checkpoints;
    sim.tail_tol = options.tail_tol;
    return sim;
}

void extract_costs(LearnerTrace& trace, bool record_costs) {
    if (!record_costs) return;
    trace.slot_costs.reserve(trace.traj.records.size());
    for (const auto& rec : trace.traj.records) trace.slot_costs.push_back(rec.cost);
    trace.traj.records.clear();
    trace.traj.records.shrink_to_fit();
}

}  // namespace

LearnerTrace run_proposed(double true_r, int N, double rho, double lambda,
                          long long T, std::uint64_t seed,
                          const LearnerOptions& options) {
    const SourceParams params = make_params(N, true_r, rho, lambda);
    ProposedPolicy policy(N, rho, lambda, T);
    LearnerTrace trace;
    trace.traj = simulate(params, policy, T, seed, to_sim_options(options));
    trace.deliveries = policy.deliveries();
    trace.T0 = policy.T0();
    trace.T1 = policy.T1();
    trace.final_phase = policy.phase();
    trace.final_policy = policy.applied();
    extract_costs(trace, options.record_costs);
    return trace;
}

LearnerTrace run_greedy(double true_r, int N, double rho, double lambda,
                        long long T, std::uint64_t seed,
                        const LearnerOptions& options) {
    const SourceParams params = make_params(N, true_r, rho, lambda);
    GreedyPolicy policy(N, rho, lambda);
    LearnerTrace trace;
    trace.traj = simulate(params, policy, T, seed, to_sim_options(options));
    trace.deliveries = policy.deliveries();
    trace.final_phase = trace.deliveries.empty()
                            ? LearnerPhase::Explore
                            : trace.deliveries.back().phase;
    trace.final_policy = policy.applied();
    extract_costs(trace, options.record_costs);
    return trace;
}

void write_learner_csv(const LearnerTrace& trace, std::ostream& out) {
    out << "t,cost,phase,i,r_hat,threshold\n";
    // the state a slot's decision ran under: the last delivery strictly
    // before that slot
    std::size_t next_delivery = 0;
    LearnerPhase phase = LearnerPhase::Explore;
    int i = 0;
    double r_hat = 0.0;
    ThresholdPolicy applied = ThresholdPolicy::finite(0);
    for (std::size_t t = 0; t < trace.slot_costs.size(); ++t) {
        while (next_delivery < trace.deliveries.size() &&
               trace.deliveries[next_delivery].t < static_cast<long long>(t)) {
            const auto& d = trace.deliveries[next_delivery];
            phase = d.phase;
            i = d.i;
            r_hat = d.r_hat;
            applied = d.applied;
            ++next_delivery;
        }
        out << t << ',' << csv_double(trace.slot_costs[t]) << ','
            << phase_name(phase) << ',' << i << ',' << csv_double(r_hat) << ',';
        if (applied.is_finite())
            out << applied.index();
        else
            out << "inf";
        out << '\n';
    }
}

}  // namespace maoii
