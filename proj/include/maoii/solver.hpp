#pragma once

#include <optional>
#include <vector>

#include "maoii/steady.hpp"

namespace maoii {

enum class Action : unsigned char { Idle = 0, Transmit = 1 };

/// Discounted value function and greedy action per ladder state.
struct PolicyVector {
    std::vector<double> values;
    std::vector<Action> actions;
    int iterations = 0;
};

/// Transition probability at which the finite/infinite optimum flips for
/// the given cost: unique positive root of
///   lambda N^2 r^2 + (N-1) N rho r - (N-1)(N+1) rho = 0,
/// clamped to (0, 1/(N-1)].
double r_limit(int N, double rho, double lambda);

/// Optimal threshold via the intersection-point jump search (smooth
/// regime) or endpoint comparison over the admissible even set
/// (oscillating regime; requires the volatility flag).
ThresholdPolicy optimal_threshold(const SourceParams& params);

/// Exhaustive argmin of avg_cost over n in [0, n_max] plus Infinite,
/// ties toward the smaller threshold. Oracle for optimal_threshold.
ThresholdPolicy brute_force_threshold(const SourceParams& params, int n_max);

/// Value iteration for the discounted ladder MDP, truncated at j_max
/// (the terminal state self-loops under idle). Converges to sup-norm tol.
PolicyVector value_iteration(const SourceParams& params, double beta, int j_max,
                             double tol);

/// Reads a threshold off an action vector: Finite(n) for a single
/// idle->transmit switch at n, Infinite for all-idle, absent otherwise.
std::optional<ThresholdPolicy> extract_threshold(const PolicyVector& pv);

}  // namespace maoii
