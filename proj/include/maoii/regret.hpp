#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "maoii/learner.hpp"

namespace maoii {

/// Steady-state cost of the optimal threshold under the true parameters
/// (the genie the learners are measured against).
double optimal_cost(const SourceParams& params);

enum class Algo : unsigned char { Proposed = 0, Greedy = 1 };

std::string algo_name(Algo algo);

/// Mean accumulated regret at a grid of horizons, with standard errors.
struct RegretCurve {
    std::string algo;
    std::vector<long long> checkpoints;
    std::vector<double> mean_regret;
    std::vector<double> stderr_;
    int n_runs = 0;
    double true_r = 0.0;
    int N = 0;
    double rho = 0.0;
    double lambda = 0.0;
};

/// Monte Carlo regret curve for a learner. Because the learner's
/// confidence radius depends on the horizon it is told, every checkpoint
/// gets its own fresh runs with that horizon; run k at every checkpoint
/// shares the same seed, so curves for different algorithms are paired.
/// Deterministic for a given base_seed regardless of n_threads.
RegretCurve regret_curve(double true_r, int N, double rho, double lambda,
                         const std::vector<long long>& checkpoints, int n_runs,
                         std::uint64_t base_seed, Algo algo,
                         unsigned n_threads = 1);

/// Regret curve for a fixed (non-learning) threshold. The horizon does
/// not enter the policy, so one trajectory per run covers all
/// checkpoints via prefix sums.
RegretCurve fixed_regret_curve(const SourceParams& params,
                               const ThresholdPolicy& threshold,
                               const std::vector<long long>& checkpoints,
                               int n_runs, std::uint64_t base_seed,
                               unsigned n_threads = 1);

/// Least-squares diagnostics: regret against ln T and against T.
struct FitReport {
    double log_slope = 0.0;
    double log_intercept = 0.0;
    double log_r2 = 0.0;
    double lin_slope = 0.0;
    double lin_intercept = 0.0;
    double lin_r2 = 0.0;
    double lin_slope_stderr = 0.0;
    bool log_like = false;
};

/// Fits the curve both ways and classifies it as log-like when the ln T
/// fit explains more variance and (if a linear reference slope is given,
/// e.g. the greedy baseline's) the linear slope's 2-sigma interval
/// reaches down to 10% of that reference. Requires >= 4 nonzero
/// checkpoints spanning >= 2 decades.
FitReport log_linearity_check(const RegretCurve& curve,
                              std::optional<double> ref_linear_slope = std::nullopt);

/// CSV rows `algo,T,mean_regret,stderr,n_runs` (appends; no header if
/// with_header is false).
void write_regret_csv(const RegretCurve& curve, std::ostream& out,
                      bool with_header = true);

/// Flat key=value block.
void write_fit_report(const FitReport& report, std::ostream& out);

}  // namespace maoii
