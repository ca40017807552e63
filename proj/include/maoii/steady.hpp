#pragma once

#include <optional>
#include <vector>

#include "maoii/params.hpp"

namespace maoii {

/// Threshold scheduling policy: transmit once the age value reaches a_n,
/// or never (Infinite).
struct ThresholdPolicy {
    static ThresholdPolicy finite(int n) { return ThresholdPolicy{n}; }
    static ThresholdPolicy infinite() { return ThresholdPolicy{std::nullopt}; }

    bool is_finite() const { return n.has_value(); }
    int index() const { return *n; }

    bool operator==(const ThresholdPolicy&) const = default;

    std::optional<int> n;
};

/// Whether a threshold-n policy transmits at ladder index j.
///
/// The policy compares age values: transmit iff a_j >= a_n. In the smooth
/// regime that is j >= n; in the oscillating regime every odd a_j lies
/// above the limit, so the active set is {odd j} union {even j >= n}.
bool threshold_transmits(const SourceParams& params, const ThresholdPolicy& policy,
                         int j);

/// Stationary distribution of the age index under a fixed admissible
/// threshold: explicit head plus an analytic geometric tail.
struct StationaryDist {
    ThresholdPolicy threshold;
    std::vector<double> head; ///< u(a_0) .. u(a_{tail_start})
    double tail_ratio;        ///< 1 - rho
    int tail_start;           ///< for i > tail_start: u_i = head.back() * ratio^{i-tail_start}

    double at(int i) const;
    /// head sum plus closed-form tail sum (1 within 1e-12 by construction).
    double total_mass() const;
};

struct SteadyAverages {
    double avg_age = 0.0;
    double avg_active = 0.0;
    double avg_cost = 0.0;
};

/// Stationary distribution under threshold n. Throws NoStationary for an
/// odd threshold in the oscillating regime (all states transient).
StationaryDist stationary(const SourceParams& params, const ThresholdPolicy& n);

/// Closed-form average age under threshold n (limit age for Infinite).
double avg_age(const SourceParams& params, const ThresholdPolicy& n);

/// Closed-form average active time: 1/(n rho + 1) smooth,
/// 1/(2 - (1-rho)^{n/2}) oscillating (n even), 0 for Infinite.
double avg_active(const SourceParams& params, const ThresholdPolicy& n);

/// avg_age + lambda * avg_active.
double avg_cost(const SourceParams& params, const ThresholdPolicy& n);

SteadyAverages steady_averages(const SourceParams& params, const ThresholdPolicy& n);

/// Intersection cost lambda(a_n) at which thresholds n and n+1 tie,
/// computed as the quotient of closed-form averages (smooth regime).
double lambda_n(const SourceParams& params, int n);

/// Expanded closed form of lambda(a_n); cross-check route for lambda_n.
double lambda_n_expanded(const SourceParams& params, int n);

/// Intersection cost lambda(a_2n) between even thresholds 2n and 2(n+1)
/// (oscillating regime).
double lambda_2n(const SourceParams& params, int n);

/// Limit of lambda(a_n): (N-1)(N+1-Nr) rho / (N^2 r^2).
double lambda_limit(const SourceParams& params);

/// The eliminated-variable update matrix for the head probabilities
/// (u_0..u_{n*-1}) under the optimal threshold: first row all -rho,
/// ones on the sub-diagonal, zeros elsewhere.
std::vector<std::vector<double>> build_Q(int n_star, double rho);

/// Largest eigenvalue modulus of a square matrix, to 1e-8.
double spectral_radius(const std::vector<std::vector<double>>& Q);

}  // namespace maoii
