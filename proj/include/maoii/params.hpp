#pragma once

#include <cstdint>
#include <vector>

#include "maoii/errors.hpp"

namespace maoii {

/// Shape of the age ladder a_j: Smooth (monotone) when 1-r >= |p-r|,
/// Oscillating (alternating even/odd subsequences, only N=2) otherwise.
enum class Regime { Smooth, Oscillating };

/// Symmetric N-state source observed over an erasure channel.
///
/// Only r is taken as input; p = 1 - (N-1)r is derived so that the
/// symmetry relation holds exactly in floating point.
struct SourceParams {
    int N = 2;           ///< state count, >= 2
    double r = 0.0;      ///< per-target transition probability, (0, 1/(N-1)]
    double p = 0.0;      ///< stay probability, derived
    double rho = 1.0;    ///< channel success probability, (0, 1]
    double lambda = 0.0; ///< per-transmission cost, >= 0
    Regime regime = Regime::Smooth;
    bool volatile_source = false; ///< (N-1)r >= 4p

    bool smooth() const { return regime == Regime::Smooth; }
};

/// Validates inputs and derives p and the regime.
/// Throws OutOfRange naming the offending field.
SourceParams make_params(int N, double r, double rho, double lambda);

/// Belief pi_k: probability the monitor's estimate is still correct k
/// slots after a delivery. pi_0 = 1, pi_{k+1} = p pi_k + r (1 - pi_k).
double belief(const SourceParams& params, int k);

/// Age ladder value a_j by its defining sum
///   a_j = sum_{k=0..j} k (1-p) (1-r)^{k-1} pi_{j-k}
/// using compensated summation (oscillating terms alternate in magnitude).
double age_by_sum(const SourceParams& params, int j);

/// Age ladder value a_j in closed form:
///   a_j = (N-1)/(Nr) + (p-r)^{j+1}/(Nr) - (1-r)^{j+1}/r.
double age_closed(const SourceParams& params, int j);

/// Limit of a_j as j -> infinity: (N-1)/(Nr).
double age_limit(const SourceParams& params);

/// Precomputed age ladder a_0..a_jmax with its limit.
///
/// j_max is chosen from the analytic geometric envelope
/// (1-r)^{j+1}/r + |p-r|^{j+1}/(Nr) < tail_tol, never from observed
/// differences. at(j) clamps to the limit beyond j_max (error < tail_tol).
class AgeTable {
public:
    AgeTable(const SourceParams& params, double tail_tol);

    double at(int j) const {
        return j < static_cast<int>(values_.size()) ? values_[j] : limit_;
    }
    double limit() const { return limit_; }
    int j_max() const { return static_cast<int>(values_.size()) - 1; }
    double tail_tol() const { return tail_tol_; }
    const std::vector<double>& values() const { return values_; }

private:
    std::vector<double> values_;
    double limit_;
    double tail_tol_;
};

inline AgeTable build_age_table(const SourceParams& params, double tail_tol) {
    return AgeTable(params, tail_tol);
}

}  // namespace maoii
