#include "maoii/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace maoii {

double r_limit(int N, double rho, double lambda) {
    if (N <= 2) throw OutOfRange("r_limit requires N > 2");
    if (!(rho > 0.0 && rho <= 1.0)) throw OutOfRange("rho must be in (0, 1]");
    if (!(lambda > 0.0)) throw NoRoot("lambda must be > 0 for a finite r_limit");
    // lambda N^2 r^2 + (N-1) N rho r - (N-1)(N+1) rho = 0
    const double a = lambda * N * N;
    const double b = (N - 1.0) * N * rho;
    const double c = -(N - 1.0) * (N + 1.0) * rho;
    const double root = (-b + std::sqrt(b * b - 4.0 * a * c)) / (2.0 * a);
    return std::min(root, 1.0 / (N - 1));
}

namespace {

ThresholdPolicy optimal_threshold_smooth(const SourceParams& params) {
    const double lambda = params.lambda;
    if (lambda <= lambda_n(params, 0)) return ThresholdPolicy::finite(0);
    if (lambda >= lambda_limit(params)) return ThresholdPolicy::infinite();
    // jump search over the strictly increasing intersection points,
    // step alpha strictly inside the convergence bound
    const double s = 1.0 - params.r;
    const double q = params.p - params.r;
    const double alpha = 0.9 / (s * s - q * q);
    long long n = 0;
    const int iteration_cap = 10000;
    for (int it = 0; it < iteration_cap; ++it) {
        const double ln = lambda_n(params, static_cast<int>(n));
        if (ln >= lambda) {
            // overshoot is excluded analytically; guard against rounding
            while (n > 0 && lambda_n(params, static_cast<int>(n - 1)) >= lambda) --n;
            return ThresholdPolicy::finite(static_cast<int>(n));
        }
        if (lambda <= lambda_n(params, static_cast<int>(n + 1)))
            return ThresholdPolicy::finite(static_cast<int>(n + 1));
        const long long step =
            static_cast<long long>(std::floor(alpha * (lambda - ln)));
        n += std::max<long long>(1, step);
    }
    throw NonConvergence("threshold jump search exceeded its iteration cap");
}

ThresholdPolicy optimal_threshold_oscillating(const SourceParams& params) {
    if (!params.volatile_source)
        throw VolatilityRequired(
            "oscillating-regime threshold optimality requires (N-1) r >= 4 p");
    // cost over even thresholds is monotone toward its limit on either
    // side of the lambda(a_2n) crossing, so the argmin sits at an
    // endpoint: threshold 0 or never transmitting.
    const double cost0 = avg_cost(params, ThresholdPolicy::finite(0));
    const double cost_inf = age_limit(params);
    return cost0 <= cost_inf ? ThresholdPolicy::finite(0) : ThresholdPolicy::infinite();
}

}  // namespace

ThresholdPolicy optimal_threshold(const SourceParams& params) {
    return params.smooth() ? optimal_threshold_smooth(params)
                           : optimal_threshold_oscillating(params);
}

ThresholdPolicy brute_force_threshold(const SourceParams& params, int n_max) {
    ThresholdPolicy best = ThresholdPolicy::infinite();
    double best_cost = avg_cost(params, best);
    const int step = params.smooth() ? 1 : 2;
    for (int n = n_max - n_max % step; n >= 0; n -= step) {
        const double c = avg_cost(params, ThresholdPolicy::finite(n));
        if (c <= best_cost) {
            best_cost = c;
            best = ThresholdPolicy::finite(n);
        }
    }
    return best;
}

PolicyVector value_iteration(const SourceParams& params, double beta, int j_max,
                             double tol) {
    if (!(beta > 0.0 && beta < 1.0)) throw OutOfRange("beta must be in (0, 1)");
    const int n_states = j_max + 1;
    std::vector<double> ages(n_states);
    for (int j = 0; j < n_states; ++j) ages[j] = age_closed(params, j);

    PolicyVector pv;
    pv.values.assign(n_states, 0.0);
    pv.actions.assign(n_states, Action::Idle);
    std::vector<double> next(n_states);

    // sup-norm stopping: ||V^t - V*|| <= beta/(1-beta) * ||V^t - V^{t-1}||
    const double stop = tol * (1.0 - beta) / beta;
    // values are bounded by the discounted idle cost; size the iteration
    // budget for that scale, and accept the rounding floor when the
    // requested tolerance sits below it
    const double v_bound = (ages[j_max] + params.lambda) / (1.0 - beta);
    const double floor = 8.0 * std::numeric_limits<double>::epsilon() * v_bound;
    const int cap =
        static_cast<int>(std::ceil(std::log(stop / v_bound) / std::log(beta))) +
        1000;
    for (int it = 0; it < cap; ++it) {
        double delta = 0.0;
        for (int j = 0; j < n_states; ++j) {
            const int succ = std::min(j + 1, j_max);  // terminal self-loop under idle
            const double idle = ages[j] + beta * pv.values[succ];
            const double transmit = ages[j] + params.lambda +
                                    params.rho * beta * pv.values[0] +
                                    (1.0 - params.rho) * beta * pv.values[succ];
            next[j] = std::min(idle, transmit);
            delta = std::max(delta, std::abs(next[j] - pv.values[j]));
        }
        pv.values.swap(next);
        pv.iterations = it + 1;
        if (delta < stop || delta < floor) {
            for (int j = 0; j < n_states; ++j) {
                const int succ = std::min(j + 1, j_max);
                const double idle = ages[j] + beta * pv.values[succ];
                const double transmit = ages[j] + params.lambda +
                                        params.rho * beta * pv.values[0] +
                                        (1.0 - params.rho) * beta * pv.values[succ];
                pv.actions[j] = transmit < idle ? Action::Transmit : Action::Idle;
            }
            return pv;
        }
    }
    throw NonConvergence("value iteration exceeded its cap of " + std::to_string(cap));
}

std::optional<ThresholdPolicy> extract_threshold(const PolicyVector& pv) {
    const auto& acts = pv.actions;
    const auto first_tx = std::find(acts.begin(), acts.end(), Action::Transmit);
    if (first_tx == acts.end()) return ThresholdPolicy::infinite();
    if (std::find(first_tx, acts.end(), Action::Idle) != acts.end())
        return std::nullopt;
    return ThresholdPolicy::finite(static_cast<int>(first_tx - acts.begin()));
}

}  // namespace maoii
