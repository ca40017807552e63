#include "maoii/steady.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

namespace maoii {

bool threshold_transmits(const SourceParams& params, const ThresholdPolicy& policy,
                         int j) {
    if (!policy.is_finite()) return false;
    if (params.smooth()) return j >= policy.index();
    return (j % 2 == 1) || j >= policy.index();
}

double StationaryDist::at(int i) const {
    if (i <= tail_start) return head[i];
    return head.back() * std::pow(tail_ratio, i - tail_start);
}

double StationaryDist::total_mass() const {
    double s = 0.0;
    for (int i = 0; i < tail_start; ++i) s += head[i];
    // geometric tail from tail_start: head.back() / (1 - ratio)
    return s + head.back() / (1.0 - tail_ratio);
}

namespace {

void require_admissible(const SourceParams& params, const ThresholdPolicy& n) {
    if (n.is_finite() && n.index() < 0)
        throw OutOfRange("threshold index must be >= 0");
    if (!params.smooth() && n.is_finite() && n.index() % 2 != 0)
        throw NoStationary("odd threshold " + std::to_string(n.index()) +
                           " has no stationary distribution in the oscillating regime");
}

}  // namespace

StationaryDist stationary(const SourceParams& params, const ThresholdPolicy& policy) {
    require_admissible(params, policy);
    if (!policy.is_finite())
        throw NoStationary("infinite threshold has no stationary distribution");
    const int n = policy.index();
    const double rho = params.rho;
    StationaryDist dist;
    dist.threshold = policy;
    dist.tail_ratio = 1.0 - rho;
    dist.tail_start = n;
    dist.head.resize(n + 1);
    if (params.smooth()) {
        const double u = rho / (n * rho + 1.0);
        for (int i = 0; i <= n; ++i) dist.head[i] = u;
    } else {
        const double denom = 2.0 - std::pow(1.0 - rho, n / 2);
        for (int i = 0; i < n; ++i)
            dist.head[i] = std::pow(1.0 - rho, i / 2) * rho / denom;
        dist.head[n] = std::pow(1.0 - rho, n / 2) * rho / denom;
    }
    return dist;
}

double avg_age(const SourceParams& params, const ThresholdPolicy& policy) {
    require_admissible(params, policy);
    const double al = age_limit(params);
    if (!policy.is_finite()) return al;
    const int n = policy.index();
    const double rho = params.rho, w = 1.0 - rho;
    const double q = params.p - params.r;
    const double s = 1.0 - params.r;
    const double Nr = params.N * params.r;
    if (params.smooth()) {
        const double u = rho / (n * rho + 1.0);
        double v = (n + 1) * al + al * w / rho;
        v += (q * (1.0 - std::pow(q, n + 1)) / Nr + std::pow(q, n + 2) * w / (1.0 - w * q)) / Nr;
        v -= (s * (1.0 - std::pow(s, n + 1)) / params.r +
              std::pow(s, n + 2) * w / (1.0 - w * s)) / params.r;
        return u * v;
    }
    const double denom = 2.0 - std::pow(w, n / 2);
    const double t1 = rho * q / (denom * Nr) *
                      ((2.0 - Nr) * (1.0 - w * q) -
                       rho * std::pow(1.0 - Nr, n + 1) * std::pow(w, n / 2)) /
                      ((1.0 - w * q * q) * (1.0 - w * q));
    const double t2 = rho * s / (denom * params.r) *
                      ((2.0 - params.r) * (1.0 - w * s) -
                       rho * std::pow(s, n + 1) * std::pow(w, n / 2)) /
                      ((1.0 - w * s * s) * (1.0 - w * s));
    return al + t1 - t2;
}

double avg_active(const SourceParams& params, const ThresholdPolicy& policy) {
    require_admissible(params, policy);
    if (!policy.is_finite()) return 0.0;
    const int n = policy.index();
    if (params.smooth()) return 1.0 / (n * params.rho + 1.0);
    return 1.0 / (2.0 - std::pow(1.0 - params.rho, n / 2));
}

double avg_cost(const SourceParams& params, const ThresholdPolicy& policy) {
    return avg_age(params, policy) + params.lambda * avg_active(params, policy);
}

SteadyAverages steady_averages(const SourceParams& params, const ThresholdPolicy& n) {
    SteadyAverages out;
    out.avg_age = avg_age(params, n);
    out.avg_active = avg_active(params, n);
    out.avg_cost = out.avg_age + params.lambda * out.avg_active;
    return out;
}

double lambda_n(const SourceParams& params, int n) {
    const auto lo = ThresholdPolicy::finite(n);
    const auto hi = ThresholdPolicy::finite(n + 1);
    return (avg_age(params, hi) - avg_age(params, lo)) /
           (avg_active(params, lo) - avg_active(params, hi));
}

double lambda_n_expanded(const SourceParams& params, int n) {
    const double rho = params.rho, w = 1.0 - rho;
    const double q = params.p - params.r;
    const double s = 1.0 - params.r;
    const double Nr = params.N * params.r;
    return lambda_limit(params) +
           std::pow(q, n + 2) * rho * (n * rho + 1.0 + rho / Nr) / (Nr * (1.0 - w * q)) -
           std::pow(s, n + 2) * rho * (n * rho + 1.0 + rho / params.r) /
               (params.r * (1.0 - w * s));
}

double lambda_2n(const SourceParams& params, int n) {
    const auto lo = ThresholdPolicy::finite(2 * n);
    const auto hi = ThresholdPolicy::finite(2 * (n + 1));
    return (avg_age(params, hi) - avg_age(params, lo)) /
           (avg_active(params, lo) - avg_active(params, hi));
}

double lambda_limit(const SourceParams& params) {
    const double N = params.N, r = params.r;
    return (N - 1.0) * (N + 1.0 - N * r) * params.rho / (N * N * r * r);
}

std::vector<std::vector<double>> build_Q(int n_star, double rho) {
    if (n_star < 1) throw OutOfRange("n_star must be >= 1");
    std::vector<std::vector<double>> Q(n_star, std::vector<double>(n_star, 0.0));
    for (int j = 0; j < n_star; ++j) Q[0][j] = -rho;
    for (int i = 1; i < n_star; ++i) Q[i][i - 1] = 1.0;
    return Q;
}

double spectral_radius(const std::vector<std::vector<double>>& Q) {
    const int n = static_cast<int>(Q.size());
    Eigen::MatrixXd M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = Q[i][j];
    Eigen::EigenSolver<Eigen::MatrixXd> solver(M, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw NonConvergence("eigenvalue computation did not converge");
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace maoii
