#include "maoii/regret.hpp"

#include <cmath>

#include "maoii/csv.hpp"
#include "maoii/parallel.hpp"
#include "maoii/rng.hpp"

namespace maoii {

double optimal_cost(const SourceParams& params) {
    return avg_cost(params, optimal_threshold(params));
}

std::string algo_name(Algo algo) {
    return algo == Algo::Proposed ? "proposed" : "greedy";
}

namespace {

void check_checkpoints(const std::vector<long long>& checkpoints) {
    if (checkpoints.empty()) throw OutOfRange("checkpoints must be non-empty");
    long long prev = -1;
    for (long long cp : checkpoints) {
        if (cp < 0 || cp <= prev)
            throw OutOfRange("checkpoints must be nonnegative and increasing");
        prev = cp;
    }
}

std::uint64_t run_seed(std::uint64_t base_seed, int run_index) {
    return Rng::stream(base_seed, static_cast<std::uint64_t>(run_index), 7).next();
}

/// Mean and standard error over runs, reduced in run-index order so the
/// output is scheduling-independent.
void reduce_runs(RegretCurve& curve, const std::vector<double>& per_run) {
    const int n = static_cast<int>(per_run.size());
    double sum = 0.0;
    for (double v : per_run) sum += v;
    const double mean = sum / n;
    double ss = 0.0;
    for (double v : per_run) ss += (v - mean) * (v - mean);
    curve.mean_regret.push_back(mean);
    curve.stderr_.push_back(n > 1 ? std::sqrt(ss / (n - 1) / n) : 0.0);
}

}  // namespace

RegretCurve regret_curve(double true_r, int N, double rho, double lambda,
                         const std::vector<long long>& checkpoints, int n_runs,
                         std::uint64_t base_seed, Algo algo,
                         unsigned n_threads) {
    check_checkpoints(checkpoints);
    if (n_runs < 30) throw OutOfRange("n_runs must be >= 30");
    const SourceParams params = make_params(N, true_r, rho, lambda);
    const double c_star = optimal_cost(params);

    RegretCurve curve;
    curve.algo = algo_name(algo);
    curve.checkpoints = checkpoints;
    curve.n_runs = n_runs;
    curve.true_r = true_r;
    curve.N = N;
    curve.rho = rho;
    curve.lambda = lambda;

    std::vector<long long> active;  // horizons that need simulation
    for (long long cp : checkpoints)
        if (cp > 0) active.push_back(cp);

    std::vector<std::vector<double>> results(active.size(),
                                             std::vector<double>(n_runs));
    const std::size_t n_tasks = active.size() * static_cast<std::size_t>(n_runs);
    run_parallel(n_tasks, n_threads, [&](std::size_t idx) {
        const std::size_t ci = idx / n_runs;
        const int k = static_cast<int>(idx % n_runs);
        const long long T = active[ci];
        const std::uint64_t seed = run_seed(base_seed, k);
        const LearnerTrace trace =
            algo == Algo::Proposed
                ? run_proposed(true_r, N, rho, lambda, T, seed)
                : run_greedy(true_r, N, rho, lambda, T, seed);
        results[ci][k] = trace.traj.total_cost - static_cast<double>(T) * c_star;
    });

    std::size_t ci = 0;
    for (long long cp : checkpoints) {
        if (cp == 0) {
            curve.mean_regret.push_back(0.0);
            curve.stderr_.push_back(0.0);
        } else {
            reduce_runs(curve, results[ci++]);
        }
    }
    return curve;
}

RegretCurve fixed_regret_curve(const SourceParams& params,
                               const ThresholdPolicy& threshold,
                               const std::vector<long long>& checkpoints,
                               int n_runs, std::uint64_t base_seed,
                               unsigned n_threads) {
    check_checkpoints(checkpoints);
    if (n_runs < 1) throw OutOfRange("n_runs must be >= 1");
    const double c_star = optimal_cost(params);

    RegretCurve curve;
    curve.algo = "fixed";
    curve.checkpoints = checkpoints;
    curve.n_runs = n_runs;
    curve.true_r = params.r;
    curve.N = params.N;
    curve.rho = params.rho;
    curve.lambda = params.lambda;

    std::vector<long long> active;
    for (long long cp : checkpoints)
        if (cp > 0) active.push_back(cp);

    // one trajectory per run; prefix costs serve every checkpoint
    std::vector<std::vector<double>> per_run(n_runs);
    run_parallel(static_cast<std::size_t>(n_runs), n_threads, [&](std::size_t k) {
        SimOptions options;
        options.checkpoints = active;
        FixedThresholdPolicy policy(params, threshold);
        const Trajectory traj = simulate(params, policy, active.back(),
                                         run_seed(base_seed, static_cast<int>(k)),
                                         options);
        per_run[k].resize(active.size());
        for (std::size_t ci = 0; ci < active.size(); ++ci)
            per_run[k][ci] = traj.checkpoint_costs[ci] -
                             static_cast<double>(active[ci]) * c_star;
    });

    std::size_t ci = 0;
    for (long long cp : checkpoints) {
        if (cp == 0) {
            curve.mean_regret.push_back(0.0);
            curve.stderr_.push_back(0.0);
            continue;
        }
        std::vector<double> column(n_runs);
        for (int k = 0; k < n_runs; ++k) column[k] = per_run[k][ci];
        reduce_runs(curve, column);
        ++ci;
    }
    return curve;
}

namespace {

struct Fit {
    double slope, intercept, r2, slope_stderr;
};

Fit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    Fit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = y[i] - (fit.intercept + fit.slope * x[i]);
        ss_res += e * e;
    }
    fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    fit.slope_stderr =
        n > 2 ? std::sqrt(ss_res / static_cast<double>(n - 2) / sxx) : 0.0;
    return fit;
}

}  // namespace

FitReport log_linearity_check(const RegretCurve& curve,
                              std::optional<double> ref_linear_slope) {
    std::vector<double> t, r;
    for (std::size_t i = 0; i < curve.checkpoints.size(); ++i) {
        if (curve.checkpoints[i] <= 0) continue;  // ln 0 undefined; regret is 0
        t.push_back(static_cast<double>(curve.checkpoints[i]));
        r.push_back(curve.mean_regret[i]);
    }
    if (t.size() < 4)
        throw InsufficientCheckpoints("need >= 4 nonzero checkpoints");
    if (t.back() / t.front() < 100.0)
        throw InsufficientCheckpoints("checkpoints must span >= 2 decades");

    std::vector<double> log_t(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) log_t[i] = std::log(t[i]);

    const Fit log_fit = least_squares(log_t, r);
    const Fit lin_fit = least_squares(t, r);

    FitReport report;
    report.log_slope = log_fit.slope;
    report.log_intercept = log_fit.intercept;
    report.log_r2 = log_fit.r2;
    report.lin_slope = lin_fit.slope;
    report.lin_intercept = lin_fit.intercept;
    report.lin_r2 = lin_fit.r2;
    report.lin_slope_stderr = lin_fit.slope_stderr;
    report.log_like = log_fit.r2 > lin_fit.r2;
    if (ref_linear_slope) {
        const double lo = lin_fit.slope - 2.0 * lin_fit.slope_stderr;
        report.log_like = report.log_like && lo <= 0.1 * *ref_linear_slope;
    }
    return report;
}

void write_regret_csv(const RegretCurve& curve, std::ostream& out,
                      bool with_header) {
    if (with_header) out << "algo,T,mean_regret,stderr,n_runs\n";
    for (std::size_t i = 0; i < curve.checkpoints.size(); ++i) {
        out << curve.algo << ',' << curve.checkpoints[i] << ','
            << csv_double(curve.mean_regret[i]) << ','
            << csv_double(curve.stderr_[i]) << ',' << curve.n_runs << '\n';
    }
}

void write_fit_report(const FitReport& report, std::ostream& out) {
    out << "log_slope=" << csv_double(report.log_slope) << '\n'
        << "log_intercept=" << csv_double(report.log_intercept) << '\n'
        << "log_r2=" << csv_double(report.log_r2) << '\n'
        << "lin_slope=" << csv_double(report.lin_slope) << '\n'
        << "lin_intercept=" << csv_double(report.lin_intercept) << '\n'
        << "lin_r2=" << csv_double(report.lin_r2) << '\n'
        << "lin_slope_stderr=" << csv_double(report.lin_slope_stderr) << '\n'
        << "log_like=" << (report.log_like ? "true" : "false") << '\n';
}

}  // namespace maoii
