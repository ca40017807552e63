#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "maoii/csv.hpp"
#include "maoii/regret.hpp"

namespace {

using namespace maoii;

constexpr int kExitInvalid = 2;
constexpr int kExitOracleMismatch = 3;
constexpr int kExitIo = 4;

struct CommonOpts {
    std::uint64_t seed = 1;
    std::string out;
    int runs = 200;
    unsigned threads = 1;
};

struct SourceOpts {
    int N = 5;
    double r = 0.1;
    double rho = 0.5;
    double lambda = 8.0;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->set_config("--config", "", "TOML config file (flags override)");
    cmd->add_option("--seed", c.seed, "base RNG seed")->capture_default_str();
    cmd->add_option("--out", c.out, "output file (default: stdout)");
    cmd->add_option("--runs", c.runs, "Monte Carlo run count")
        ->capture_default_str();
    cmd->add_option("--threads", c.threads, "worker threads")
        ->capture_default_str();
}

void add_source(CLI::App* cmd, SourceOpts& s) {
    cmd->add_option("-N,--states", s.N, "source state count")
        ->capture_default_str();
    cmd->add_option("-r,--rate", s.r, "per-target transition probability")
        ->capture_default_str();
    cmd->add_option("--rho", s.rho, "channel success probability")
        ->capture_default_str();
    cmd->add_option("--lambda", s.lambda, "per-transmission cost")
        ->capture_default_str();
}

/// Output sink: --out path or stdout. Data goes here; progress to stderr.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw std::ios_base::failure("cannot open " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
    void finish() {
        if (file_.is_open()) {
            file_.flush();
            if (!file_) throw std::ios_base::failure("write failed");
        }
    }

private:
    std::ofstream file_;
};

void echo_config(const std::string& command,
                 const std::vector<std::pair<std::string, std::string>>& kv) {
    std::cerr << "resolved_config.command=" << command << '\n';
    for (const auto& [k, v] : kv) std::cerr << "resolved_config." << k << '=' << v << '\n';
}

std::string threshold_str(const ThresholdPolicy& thr) {
    return thr.is_finite() ? std::to_string(thr.index()) : "inf";
}

int cmd_solve(const CommonOpts& common, const SourceOpts& src, int n_max) {
    echo_config("solve", {{"N", std::to_string(src.N)},
                          {"r", csv_double(src.r)},
                          {"rho", csv_double(src.rho)},
                          {"lambda", csv_double(src.lambda)},
                          {"n_max", std::to_string(n_max)},
                          {"seed", std::to_string(common.seed)}});
    const SourceParams params = make_params(src.N, src.r, src.rho, src.lambda);
    const ThresholdPolicy thr = optimal_threshold(params);
    const ThresholdPolicy oracle = brute_force_threshold(params, n_max);
    const bool matched = thr == oracle;

    Sink sink(common.out);
    auto& out = sink.stream();
    out << "threshold=" << threshold_str(thr) << '\n';
    out << "lambda_a0="
        << csv_double(params.smooth() ? lambda_n(params, 0) : lambda_2n(params, 0))
        << '\n';
    out << "lambda_limit=" << csv_double(lambda_limit(params)) << '\n';
    out << "c_star=" << csv_double(avg_cost(params, thr)) << '\n';
    out << "oracle_threshold=" << threshold_str(oracle) << '\n';
    out << "oracle_matched=" << (matched ? "true" : "false") << '\n';
    sink.finish();
    return matched ? 0 : kExitOracleMismatch;
}

int cmd_steady(const CommonOpts& common, const SourceOpts& src, int n_max) {
    echo_config("steady", {{"N", std::to_string(src.N)},
                           {"r", csv_double(src.r)},
                           {"rho", csv_double(src.rho)},
                           {"lambda", csv_double(src.lambda)},
                           {"n_max", std::to_string(n_max)}});
    const SourceParams params = make_params(src.N, src.r, src.rho, src.lambda);

    Sink sink(common.out);
    auto& out = sink.stream();
    out << "n,avg_age,avg_active,avg_cost\n";
    const int step = params.smooth() ? 1 : 2;  // only even thresholds recur
    for (int n = 0; n <= n_max; n += step) {
        const SteadyAverages avg = steady_averages(params, ThresholdPolicy::finite(n));
        out << n << ',' << csv_double(avg.avg_age) << ','
            << csv_double(avg.avg_active) << ',' << csv_double(avg.avg_cost)
            << '\n';
    }
    const SteadyAverages avg = steady_averages(params, ThresholdPolicy::infinite());
    out << "inf," << csv_double(avg.avg_age) << ',' << csv_double(avg.avg_active)
        << ',' << csv_double(avg.avg_cost) << '\n';
    sink.finish();
    return 0;
}

int cmd_simulate(const CommonOpts& common, const SourceOpts& src, long long T,
                 const std::string& threshold, int stride) {
    echo_config("simulate", {{"N", std::to_string(src.N)},
                             {"r", csv_double(src.r)},
                             {"rho", csv_double(src.rho)},
                             {"lambda", csv_double(src.lambda)},
                             {"T", std::to_string(T)},
                             {"threshold", threshold},
                             {"stride", std::to_string(stride)},
                             {"seed", std::to_string(common.seed)}});
    const SourceParams params = make_params(src.N, src.r, src.rho, src.lambda);
    ThresholdPolicy thr = ThresholdPolicy::infinite();
    if (threshold != "inf") {
        const int n = std::stoi(threshold);
        if (n < 0) throw OutOfRange("threshold must be >= 0 or 'inf'");
        thr = ThresholdPolicy::finite(n);
    }
    FixedThresholdPolicy policy(params, thr);
    SimOptions options;
    options.record_stride = stride;
    const Trajectory traj = simulate(params, policy, T, common.seed, options);

    Sink sink(common.out);
    write_trajectory_csv(traj, sink.stream());
    sink.finish();
    const SteadyAverages avg = empirical_cost(traj);
    std::cerr << "avg_age=" << avg.avg_age << " avg_active=" << avg.avg_active
              << " avg_cost=" << avg.avg_cost << '\n';
    return 0;
}

int cmd_learn(const CommonOpts& common, const SourceOpts& src, long long T,
              const std::string& algo) {
    echo_config("learn", {{"N", std::to_string(src.N)},
                          {"r", csv_double(src.r)},
                          {"rho", csv_double(src.rho)},
                          {"lambda", csv_double(src.lambda)},
                          {"T", std::to_string(T)},
                          {"algo", algo},
                          {"seed", std::to_string(common.seed)}});
    LearnerOptions options;
    options.record_costs = true;
    const LearnerTrace trace =
        algo == "greedy"
            ? run_greedy(src.r, src.N, src.rho, src.lambda, T, common.seed, options)
            : run_proposed(src.r, src.N, src.rho, src.lambda, T, common.seed,
                           options);

    Sink sink(common.out);
    write_learner_csv(trace, sink.stream());
    sink.finish();
    std::cerr << "final_phase=" << phase_name(trace.final_phase)
              << " final_threshold=" << threshold_str(trace.final_policy);
    if (trace.T0) std::cerr << " T0=" << *trace.T0;
    if (trace.T1) std::cerr << " T1=" << *trace.T1;
    std::cerr << '\n';
    return 0;
}

int cmd_regret(const CommonOpts& common, const SourceOpts& src,
               std::vector<long long> checkpoints, const std::string& algo) {
    std::ostringstream cps;
    for (std::size_t i = 0; i < checkpoints.size(); ++i)
        cps << (i ? "," : "") << checkpoints[i];
    echo_config("regret", {{"N", std::to_string(src.N)},
                           {"r", csv_double(src.r)},
                           {"rho", csv_double(src.rho)},
                           {"lambda", csv_double(src.lambda)},
                           {"checkpoints", cps.str()},
                           {"algo", algo},
                           {"runs", std::to_string(common.runs)},
                           {"threads", std::to_string(common.threads)},
                           {"seed", std::to_string(common.seed)}});

    std::vector<RegretCurve> curves;
    if (algo == "proposed" || algo == "both") {
        std::cerr << "running proposed curve...\n";
        curves.push_back(regret_curve(src.r, src.N, src.rho, src.lambda,
                                      checkpoints, common.runs, common.seed,
                                      Algo::Proposed, common.threads));
    }
    if (algo == "greedy" || algo == "both") {
        std::cerr << "running greedy curve...\n";
        curves.push_back(regret_curve(src.r, src.N, src.rho, src.lambda,
                                      checkpoints, common.runs, common.seed,
                                      Algo::Greedy, common.threads));
    }
    if (curves.empty()) throw OutOfRange("algo must be proposed, greedy, or both");

    Sink sink(common.out);
    auto& out = sink.stream();
    for (std::size_t i = 0; i < curves.size(); ++i)
        write_regret_csv(curves[i], out, i == 0);
    sink.finish();

    // fit diagnostics for each curve; the greedy linear slope, when
    // available, anchors the proposed curve's log-like classification
    std::optional<double> greedy_slope;
    for (const auto& curve : curves) {
        if (curve.algo != "greedy") continue;
        try {
            greedy_slope = log_linearity_check(curve).lin_slope;
        } catch (const InsufficientCheckpoints&) {
        }
    }
    std::ostream* fit_out = &std::cout;
    std::ofstream fit_file;
    if (!common.out.empty()) {
        fit_file.open(common.out + ".fit", std::ios::binary);
        if (!fit_file) throw std::ios_base::failure("cannot open fit report file");
        fit_out = &fit_file;
    } else {
        std::cout << '\n';
    }
    for (const auto& curve : curves) {
        *fit_out << "[" << curve.algo << "]\n";
        try {
            const FitReport report = log_linearity_check(
                curve, curve.algo == "proposed" ? greedy_slope : std::nullopt);
            write_fit_report(report, *fit_out);
        } catch (const InsufficientCheckpoints& e) {
            *fit_out << "error=" << e.what() << '\n';
        }
    }
    if (fit_file.is_open() && !fit_file) throw std::ios_base::failure("write failed");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Threshold scheduling for remote state estimation: exact "
                 "policies, online learning, and regret benchmarks"};
    app.require_subcommand(1);

    CommonOpts common;
    SourceOpts src;
    int n_max = 200;
    long long T = 100000;
    std::string threshold = "0";
    int stride = 1;
    std::string algo_learn = "proposed";
    std::string algo_regret = "both";
    std::vector<long long> checkpoints = {100,   300,   1000,  3000,
                                          10000, 30000, 100000};

    auto* solve = app.add_subcommand("solve", "optimal threshold + cross-check");
    add_common(solve, common);
    add_source(solve, src);
    solve->add_option("--n-max", n_max, "brute-force search cap")
        ->capture_default_str();

    auto* steady = app.add_subcommand("steady", "closed-form averages sweep");
    add_common(steady, common);
    add_source(steady, src);
    steady->add_option("--n-max", n_max, "largest threshold in the sweep")
        ->capture_default_str();

    auto* simulate = app.add_subcommand("simulate", "fixed-threshold trajectory");
    add_common(simulate, common);
    add_source(simulate, src);
    simulate->add_option("-T,--horizon", T, "slots")->capture_default_str();
    simulate->add_option("--threshold", threshold, "threshold index or 'inf'")
        ->capture_default_str();
    simulate->add_option("--stride", stride, "record every k-th slot")
        ->capture_default_str();

    auto* learn = app.add_subcommand("learn", "single online-learning run");
    add_common(learn, common);
    add_source(learn, src);
    learn->add_option("-T,--horizon", T, "slots")->capture_default_str();
    learn->add_option("--algo", algo_learn, "proposed | greedy")
        ->check(CLI::IsMember({"proposed", "greedy"}))
        ->capture_default_str();

    auto* regret = app.add_subcommand("regret", "Monte Carlo regret curves");
    add_common(regret, common);
    add_source(regret, src);
    regret->add_option("--checkpoints", checkpoints, "horizon grid")
        ->delimiter(',')
        ->capture_default_str();
    regret->add_option("--algo", algo_regret, "proposed | greedy | both")
        ->check(CLI::IsMember({"proposed", "greedy", "both"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalid;
    }

    try {
        if (solve->parsed()) return cmd_solve(common, src, n_max);
        if (steady->parsed()) return cmd_steady(common, src, n_max);
        if (simulate->parsed())
            return cmd_simulate(common, src, T, threshold, stride);
        if (learn->parsed()) return cmd_learn(common, src, T, algo_learn);
        if (regret->parsed())
            return cmd_regret(common, src, checkpoints, algo_regret);
    } catch (const std::ios_base::failure& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid parameters: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid parameters: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
