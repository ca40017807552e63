#include "maoii/params.hpp"

#include <cmath>
#include <string>

namespace maoii {

SourceParams make_params(int N, double r, double rho, double lambda) {
    if (N < 2) throw OutOfRange("N must be >= 2, got " + std::to_string(N));
    const double r_max = 1.0 / (N - 1);
    if (!(r > 0.0) || !(r <= r_max))
        throw OutOfRange("r must be in (0, 1/(N-1)] = (0, " + std::to_string(r_max) +
                         "], got " + std::to_string(r));
    if (!(rho > 0.0) || !(rho <= 1.0))
        throw OutOfRange("rho must be in (0, 1], got " + std::to_string(rho));
    if (!(lambda >= 0.0))
        throw OutOfRange("lambda must be >= 0, got " + std::to_string(lambda));

    SourceParams params;
    params.N = N;
    params.r = r;
    params.p = 1.0 - (N - 1) * r;
    params.rho = rho;
    params.lambda = lambda;
    params.regime = (1.0 - r >= std::abs(params.p - r)) ? Regime::Smooth
                                                        : Regime::Oscillating;
    params.volatile_source = (N - 1) * r >= 4.0 * params.p;
    return params;
}

double belief(const SourceParams& params, int k) {
    const double N = params.N;
    return 1.0 / N + (N - 1.0) / N * std::pow(params.p - params.r, k);
}

double age_by_sum(const SourceParams& params, int j) {
    // Kahan summation; in the oscillating regime consecutive terms swing
    // through opposite-signed belief deviations.
    double sum = 0.0, comp = 0.0;
    const double one_minus_p = 1.0 - params.p;
    const double one_minus_r = 1.0 - params.r;
    for (int k = 1; k <= j; ++k) {
        const double term =
            k * one_minus_p * std::pow(one_minus_r, k - 1) * belief(params, j - k);
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

double age_closed(const SourceParams& params, int j) {
    const double Nr = params.N * params.r;
    return (params.N - 1.0) / Nr + std::pow(params.p - params.r, j + 1) / Nr -
           std::pow(1.0 - params.r, j + 1) / params.r;
}

double age_limit(const SourceParams& params) {
    return (params.N - 1.0) / (params.N * params.r);
}

AgeTable::AgeTable(const SourceParams& params, double tail_tol) : tail_tol_(tail_tol) {
    if (!(tail_tol > 0.0)) throw OutOfRange("tail_tol must be > 0");
    limit_ = age_limit(params);
    const double Nr = params.N * params.r;
    const double q = std::abs(params.p - params.r);
    const double s = 1.0 - params.r;
    // smallest j with (1-r)^{j+1}/r + |p-r|^{j+1}/(Nr) < tail_tol
    auto envelope = [&](int jj) {
        return std::pow(s, jj + 1) / params.r + std::pow(q, jj + 1) / Nr;
    };
    // each addend < tol/2 suffices; start from that analytic estimate
    int j = 0;
    if (s > 0.0 && s < 1.0)
        j = std::max(j, static_cast<int>(std::log(0.5 * tail_tol * params.r) /
                                         std::log(s)));
    if (q > 0.0 && q < 1.0)
        j = std::max(j, static_cast<int>(std::log(0.5 * tail_tol * Nr) / std::log(q)));
    while (j > 0 && envelope(j - 1) < tail_tol) --j;
    while (envelope(j) >= tail_tol) ++j;
    values_.resize(j + 1);
    for (int i = 0; i <= j; ++i) values_[i] = age_closed(params, i);
    values_[0] = 0.0;  // exact: (p-r) = 1 - Nr makes the terms cancel
}

}  // namespace maoii
