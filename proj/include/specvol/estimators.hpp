#pragma once

// Spectral coefficient estimators and their cosine-series assembly.
//
// For modulation index k, the differenced data Delta Y^k_i = (Y_{i+1} - Y_i)
// f_k(i/n) is rotated into the spectral domain, Z = D Delta Y^k, and two
// windowed quadratic forms are taken:
//
//   t_hat_{k,0} = (n - n/log n)^{-1} sum_{i=[n/log n]}^{n-1} Z_i^2 / lambda_i
//   s_hat_{k,0} = sqrt(n) sum_{i=[sqrt n]+1}^{2[sqrt n]} Z_i^2
//                 - (7 pi^2 / 3) t_hat_{k,0}
//
// log() here is the binary logarithm.  The noise-variance normalizer uses the
// real value n/log2(n) while the summation start uses its integer part; the
// resulting ratio (n - [n/log2 n])/(n - n/log2 n) != 1 is intentional and kept.
//
// Series estimators:
//   tau^2_N(t)   = t_hat_{0,0} + 2 sum_{i<=N} (t_hat_{i,0} - t_hat_{0,0}) cos(i pi t)
//   sigma^2_N(t) = s_hat_{0,0} + 2 sum_{i<=N} (s_hat_{i,0} - s_hat_{0,0}) cos(i pi t)

#include <optional>
#include <string>

#include "specvol/funcspace.hpp"
#include "specvol/simulate.hpp"
#include "specvol/spectral.hpp"

namespace specvol {

inline constexpr double kBiasConstant = 7.0 * kPi * kPi / 3.0;

// Spectral windows for both estimators.
//
// tau rule:
//   standard: start = [n/log2 n], normalizer n - n/log2(n)
//   tilde:    start = [n/2],      normalizer n/2
//   custom:   caller-chosen start, normalizer n - start
// sigma band:
//   standard: ([sqrt n]+1, 2[sqrt n]), per-entry weight sqrt(n),
//             bias constant 7 pi^2/3 verbatim
//   custom:   (k_lo, hi), weight n/(hi-k_lo+1), bias constant
//             weight * (sum of lambda over the band), computed from
//             eigensum_band rather than hard-coded.
struct CutoffConfig {
    enum class TauRule { standard, tilde, custom };
    enum class SigmaBand { standard, custom };

    TauRule tau_rule = TauRule::standard;
    int custom_tau_start = 0;
    SigmaBand sigma_band = SigmaBand::standard;
    int custom_band_lo = 0;
    int custom_band_hi = 0;

    static CutoffConfig standard() { return {}; }
    static CutoffConfig tilde();
    static CutoffConfig custom_tau(int start);
    static CutoffConfig custom_band(int k_lo, int hi);

    int tau_start(int n) const;
    double tau_normalizer(int n) const;
    std::pair<int, int> band_range(int n) const;  // 1-based inclusive
    double band_weight(int n) const;
    double bias_constant(int n) const;

    std::string describe() const;
};

// f_0 = 1, f_k(x) = sqrt(2) cos(k pi x / 2); satisfies f_k^2 = 1 + cos(k pi x).
double f_k_eval(int k, double x);

// Delta Y^k: z_i = (y_{i+1} - y_i) f_k(i/n), i = 1..n-1.
DifferenceVector difference_transform(const ObservationSeries& obs, int k);

struct CoefficientEstimate {
    int k = 0;
    double value = 0.0;
    enum class Kind { tau, sigma } kind = Kind::tau;
    CutoffConfig cutoff;
};

CoefficientEstimate estimate_t_k0(const ObservationSeries& obs, int k, const CutoffConfig& cutoff);
CoefficientEstimate estimate_s_k0(const ObservationSeries& obs, int k, const CutoffConfig& cutoff);

CosineSeries estimate_tau_series(const ObservationSeries& obs, int N, const CutoffConfig& cutoff);
CosineSeries estimate_sigma_series(const ObservationSeries& obs, int N, const CutoffConfig& cutoff);

// Simpler k-wise quadratic-variation estimator of t_{k,0}: (2n)^{-1} ||Delta Y^k||^2.
// Rate-optimal but not efficient (asymptotic constant 3/n int tau_k^4 versus
// 2/n int tau_k^4 for t_hat); kept for efficiency comparisons.
double quadratic_variation_t_k0(const ObservationSeries& obs, int k);

// Oracle truncation choice: argmin over N in 0..N_max of the empirical grid
// norm (1/n) sum_i (est_N(i/n) - truth(i/n))^2, ties toward smaller N.
// Simulation-time tool; requires the true function.
int oracle_threshold(const ObservationSeries& obs, const FunctionSpec& truth,
                     CoefficientEstimate::Kind kind, int N_max, const CutoffConfig& cutoff);

// Advisory (not enforced) series-length bounds from the MISE rate conditions:
// N = o(sqrt(n)/log n) for tau, N = o(n^{1/4}) for sigma.  Returns a warning
// message when N exceeds the evaluated bound.
std::optional<std::string> advisory_series_length(CoefficientEstimate::Kind kind, int n, int N);

}  // namespace specvol
