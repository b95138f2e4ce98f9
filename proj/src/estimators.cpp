#include "specvol/estimators.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace specvol {

CutoffConfig CutoffConfig::tilde() {
    CutoffConfig c;
    c.tau_rule = TauRule::tilde;
    return c;
}

CutoffConfig CutoffConfig::custom_tau(int start) {
    if (start < 1) throw std::invalid_argument("CutoffConfig: custom tau start must be >= 1");
    CutoffConfig c;
    c.tau_rule = TauRule::custom;
    c.custom_tau_start = start;
    return c;
}

CutoffConfig CutoffConfig::custom_band(int k_lo, int hi) {
    if (k_lo < 1 || hi < k_lo)
        throw std::invalid_argument("CutoffConfig: band must satisfy 1 <= k_lo <= hi");
    CutoffConfig c;
    c.sigma_band = SigmaBand::custom;
    c.custom_band_lo = k_lo;
    c.custom_band_hi = hi;
    return c;
}

int CutoffConfig::tau_start(int n) const {
    int start = 0;
    switch (tau_rule) {
        case TauRule::standard:
            start = static_cast<int>(std::floor(n / std::log2(static_cast<double>(n))));
            break;
        case TauRule::tilde: start = n / 2; break;
        case TauRule::custom: start = custom_tau_start; break;
    }
    if (start < 1 || start >= n - 1)
        throw std::invalid_argument("CutoffConfig: degenerate tau cutoff (start outside 1..n-2)");
    return start;
}

double CutoffConfig::tau_normalizer(int n) const {
    switch (tau_rule) {
        case TauRule::standard: return n - n / std::log2(static_cast<double>(n));
        case TauRule::tilde: return n / 2.0;
        case TauRule::custom: return static_cast<double>(n - custom_tau_start);
    }
    throw std::logic_error("unknown tau rule");
}

std::pair<int, int> CutoffConfig::band_range(int n) const {
    int lo;
    int hi;
    if (sigma_band == SigmaBand::standard) {
        const int root = static_cast<int>(std::floor(std::sqrt(static_cast<double>(n))));
        lo = root + 1;
        hi = 2 * root;
    } else {
        lo = custom_band_lo;
        hi = custom_band_hi;
    }
    if (hi > n - 1 || lo < 1)
        throw std::invalid_argument("CutoffConfig: degenerate sigma band (exceeds 1..n-1)");
    return {lo, hi};
}

double CutoffConfig::band_weight(int n) const {
    const auto [lo, hi] = band_range(n);
    if (sigma_band == SigmaBand::standard) return std::sqrt(static_cast<double>(n));
    return static_cast<double>(n) / static_cast<double>(hi - lo + 1);
}

double CutoffConfig::bias_constant(int n) const {
    if (sigma_band == SigmaBand::standard) return kBiasConstant;
    const auto [lo, hi] = band_range(n);
    return band_weight(n) * eigensum_band(n, lo, hi);
}

std::string CutoffConfig::describe() const {
    std::ostringstream os;
    switch (tau_rule) {
        case TauRule::standard: os << "tau=standard([n/log2 n])"; break;
        case TauRule::tilde: os << "tau=tilde([n/2])"; break;
        case TauRule::custom: os << "tau=custom(" << custom_tau_start << ")"; break;
    }
    os << " sigma=";
    if (sigma_band == SigmaBand::standard) {
        os << "standard([sqrt n]+1..2[sqrt n])";
    } else {
        os << "custom(" << custom_band_lo << ".." << custom_band_hi << ")";
    }
    return os.str();
}

double f_k_eval(int k, double x) {
    if (k == 0) return 1.0;
    return std::sqrt(2.0) * std::cos(k * kPi * x / 2.0);
}

DifferenceVector difference_transform(const ObservationSeries& obs, int k) {
    if (k < 0) throw std::invalid_argument("difference_transform: k must be >= 0");
    const int n = obs.n;
    if (n < 2 || obs.y.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("difference_transform: malformed observation series");
    DifferenceVector d;
    d.k = k;
    d.domain = Domain::time;
    d.z.resize(static_cast<std::size_t>(n) - 1);
    for (int i = 1; i < n; ++i) {
        d.z[static_cast<std::size_t>(i) - 1] =
            (obs.y[static_cast<std::size_t>(i)] - obs.y[static_cast<std::size_t>(i) - 1]) *
            f_k_eval(k, static_cast<double>(i) / n);
    }
    return d;
}

namespace {

// One spectral pass for modulation k: Z = D Delta Y^k plus the two windowed
// sums both estimators need.
struct SpectralSums {
    double tau_value;   // t_hat_{k,0}
    double band_value;  // weighted band sum of Z_i^2
};

SpectralSums spectral_sums(const ObservationSeries& obs, int k, const CutoffConfig& cutoff,
                           const SpectralGrid& grid, bool need_band) {
    const int n = obs.n;
    DifferenceVector d = difference_transform(obs, k);
    const std::vector<double> Z = dst_apply(d.z);

    const int start = cutoff.tau_start(n);
    const double norm = cutoff.tau_normalizer(n);
    double tau_acc = 0.0;
    for (int i = start; i <= n - 1; ++i) {
        const double z = Z[static_cast<std::size_t>(i) - 1];
        tau_acc += z * z / grid.lambda(i);
    }

    double band_acc = 0.0;
    if (need_band) {
        const auto [lo, hi] = cutoff.band_range(n);
        const double w = cutoff.band_weight(n);
        for (int i = lo; i <= hi; ++i) {
            const double z = Z[static_cast<std::size_t>(i) - 1];
            band_acc += z * z;
        }
        band_acc *= w;
    }
    return {tau_acc / norm, band_acc};
}

}  // namespace

CoefficientEstimate estimate_t_k0(const ObservationSeries& obs, int k,
                                  const CutoffConfig& cutoff) {
    if (obs.n <= 16) throw std::invalid_argument("estimate_t_k0: n must exceed 16");
    const SpectralGrid grid(obs.n);
    const auto sums = spectral_sums(obs, k, cutoff, grid, /*need_band=*/false);
    return CoefficientEstimate{k, sums.tau_value, CoefficientEstimate::Kind::tau, cutoff};
}

CoefficientEstimate estimate_s_k0(const ObservationSeries& obs, int k,
                                  const CutoffConfig& cutoff) {
    if (obs.n <= 16) throw std::invalid_argument("estimate_s_k0: n must exceed 16");
    if (k < 0) throw std::invalid_argument("estimate_s_k0: k must be >= 0");
    const SpectralGrid grid(obs.n);
    const auto sums = spectral_sums(obs, k, cutoff, grid, /*need_band=*/true);
    const double value = sums.band_value - cutoff.bias_constant(obs.n) * sums.tau_value;
    return CoefficientEstimate{k, value, CoefficientEstimate::Kind::sigma, cutoff};
}

namespace {

// t_hat or s_hat for k = 0..N sharing one eigenvalue grid.
std::vector<double> coefficient_sweep(const ObservationSeries& obs, int N,
                                      const CutoffConfig& cutoff,
                                      CoefficientEstimate::Kind kind) {
    if (obs.n <= 16) throw std::invalid_argument("coefficient sweep: n must exceed 16");
    if (N < 0) throw std::invalid_argument("coefficient sweep: N must be >= 0");
    const SpectralGrid grid(obs.n);
    const bool sigma = kind == CoefficientEstimate::Kind::sigma;
    const double bias = sigma ? cutoff.bias_constant(obs.n) : 0.0;
    std::vector<double> out(static_cast<std::size_t>(N) + 1);
    for (int k = 0; k <= N; ++k) {
        const auto sums = spectral_sums(obs, k, cutoff, grid, sigma);
        out[static_cast<std::size_t>(k)] =
            sigma ? sums.band_value - bias * sums.tau_value : sums.tau_value;
    }
    return out;
}

CosineSeries assemble_series(const std::vector<double>& hat) {
    std::vector<double> theta(hat.size());
    theta[0] = hat[0];
    for (std::size_t i = 1; i < hat.size(); ++i) theta[i] = hat[i] - hat[0];
    return CosineSeries(std::move(theta));
}

}  // namespace

CosineSeries estimate_tau_series(const ObservationSeries& obs, int N, const CutoffConfig& cutoff) {
    return assemble_series(coefficient_sweep(obs, N, cutoff, CoefficientEstimate::Kind::tau));
}

CosineSeries estimate_sigma_series(const ObservationSeries& obs, int N,
                                   const CutoffConfig& cutoff) {
    return assemble_series(coefficient_sweep(obs, N, cutoff, CoefficientEstimate::Kind::sigma));
}

double quadratic_variation_t_k0(const ObservationSeries& obs, int k) {
    const DifferenceVector d = difference_transform(obs, k);
    double acc = 0.0;
    for (double z : d.z) acc += z * z;
    return acc / (2.0 * obs.n);
}

int oracle_threshold(const ObservationSeries& obs, const FunctionSpec& truth,
                     CoefficientEstimate::Kind kind, int N_max, const CutoffConfig& cutoff) {
    if (N_max < 0) throw std::invalid_argument("oracle_threshold: N_max must be >= 0");
    const auto hat = coefficient_sweep(obs, N_max, cutoff, kind);
    const int n = obs.n;

    std::vector<double> truth_at(static_cast<std::size_t>(n));
    std::vector<double> est(static_cast<std::size_t>(n), hat[0]);
    for (int i = 1; i <= n; ++i)
        truth_at[static_cast<std::size_t>(i) - 1] = truth(static_cast<double>(i) / n);

    int best_N = 0;
    double best_err = std::numeric_limits<double>::infinity();
    for (int N = 0; N <= N_max; ++N) {
        if (N >= 1) {
            const double theta = hat[static_cast<std::size_t>(N)] - hat[0];
            for (int i = 1; i <= n; ++i) {
                est[static_cast<std::size_t>(i) - 1] +=
                    2.0 * theta * std::cos(N * kPi * static_cast<double>(i) / n);
            }
        }
        double err = 0.0;
        for (int i = 0; i < n; ++i) {
            const double e = est[static_cast<std::size_t>(i)] - truth_at[static_cast<std::size_t>(i)];
            err += e * e;
        }
        err /= n;
        if (err < best_err) {
            best_err = err;
            best_N = N;
        }
    }
    return best_N;
}

std::optional<std::string> advisory_series_length(CoefficientEstimate::Kind kind, int n, int N) {
    std::ostringstream os;
    if (kind == CoefficientEstimate::Kind::tau) {
        const double bound = std::sqrt(static_cast<double>(n)) / std::log2(static_cast<double>(n));
        if (N > bound) {
            os << "advisory: N=" << N << " exceeds sqrt(n)/log2(n)=" << bound
               << "; the tau^2 MISE rate assumes N = o(sqrt(n)/log n)";
            return os.str();
        }
    } else {
        const double bound = std::pow(static_cast<double>(n), 0.25);
        if (N > bound) {
            os << "advisory: N=" << N << " exceeds n^{1/4}=" << bound
               << "; the sigma^2 MISE rate assumes N = o(n^{1/4})";
            return os.str();
        }
    }
    return std::nullopt;
}

}  // namespace specvol
