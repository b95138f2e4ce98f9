#include "specvol/spectral.hpp"

#include <cmath>
#include <complex>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include <fftw3.h>

namespace specvol {

namespace {

constexpr int kDenseCap = 512;  // dense matrices are oracle-only

// FFTW planning is not thread-safe; executing a cached plan on fresh arrays is.
// Plans are created with FFTW_UNALIGNED so the new-array execute interface
// accepts ordinary heap buffers.
class RealFftPlans {
public:
    fftw_plan get(std::size_t length) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = plans_.find(length);
        if (it != plans_.end()) return it->second;
        std::vector<double> in(length);
        std::vector<std::complex<double>> out(length / 2 + 1);
        fftw_plan p = fftw_plan_dft_r2c_1d(static_cast<int>(length), in.data(),
                                           reinterpret_cast<fftw_complex*>(out.data()),
                                           FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (p == nullptr) throw std::runtime_error("dst_apply: FFTW planning failed");
        plans_.emplace(length, p);
        return p;
    }

    static RealFftPlans& instance() {
        static RealFftPlans cache;
        return cache;
    }

private:
    std::mutex mutex_;
    std::unordered_map<std::size_t, fftw_plan> plans_;
};

}  // namespace

SpectralGrid::SpectralGrid(int n) : n_(n) {
    if (n < 2) throw std::invalid_argument("SpectralGrid: n must be >= 2");
    lambdas_.resize(static_cast<std::size_t>(n) - 1);
    for (int i = 1; i < n; ++i) {
        const double s = std::sin(i * kPi / (2.0 * n));
        lambdas_[static_cast<std::size_t>(i) - 1] = 4.0 * s * s;
    }
}

double SpectralGrid::lambda(int i) const {
    if (i < 1 || i > n_ - 1) throw std::invalid_argument("SpectralGrid: index out of 1..n-1");
    return lambdas_[static_cast<std::size_t>(i) - 1];
}

std::vector<double> dst_apply(std::span<const double> v) {
    const std::size_t m = v.size();
    if (m == 0) throw std::invalid_argument("dst_apply: empty vector");
    const std::size_t n = m + 1;
    const std::size_t ext = 2 * n;

    std::vector<double> in(ext, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        in[j + 1] = v[j];
        in[ext - 1 - j] = -v[j];
    }
    std::vector<std::complex<double>> out(n + 1);

    fftw_plan plan = RealFftPlans::instance().get(ext);
    fftw_execute_dft_r2c(plan, in.data(), reinterpret_cast<fftw_complex*>(out.data()));

    const double scale = 1.0 / std::sqrt(2.0 * static_cast<double>(n));
    std::vector<double> result(m);
    for (std::size_t i = 1; i <= m; ++i) {
        result[i - 1] = -out[i].imag() * scale;
    }
    return result;
}

Eigen::MatrixXd dense_dst_matrix(int n) {
    if (n < 2) throw std::invalid_argument("dense_dst_matrix: n must be >= 2");
    if (n > kDenseCap) throw std::invalid_argument("dense_dst_matrix: n capped at 512");
    const int m = n - 1;
    Eigen::MatrixXd D(m, m);
    const double scale = std::sqrt(2.0 / n);
    for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= m; ++j) {
            D(i - 1, j - 1) = scale * std::sin(static_cast<double>(i) * j * kPi / n);
        }
    }
    return D;
}

Eigen::MatrixXd build_K(int n) {
    if (n <= 2) throw std::invalid_argument("build_K: n must exceed 2");
    if (n > kDenseCap) throw std::invalid_argument("build_K: n capped at 512");
    const int m = n - 1;
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        K(i, i) = 2.0;
        if (i + 1 < m) {
            K(i, i + 1) = -1.0;
            K(i + 1, i) = -1.0;
        }
    }
    return K;
}

double diagonalization_residual(int n) {
    const Eigen::MatrixXd D = dense_dst_matrix(n);
    const Eigen::MatrixXd K = build_K(n);
    const SpectralGrid grid(n);
    Eigen::VectorXd lam(n - 1);
    for (int i = 1; i < n; ++i) lam(i - 1) = grid.lambda(i);
    const Eigen::MatrixXd resid = D * lam.asDiagonal() * D - K;
    return resid.cwiseAbs().maxCoeff();
}

double weighted_quadratic_form(std::span<const double> z_spectral,
                               std::span<const double> weights) {
    if (z_spectral.size() != weights.size())
        throw std::invalid_argument("weighted_quadratic_form: length mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < z_spectral.size(); ++i) {
        acc += weights[i] * z_spectral[i] * z_spectral[i];
    }
    return acc;
}

double weighted_quadratic_form(const DifferenceVector& z, std::span<const double> weights) {
    if (z.domain != Domain::spectral)
        throw std::invalid_argument("weighted_quadratic_form: vector must be in spectral domain");
    return weighted_quadratic_form(std::span<const double>(z.z), weights);
}

double eigensum_band(int n, int lo, int hi) {
    if (lo < 1 || hi < lo || hi > n - 1)
        throw std::invalid_argument("eigensum_band: band must satisfy 1 <= lo <= hi <= n-1");
    long double acc = 0.0L;
    for (int i = lo; i <= hi; ++i) {
        const long double s = std::sin(static_cast<long double>(i) * kPi / (2.0L * n));
        acc += 4.0L * s * s;
    }
    return static_cast<double>(acc);
}

double aliasing_identity_residual(const FunctionSpec& sigma2, int k, int n) {
    if (k < 0) throw std::invalid_argument("aliasing_identity_residual: k must be >= 0");
    if (n < 3) throw std::invalid_argument("aliasing_identity_residual: n too small");
    if (n > kDenseCap) throw std::invalid_argument("aliasing_identity_residual: n capped at 512");

    const int trunc = 8 * n;
    // sigma_k^2 = sigma^2 * f_k^2 with f_k^2(x) = 1 + cos(k pi x)  (f_0 = 1)
    const auto sigk2 = [&sigma2, k](double x) {
        const double fk2 = (k == 0) ? 1.0 : 1.0 + std::cos(k * kPi * x);
        return sigma2(x) * fk2;
    };
    const auto base_cuts = sigma2.breakpoints();
    std::vector<double> coeffs(static_cast<std::size_t>(trunc) + 1);
    for (int p = 0; p <= trunc; ++p) {
        std::vector<double> cuts = base_cuts;
        for (int j = 1; j < 2 * p; ++j) cuts.push_back(static_cast<double>(j) / (2.0 * p));
        coeffs[static_cast<std::size_t>(p)] =
            integrate([&sigk2, p](double x) { return sigk2(x) * std::cos(p * kPi * x); }, 0.0, 1.0,
                      1e-11, cuts);
    }
    const CosineSeries s(std::move(coeffs));

    const int m = n - 1;
    const Eigen::MatrixXd D = dense_dst_matrix(n);
    Eigen::VectorXd diag(m);
    for (int i = 1; i <= m; ++i) diag(i - 1) = sigk2(static_cast<double>(i) / n);
    const Eigen::MatrixXd lhs = D * diag.asDiagonal() * D;

    double resid = 0.0;
    for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= m; ++j) {
            const double rhs = aliased_sum(s, i - j, n, trunc) - aliased_sum(s, i + j, n, trunc);
            resid = std::max(resid, std::abs(lhs(i - 1, j - 1) - rhs));
        }
    }
    return resid;
}

}  // namespace specvol
