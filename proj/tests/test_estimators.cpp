#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "specvol/estimators.hpp"
#include "specvol/simulate.hpp"
#include "specvol/spectral.hpp"

using namespace specvol;

namespace {

ObservationSeries make_obs(std::vector<double> y) {
    ObservationSeries obs;
    obs.n = static_cast<int>(y.size());
    obs.y = std::move(y);
    return obs;
}

// dense covariance of Delta Y^k under the tBM model with Gaussian noise
Eigen::MatrixXd dense_cov(const FunctionSpec& sigma2, const FunctionSpec& tau2, int k, int n) {
    const auto vars = tbm_increment_variances(sigma2, n);
    const int m = n - 1;
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(m, m);
    auto tau2_at = [&tau2, n](int i) { return tau2(static_cast<double>(i) / n); };
    for (int i = 1; i <= m; ++i) {
        C(i - 1, i - 1) = vars[static_cast<std::size_t>(i)]  // int over [i/n,(i+1)/n]
                          + tau2_at(i + 1) + tau2_at(i);
        if (i < m) {
            C(i - 1, i) = -tau2_at(i + 1);
            C(i, i - 1) = -tau2_at(i + 1);
        }
    }
    Eigen::VectorXd fk(m);
    for (int i = 1; i <= m; ++i) fk(i - 1) = f_k_eval(k, static_cast<double>(i) / n);
    return fk.asDiagonal() * C * fk.asDiagonal();
}

// dense weight matrices of the two quadratic forms
Eigen::MatrixXd dense_W_tau(int n, const CutoffConfig& cut) {
    const Eigen::MatrixXd D = dense_dst_matrix(n);
    const SpectralGrid grid(n);
    Eigen::VectorXd j = Eigen::VectorXd::Zero(n - 1);
    const int start = cut.tau_start(n);
    const double norm = cut.tau_normalizer(n);
    for (int i = start; i <= n - 1; ++i) j(i - 1) = 1.0 / (norm * grid.lambda(i));
    return D * j.asDiagonal() * D;
}

Eigen::MatrixXd dense_W_band(int n, const CutoffConfig& cut) {
    const Eigen::MatrixXd D = dense_dst_matrix(n);
    Eigen::VectorXd j = Eigen::VectorXd::Zero(n - 1);
    const auto [lo, hi] = cut.band_range(n);
    for (int i = lo; i <= hi; ++i) j(i - 1) = cut.band_weight(n);
    return D * j.asDiagonal() * D;
}

}  // namespace

TEST_CASE("f_k_eval") {
    CHECK(f_k_eval(0, 0.0) == 1.0);
    CHECK(f_k_eval(0, 0.73) == 1.0);
    CHECK(f_k_eval(1, 0.0) == doctest::Approx(std::sqrt(2.0)));
    // f_k^2 = 1 + cos(k pi x)
    for (int k = 1; k <= 8; ++k) {
        for (int i = 0; i <= 100; ++i) {
            const double x = i / 100.0;
            const double lhs = f_k_eval(k, x) * f_k_eval(k, x);
            CHECK(std::abs(lhs - (1.0 + std::cos(k * kPi * x))) <= 1e-12);
        }
    }
}

TEST_CASE("difference_transform") {
    SUBCASE("constant series differences to zero") {
        const auto d = difference_transform(make_obs(std::vector<double>(20, 3.0)), 0);
        for (double v : d.z) CHECK(v == 0.0);
        CHECK(d.domain == Domain::time);
    }
    SUBCASE("unit spike") {
        std::vector<double> y(20, 0.0);
        y[1] = 1.0;
        const auto d = difference_transform(make_obs(y), 0);
        CHECK(d.z[0] == doctest::Approx(1.0));
        CHECK(d.z[1] == doctest::Approx(-1.0));
        for (std::size_t i = 2; i < d.z.size(); ++i) CHECK(d.z[i] == 0.0);
    }
    SUBCASE("loop oracle at k = 2, n = 10") {
        std::mt19937_64 rng(5);
        std::vector<double> y(10);
        for (auto& v : y) v = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const auto d = difference_transform(make_obs(y), 2);
        for (int i = 1; i <= 9; ++i) {
            const double expected = (y[static_cast<std::size_t>(i)] - y[static_cast<std::size_t>(i) - 1]) *
                                    std::sqrt(2.0) * std::cos(2.0 * kPi * (i / 10.0) / 2.0);
            CHECK(std::abs(d.z[static_cast<std::size_t>(i) - 1] - expected) <= 1e-14);
        }
    }
}

TEST_CASE("zero observations estimate to zero") {
    const auto obs = make_obs(std::vector<double>(64, 0.0));
    const CutoffConfig cut;
    CHECK(estimate_t_k0(obs, 0, cut).value == 0.0);
    CHECK(estimate_s_k0(obs, 0, cut).value == 0.0);
    CHECK(estimate_s_k0(obs, 3, cut).value == 0.0);
}

TEST_CASE("spectral sums equal the dense matrix forms at n = 256") {
    const int n = 256;
    const CutoffConfig cut;
    const auto obs = observe(Model::tbm, FunctionSpec::cosine(CosineSeries({2.0, 0.0, 0.5})),
                             FunctionSpec::constant(0.01), NoiseLaw{}, n, 31);
    for (int k : {0, 1, 3}) {
        const auto d = difference_transform(obs, k);
        Eigen::Map<const Eigen::VectorXd> dy(d.z.data(), n - 1);

        const double dense_tau = dy.transpose() * dense_W_tau(n, cut) * dy;
        const double spectral_tau = estimate_t_k0(obs, k, cut).value;
        CHECK(std::abs(dense_tau - spectral_tau) <= 1e-12 * std::max(1.0, std::abs(dense_tau)));

        const double dense_band = dy.transpose() * dense_W_band(n, cut) * dy;
        const double spectral_s = estimate_s_k0(obs, k, cut).value;
        const double dense_s = dense_band - cut.bias_constant(n) * dense_tau;
        CHECK(std::abs(dense_s - spectral_s) <= 1e-12 * std::max(1.0, std::abs(dense_band)));
    }
}

TEST_CASE("estimator moments match the exact Gaussian quadratic-form law") {
    // E = tr(W C), Var = 2 tr(W C W C) for Gaussian data; checks simulator and
    // estimator jointly against closed-form moments at n = 256
    const int n = 256;
    const int reps = 3000;
    const CutoffConfig cut;
    const auto sigma2 = FunctionSpec::cosine(CosineSeries({2.0, 0.0, 0.5}));
    const auto tau2 = FunctionSpec::constant(0.01);

    for (int k : {0, 2}) {
        const Eigen::MatrixXd C = dense_cov(sigma2, tau2, k, n);
        const Eigen::MatrixXd Wt = dense_W_tau(n, cut);
        const Eigen::MatrixXd Ws = dense_W_band(n, cut) - cut.bias_constant(n) * Wt;

        const Eigen::MatrixXd WtC = Wt * C;
        const Eigen::MatrixXd WsC = Ws * C;
        const double Et = WtC.trace();
        const double Vt = 2.0 * (WtC * WtC).trace();
        const double Es = WsC.trace();
        const double Vs = 2.0 * (WsC * WsC).trace();

        const ObservationSampler sampler(Model::tbm, sigma2, tau2, NoiseLaw{}, n, 555);
        double st = 0.0, st2 = 0.0, ss = 0.0, ss2 = 0.0;
        for (int r = 0; r < reps; ++r) {
            const auto obs = sampler.draw(static_cast<std::uint64_t>(r));
            const double t = estimate_t_k0(obs, k, cut).value;
            const double s = estimate_s_k0(obs, k, cut).value;
            st += t;
            st2 += t * t;
            ss += s;
            ss2 += s * s;
        }
        const double mt = st / reps;
        const double vt = st2 / reps - mt * mt;
        const double ms = ss / reps;
        const double vs = ss2 / reps - ms * ms;

        CHECK(std::abs(mt - Et) <= 4.0 * std::sqrt(Vt / reps));
        CHECK(std::abs(ms - Es) <= 4.0 * std::sqrt(Vs / reps));
        CHECK(std::abs(vt - Vt) <= 5.0 * Vt * std::sqrt(2.0 / reps));
        CHECK(std::abs(vs - Vs) <= 5.0 * Vs * std::sqrt(2.0 / reps));
    }
}

TEST_CASE("quadratic scaling of the estimators") {
    const int n = 128;
    const auto obs = observe(Model::tbm, FunctionSpec::constant(1.0),
                             FunctionSpec::constant(0.01), NoiseLaw{}, n, 17);
    const CutoffConfig cut;
    SUBCASE("power-of-two scaling is bit exact") {
        auto scaled = obs;
        for (auto& v : scaled.y) v *= 2.0;
        CHECK(estimate_t_k0(scaled, 1, cut).value == 4.0 * estimate_t_k0(obs, 1, cut).value);
        CHECK(estimate_s_k0(scaled, 1, cut).value == 4.0 * estimate_s_k0(obs, 1, cut).value);
    }
    SUBCASE("general scaling to rounding accuracy") {
        auto scaled = obs;
        for (auto& v : scaled.y) v *= 3.0;
        const double a = estimate_t_k0(scaled, 0, cut).value;
        const double b = 9.0 * estimate_t_k0(obs, 0, cut).value;
        CHECK(std::abs(a - b) <= 1e-12 * std::abs(b));
    }
}

TEST_CASE("coefficient target identity") {
    // t_{k,0} = int tau^2 f_k^2 = t_{0,0} + 2^{-1/2} int tau^2 psi_k
    const auto tau2 = [](double x) { return 1e-2 * (1.0 + 0.5 * std::cos(kPi * x)); };
    for (int k : {1, 2, 5}) {
        auto simpson = [](const std::function<double(double)>& g) {
            const int panels = 20000;
            double acc = g(0.0) + g(1.0);
            for (int i = 1; i < panels; ++i)
                acc += (i % 2 == 0 ? 2.0 : 4.0) * g(static_cast<double>(i) / panels);
            return acc / (3.0 * panels);
        };
        const double lhs = simpson([&tau2, k](double x) {
            return tau2(x) * f_k_eval(k, x) * f_k_eval(k, x);
        });
        const double t00 = simpson(tau2);
        const double psi_k = simpson([&tau2, k](double x) {
            return tau2(x) * std::sqrt(2.0) * std::cos(k * kPi * x);
        });
        CHECK(std::abs(lhs - (t00 + psi_k / std::sqrt(2.0))) <= 1e-10);
    }
}

TEST_CASE("series assembly") {
    const auto obs = observe(Model::tbm, FunctionSpec::constant(1.0),
                             FunctionSpec::constant(0.01), NoiseLaw{}, 512, 64);
    const CutoffConfig cut;
    SUBCASE("N = 0 is the constant estimator") {
        const auto s = estimate_tau_series(obs, 0, cut);
        CHECK(s.max_index() == 0);
        CHECK(s(0.7) == estimate_t_k0(obs, 0, cut).value);
    }
    SUBCASE("series coefficients are hat differences") {
        const auto s = estimate_tau_series(obs, 3, cut);
        const double t0 = estimate_t_k0(obs, 0, cut).value;
        for (int k = 1; k <= 3; ++k) {
            CHECK(s.coefficient(static_cast<std::size_t>(k)) ==
                  doctest::Approx(estimate_t_k0(obs, k, cut).value - t0).epsilon(1e-14));
        }
        const auto ss = estimate_sigma_series(obs, 2, cut);
        const double s0 = estimate_s_k0(obs, 0, cut).value;
        CHECK(ss.coefficient(0) == doctest::Approx(s0).epsilon(1e-14));
        CHECK(ss.coefficient(2) ==
              doctest::Approx(estimate_s_k0(obs, 2, cut).value - s0).epsilon(1e-14));
    }
}

TEST_CASE("noise-free volatility estimate is calibrated at n = 10^4") {
    const int n = 10000;
    const int reps = 1000;
    const CutoffConfig cut;
    const ObservationSampler sampler(Model::tbm, FunctionSpec::constant(1.0),
                                     FunctionSpec::constant(0.0), NoiseLaw{}, n, 2025);
    double acc = 0.0;
    double acc2 = 0.0;
    for (int r = 0; r < reps; ++r) {
        const double v = estimate_s_k0(sampler.draw(static_cast<std::uint64_t>(r)), 0, cut).value;
        acc += v;
        acc2 += v * v;
    }
    const double mean = acc / reps;
    const double se = std::sqrt((acc2 / reps - mean * mean) / reps);
    // target [sqrt n]/sqrt n = 1.00; the remaining noise-cutoff leakage is
    // O(log n / n) and sits well inside 3 standard errors at this scale
    CHECK(std::abs(mean - 1.0) <= 3.0 * se);
}

TEST_CASE("custom band reproduces the standard band at square n") {
    const int n = 256;  // [sqrt n] = 16, weight n/width = sqrt(n) exactly
    const auto obs = observe(Model::tbm, FunctionSpec::constant(1.0),
                             FunctionSpec::constant(0.01), NoiseLaw{}, n, 3);
    const CutoffConfig standard;
    const CutoffConfig custom = CutoffConfig::custom_band(17, 32);
    const double t_hat = estimate_t_k0(obs, 0, standard).value;
    const double s_std = estimate_s_k0(obs, 0, standard).value;
    const double s_cus = estimate_s_k0(obs, 0, custom).value;
    // identical band term; bias constants differ by the finite-n eigensum gap
    const double gap = custom.bias_constant(n) - standard.bias_constant(n);
    CHECK(std::abs((s_std - s_cus) - gap * t_hat) <= 1e-12);
    CHECK(std::abs(gap) < 16.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("oracle threshold prefers the constant for constant truth") {
    const auto obs = observe(Model::tbm, FunctionSpec::constant(4.0), FunctionSpec::constant(0.0),
                             NoiseLaw{}, 4096, 11);
    const int N = oracle_threshold(obs, FunctionSpec::constant(4.0),
                                   CoefficientEstimate::Kind::sigma, 8, CutoffConfig{});
    CHECK(N == 0);
}

TEST_CASE("spectral filter beats quadratic variation on efficiency") {
    // Gaussian noise only: asymptotic variance constants are 2/n int tau^4
    // for the filter and 3/n int tau^4 for quadratic variation
    const int n = 4096;
    const int reps = 2000;
    const CutoffConfig cut;
    const ObservationSampler sampler(Model::tbm, FunctionSpec::constant(0.0),
                                     FunctionSpec::constant(0.01), NoiseLaw{}, n, 99);
    double sf = 0.0, sf2 = 0.0, sq = 0.0, sq2 = 0.0;
    for (int r = 0; r < reps; ++r) {
        const auto obs = sampler.draw(static_cast<std::uint64_t>(r));
        const double f = estimate_t_k0(obs, 0, cut).value;
        const double q = quadratic_variation_t_k0(obs, 0);
        sf += f;
        sf2 += f * f;
        sq += q;
        sq2 += q * q;
    }
    const double vf = sf2 / reps - (sf / reps) * (sf / reps);
    const double vq = sq2 / reps - (sq / reps) * (sq / reps);
    CHECK(vf / vq > 0.55);
    CHECK(vf / vq < 0.80);
    CHECK(sq / reps == doctest::Approx(1e-4 * (n - 1) / n).epsilon(0.02));
}

TEST_CASE("advisory series-length warnings") {
    using Kind = CoefficientEstimate::Kind;
    CHECK_FALSE(advisory_series_length(Kind::tau, 25000, 3).has_value());
    CHECK(advisory_series_length(Kind::tau, 25000, 30).has_value());
    CHECK_FALSE(advisory_series_length(Kind::sigma, 25000, 12).has_value());
    CHECK(advisory_series_length(Kind::sigma, 25000, 14).has_value());
}

TEST_CASE("degenerate cutoffs raise argument errors") {
    const auto obs = observe(Model::tbm, FunctionSpec::constant(1.0),
                             FunctionSpec::constant(0.01), NoiseLaw{}, 32, 1);
    CHECK_THROWS_AS(estimate_t_k0(obs, 0, CutoffConfig::custom_tau(31)), std::invalid_argument);
    CHECK_THROWS_AS(estimate_s_k0(obs, 0, CutoffConfig::custom_band(10, 40)),
                    std::invalid_argument);
    CHECK_THROWS_AS(CutoffConfig::custom_band(5, 3), std::invalid_argument);
    CHECK_THROWS_AS(CutoffConfig::custom_tau(0), std::invalid_argument);
    const auto small = make_obs(std::vector<double>(16, 0.0));
    CHECK_THROWS_AS(estimate_t_k0(small, 0, CutoffConfig{}), std::invalid_argument);
}

TEST_CASE("tilde rule runs and is calibrated for constant noise") {
    // top-half spectral window: start [n/2], normalizer n/2
    const int n = 4096;
    const int reps = 200;
    const auto cut = CutoffConfig::tilde();
    CHECK(cut.tau_start(n) == n / 2);
    CHECK(cut.tau_normalizer(n) == doctest::Approx(n / 2.0));
    const ObservationSampler sampler(Model::tbm, FunctionSpec::constant(0.0),
                                     FunctionSpec::constant(1e-4), NoiseLaw{}, n, 404);
    double acc = 0.0;
    double acc2 = 0.0;
    for (int r = 0; r < reps; ++r) {
        const double v = estimate_t_k0(sampler.draw(static_cast<std::uint64_t>(r)), 0, cut).value;
        acc += v;
        acc2 += v * v;
    }
    const double mean = acc / reps;
    const double se = std::sqrt((acc2 / reps - mean * mean) / reps);
    const double target = 1e-4 * (n - n / 2) / (n / 2.0);
    CHECK(std::abs(mean - target) <= 4.0 * se);
}

TEST_CASE("series coefficient theta_1 targets the coefficient difference") {
    // tau^2(x) = (1 + 0.5 cos(pi x)) * 1e-2 under the headline sigma^2:
    // theta_1 estimates t_{1,0} - t_{0,0} with t_{k,0} = int tau^2 f_k^2
    const int n = 2048;
    const int reps = 400;
    const CutoffConfig cut;
    const auto tau2 = FunctionSpec::cosine(CosineSeries({1e-2, 0.25e-2}));
    const auto sigma2 = FunctionSpec::cosine(CosineSeries({2.0, 0.0, 0.5}));

    auto simpson = [](const std::function<double(double)>& g) {
        const int panels = 20000;
        double acc = g(0.0) + g(1.0);
        for (int i = 1; i < panels; ++i)
            acc += (i % 2 == 0 ? 2.0 : 4.0) * g(static_cast<double>(i) / panels);
        return acc / (3.0 * panels);
    };
    const double t00 = simpson([&tau2](double u) { return tau2(u); });
    const double t10 = simpson([&tau2](double u) { return tau2(u) * (1.0 + std::cos(kPi * u)); });
    const double target = t10 - t00;

    const ObservationSampler sampler(Model::tbm, sigma2, tau2, NoiseLaw{}, n, 808);
    double acc = 0.0;
    double acc2 = 0.0;
    for (int r = 0; r < reps; ++r) {
        const auto series = estimate_tau_series(sampler.draw(static_cast<std::uint64_t>(r)), 1, cut);
        const double v = series.coefficient(1);
        acc += v;
        acc2 += v * v;
    }
    const double mean = acc / reps;
    const double se = std::sqrt((acc2 / reps - mean * mean) / reps);
    CHECK(std::abs(mean - target) <= 3.0 * se);
}
