// Validation suite: runs every numbered acceptance criterion at its pinned
// tolerance and prints one PASS/FAIL line per criterion.  Exit code is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "specvol/estimators.hpp"
#include "specvol/harness.hpp"
#include "specvol/simulate.hpp"
#include "specvol/spectral.hpp"

using namespace specvol;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

std::string fmt(const char* format, ...) {
    va_list args;
    va_start(args, format);
    char buf[512];
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size();
    return m % 2 == 1 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

// mean over replications of a per-replication statistic, two worker threads
template <typename F>
void replicate(int reps, F&& body) {
    const unsigned workers = std::min(4u, std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    const int chunk = (reps + static_cast<int>(workers) - 1) / static_cast<int>(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const int lo = static_cast<int>(w) * chunk;
        const int hi = std::min(reps, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (int r = lo; r < hi; ++r) body(r);
        });
    }
    for (auto& th : pool) th.join();
}

// --- criterion 1: diagonalization identity ---------------------------------
Outcome criterion1() {
    const double t0 = now_seconds();
    double worst = 0.0;
    for (int n : {8, 64, 256}) worst = std::max(worst, diagonalization_residual(n));
    const double dt = now_seconds() - t0;
    const bool ok = worst <= 1e-10 && dt < 1.0;
    return {ok, fmt("max |D*Lambda*D - K| = %.2e (<= 1e-10), %.2fs (< 1s)", worst, dt)};
}

// --- criterion 2: transform correctness -------------------------------------
Outcome criterion2() {
    const double t0 = now_seconds();
    std::mt19937_64 rng(2);
    auto rand_vec = [&rng](int m) {
        std::vector<double> v(static_cast<std::size_t>(m));
        for (auto& x : v) x = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
        return v;
    };
    double worst_fast = 0.0;
    for (int n = 16; n <= 512; ++n) {
        const auto v = rand_vec(n - 1);
        const auto fast = dst_apply(v);
        const Eigen::MatrixXd D = dense_dst_matrix(n);
        Eigen::Map<const Eigen::VectorXd> vv(v.data(), n - 1);
        const Eigen::VectorXd dense = D * vv;
        for (int i = 0; i < n - 1; ++i) {
            worst_fast = std::max(worst_fast,
                                  std::abs(fast[static_cast<std::size_t>(i)] - dense(i)));
        }
    }
    double worst_inv = 0.0;
    std::vector<int> lengths;
    for (int m = 1; m <= 512; ++m) lengths.push_back(m);
    for (int m = 520; m <= 4096; m += 8) lengths.push_back(m);
    for (int m : {601, 727, 1021, 2039, 3001, 4093, 4095, 4096}) lengths.push_back(m);
    for (int m : lengths) {
        const auto v = rand_vec(m);
        const auto w = dst_apply(dst_apply(v));
        for (int i = 0; i < m; ++i) {
            worst_inv = std::max(worst_inv, std::abs(w[static_cast<std::size_t>(i)] -
                                                     v[static_cast<std::size_t>(i)]));
        }
    }
    const double dt = now_seconds() - t0;
    const bool ok = worst_fast <= 1e-10 && worst_inv <= 1e-10 && dt < 5.0;
    return {ok, fmt("fast-vs-dense %.2e, involution %.2e (<= 1e-10), %.2fs (< 5s)", worst_fast,
                    worst_inv, dt)};
}

// --- criterion 3: eigensum constant ------------------------------------------
Outcome criterion3() {
    bool ok = true;
    std::string detail;
    for (int n : {1000, 10000, 1000000}) {
        const int root = static_cast<int>(std::sqrt(static_cast<double>(n)));
        const double dev = std::abs(
            std::sqrt(static_cast<double>(n)) * eigensum_band(n, root + 1, 2 * root) -
            7.0 * kPi * kPi / 3.0);
        const double bound = 10.0 / std::sqrt(static_cast<double>(n));
        ok = ok && dev <= bound;
        detail += fmt("n=%d: |dev|=%.4f vs %.4f; ", n, dev, bound);
    }
    return {ok, detail};
}

// --- criterion 4: aliasing identity ------------------------------------------
Outcome criterion4() {
    const auto sig2 = FunctionSpec::cosine(CosineSeries({2.0, 0.0, 0.5}));
    double worst = 0.0;
    for (int n : {16, 32}) {
        for (int k : {0, 3}) worst = std::max(worst, aliasing_identity_residual(sig2, k, n));
    }
    return {worst <= 1e-8, fmt("max residual %.2e (<= 1e-8)", worst)};
}

// --- criterion 5: tau-estimator calibration ----------------------------------
Outcome criterion5() {
    const double t0 = now_seconds();
    const int n = 25000;
    const int reps = 2000;
    const double tau2v = 1e-4;
    const CutoffConfig cut;
    const SpectralGrid grid(n);
    const int start = cut.tau_start(n);
    const double norm = cut.tau_normalizer(n);
    const double rbar = (n - start) / norm;

    auto run_arm = [&](double sig2v) {
        const ObservationSampler sampler(Model::tbm, FunctionSpec::constant(sig2v),
                                         FunctionSpec::constant(tau2v), NoiseLaw{}, n,
                                         5000 + static_cast<std::uint64_t>(sig2v));
        std::vector<double> vals(static_cast<std::size_t>(reps));
        replicate(reps, [&](int r) {
            vals[static_cast<std::size_t>(r)] =
                estimate_t_k0(sampler.draw(static_cast<std::uint64_t>(r)), 0, cut).value;
        });
        double mean = 0.0;
        for (double v : vals) mean += v;
        mean /= reps;
        double var = 0.0;
        for (double v : vals) var += (v - mean) * (v - mean);
        var /= reps - 1;
        return std::pair<double, double>{mean, var};
    };

    // sigma absent: spec targets tau^2 * rbar and the Gaussian limit 2 tau^4 / n
    const auto [mean0, var0] = run_arm(0.0);
    const double target_mean0 = tau2v * rbar;
    const double target_var0 = 2.0 * tau2v * tau2v / n;
    const double se0 = std::sqrt(var0 / reps);
    const bool mean0_ok = std::abs(mean0 - target_mean0) <= 3.0 * se0;
    const bool var0_ok = std::abs(var0 - target_var0) <= 0.2 * target_var0;

    // sigma present: exact finite-n law of the quadratic form,
    // E = sum w_i v_i and Var = 2 sum (w_i v_i)^2 with v_i = 1/n + tau^2 lambda_i
    const auto [mean1, var1] = run_arm(1.0);
    double exact_mean1 = 0.0;
    double exact_var1 = 0.0;
    for (int i = start; i <= n - 1; ++i) {
        const double wv = (1.0 / n + tau2v * grid.lambda(i)) / (norm * grid.lambda(i));
        exact_mean1 += wv;
        exact_var1 += 2.0 * wv * wv;
    }
    const double se1 = std::sqrt(var1 / reps);
    const bool mean1_ok = std::abs(mean1 - exact_mean1) <= 3.0 * se1;
    const bool var1_ok = std::abs(var1 - exact_var1) <= 0.2 * exact_var1;

    const double dt = now_seconds() - t0;
    const bool ok = mean0_ok && var0_ok && mean1_ok && var1_ok && dt < 120.0;
    return {ok, fmt("sigma=0: mean %.6e vs %.6e (3SE %.1e), var %.3e vs %.3e; "
                    "sigma=1 exact law: mean %.6e vs %.6e, var %.3e vs %.3e; %.1fs",
                    mean0, target_mean0, 3.0 * se0, var0, target_var0, mean1, exact_mean1, var1,
                    exact_var1, dt)};
}

// --- criterion 6: sigma-estimator bias correction ----------------------------
Outcome criterion6() {
    const double t0 = now_seconds();
    const int n = 10000;
    const int reps = 1000;
    const CutoffConfig cut;
    const ObservationSampler sampler(Model::tbm, FunctionSpec::constant(1.0),
                                     FunctionSpec::constant(0.01), NoiseLaw{}, n, 6000);
    std::vector<double> vals(static_cast<std::size_t>(reps));
    replicate(reps, [&](int r) {
        vals[static_cast<std::size_t>(r)] =
            estimate_s_k0(sampler.draw(static_cast<std::uint64_t>(r)), 0, cut).value;
    });
    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= reps;
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean);
    var /= reps - 1;
    const double se = std::sqrt(var / reps);
    const double dt = now_seconds() - t0;
    const bool ok = std::abs(mean - 1.0) <= 3.0 * se && dt < 60.0;
    return {ok, fmt("mean s_hat = %.5f vs 1.0 (3 MC SE = %.5f), %.1fs (< 60s)", mean, 3.0 * se,
                    dt)};
}

// --- criterion 7: figure-2 reproduction --------------------------------------
Outcome criterion7() {
    const double t0 = now_seconds();
    std::vector<double> err_tau;
    std::vector<double> err_sigma;
    std::map<int, int> n_counts;
    std::vector<FigureResult> results(20);
    replicate(20, [&results](int s) {
        results[static_cast<std::size_t>(s)] =
            run_figure(FigureId::fig2, 100 + static_cast<std::uint64_t>(s));
    });
    for (const auto& r : results) {
        err_tau.push_back(r.rel_err_tau);
        err_sigma.push_back(r.rel_err_sigma);
        n_counts[r.oracle_N_sigma]++;
    }
    int modal_N = -1;
    int best = 0;
    for (const auto& [N, c] : n_counts) {
        if (c > best) {
            best = c;
            modal_N = N;
        }
    }
    const double med_tau = median(err_tau);
    const double med_sigma = median(err_sigma);
    const double dt = now_seconds() - t0;
    const bool ok = med_tau <= 0.05 && med_sigma <= 0.15 &&
                    (modal_N >= 2 && modal_N <= 4) && dt < 120.0;
    return {ok, fmt("median rel err: tau %.3f (<= 0.05), sigma %.3f (<= 0.15); modal N_sigma = %d "
                    "(in {2,3,4}); %.1fs",
                    med_tau, med_sigma, modal_N, dt)};
}

// --- criterion 8: rate-exponent property check -------------------------------
Outcome criterion8() {
    const double t0 = now_seconds();
    ExperimentConfig cfg;
    cfg.n_list = {4096, 8192, 16384, 32768, 65536};
    cfg.replications = 100;
    cfg.master_seed = 8000;
    cfg.sigma2 = FunctionSpec::cosine(CosineSeries({2.0, 0.0, 0.5}));

    cfg.kind = CoefficientEstimate::Kind::tau;
    cfg.tau2 = FunctionSpec::cosine(CosineSeries({1e-2, 0.25e-2}));
    cfg.n_rule = NRule::theoretic(100.0);  // effectively infinite smoothness
    const auto tau_report = run_mise(cfg);

    cfg.kind = CoefficientEstimate::Kind::sigma;
    cfg.tau2 = FunctionSpec::constant(0.01);
    cfg.n_rule = NRule::theoretic(1.0);
    const auto sigma_report = run_mise(cfg);

    const double slope_tau = tau_report.rate ? tau_report.rate->slope : 0.0;
    const double slope_sigma = sigma_report.rate ? sigma_report.rate->slope : 0.0;
    const double dt = now_seconds() - t0;
    const bool ok = slope_tau <= -0.6 && slope_sigma <= -0.25 && dt < 900.0;
    return {ok, fmt("slopes: tau %.3f (<= -0.6), sigma %.3f (<= -0.25); %.0fs (< 900s)", slope_tau,
                    slope_sigma, dt)};
}

// --- criterion 9: CLT sanity --------------------------------------------------
Outcome criterion9() {
    const int n = 4096;
    const int reps = 2000;
    const CutoffConfig cut;
    const ObservationSampler sampler(Model::tbm, FunctionSpec::constant(1.0),
                                     FunctionSpec::constant(0.01), NoiseLaw{}, n, 9000);
    std::vector<double> vals(static_cast<std::size_t>(reps));
    replicate(reps, [&](int r) {
        vals[static_cast<std::size_t>(r)] =
            estimate_t_k0(sampler.draw(static_cast<std::uint64_t>(r)), 0, cut).value;
    });
    const auto check = normality_check(vals);
    return {check.pass, fmt("skew %.4f (|.| <= 0.15), excess kurtosis %.4f (|.| <= 0.3)",
                            check.skewness, check.excess_kurtosis)};
}

// --- criterion 10: robustness (fig3, fig5) ------------------------------------
Outcome criterion10() {
    std::vector<double> tau_errs(20);
    replicate(20, [&tau_errs](int s) {
        tau_errs[static_cast<std::size_t>(s)] =
            run_figure(FigureId::fig3, 300 + static_cast<std::uint64_t>(s)).rel_err_tau;
    });
    const double med = median(tau_errs);

    std::vector<double> overshoot(20);
    replicate(20, [&overshoot](int s) {
        overshoot[static_cast<std::size_t>(s)] =
            run_figure(FigureId::fig5, 500 + static_cast<std::uint64_t>(s))
                .overshoot_max.value();
    });
    int hits = 0;
    for (double v : overshoot) {
        if (v >= 4.0 * 1.05) ++hits;
    }
    const bool ok = med <= 0.10 && hits > 10;
    return {ok, fmt("fig3 median tau rel err %.3f (<= 0.10); fig5 overshoot >= 4.2 in %d/20 "
                    "(majority)",
                    med, hits)};
}

// --- criterion 11: performance ------------------------------------------------
Outcome criterion11() {
    const CutoffConfig cut;
    auto time_estimation = [&cut](int n) {
        const ObservationSampler sampler(Model::tbm,
                                         FunctionSpec::cosine(CosineSeries({2.0, 0.0, 0.5})),
                                         FunctionSpec::constant(0.01), NoiseLaw{}, n, 42);
        const auto obs = sampler.draw(0);
        std::vector<double> times;
        volatile double sink = 0.0;
        for (int trial = 0; trial < 3; ++trial) {
            const double t0 = now_seconds();
            const auto series = estimate_sigma_series(obs, 10, cut);
            times.push_back(now_seconds() - t0);
            sink = sink + series.coefficient(0);
        }
        return median(times);
    };
    const double t25 = time_estimation(25000);
    const double t50 = time_estimation(50000);
    const double ratio = t50 / t25;
    const bool ok = t25 < 3.0 && ratio < 3.0;
    return {ok, fmt("sigma series at n=25000, N=10: %.3fs (< 3s); doubling n scales x%.2f (< 3)",
                    t25, ratio)};
}

// --- criterion 12: variogram ---------------------------------------------------
Outcome criterion12() {
    const auto sig2 = FunctionSpec::cosine(CosineSeries({2.0, 0.0, 0.5}));
    const int reps = 20000;
    bool ok = true;
    std::string detail;
    const struct {
        int n;
        int is;
        int it;
    } cases[] = {{10, 2, 5}, {10, 1, 9}};
    for (const auto& c : cases) {
        const double s = static_cast<double>(c.is) / c.n;
        const double t = static_cast<double>(c.it) / c.n;
        std::vector<double> sq(static_cast<std::size_t>(reps));
        replicate(reps, [&](int r) {
            RngStream rng(1200, static_cast<std::uint64_t>(r), StreamRole::brownian);
            const auto path = simulate_sbm(sig2, c.n, rng);
            const double d = path[static_cast<std::size_t>(c.it) - 1] -
                             path[static_cast<std::size_t>(c.is) - 1];
            sq[static_cast<std::size_t>(r)] = d * d;
        });
        double mc = 0.0;
        for (double v : sq) mc += v;
        mc /= reps;
        double var = 0.0;
        for (double v : sq) var += (v - mc) * (v - mc);
        const double se = std::sqrt(var / (reps - 1) / reps);
        const double analytic = variogram_sbm(s, t, sig2);
        ok = ok && std::abs(mc - analytic) <= 3.0 * se;
        detail += fmt("(%.1f,%.1f): mc %.5f vs %.5f (3SE %.5f); ", s, t, mc, analytic, 3.0 * se);
    }
    return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
    const int only = argc > 1 ? std::atoi(argv[1]) : 0;
    struct Entry {
        int id;
        const char* name;
        Outcome (*fn)();
    };
    const Entry entries[] = {
        {1, "diagonalization identity", criterion1},
        {2, "transform correctness", criterion2},
        {3, "eigensum constant", criterion3},
        {4, "aliasing identity", criterion4},
        {5, "tau-estimator calibration", criterion5},
        {6, "sigma-estimator bias correction", criterion6},
        {7, "figure-2 reproduction", criterion7},
        {8, "rate-exponent property check", criterion8},
        {9, "CLT sanity", criterion9},
        {10, "robustness (fig3/fig5)", criterion10},
        {11, "performance", criterion11},
        {12, "variogram", criterion12},
    };
    int failures = 0;
    for (const auto& e : entries) {
        if (only != 0 && e.id != only) continue;
        const Outcome r = e.fn();
        if (!r.pass) ++failures;
        std::printf("[%s] criterion %2d: %s — %s\n", r.pass ? "PASS" : "FAIL", e.id, e.name,
                    r.detail.c_str());
        std::fflush(stdout);
    }
    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
