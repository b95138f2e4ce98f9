#include "specvol/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "specvol/io.hpp"

namespace specvol {

NRule NRule::oracle(int N_max) {
    if (N_max < 0) throw std::invalid_argument("NRule::oracle: N_max must be >= 0");
    NRule r;
    r.mode = Mode::oracle;
    r.oracle_N_max = N_max;
    return r;
}

NRule NRule::fixed(int N) {
    if (N < 0) throw std::invalid_argument("NRule::fixed: N must be >= 0");
    NRule r;
    r.mode = Mode::fixed;
    r.fixed_N = N;
    return r;
}

NRule NRule::theoretic(double smoothness) {
    if (!(smoothness > 0.0)) throw std::invalid_argument("NRule::theoretic: smoothness must be > 0");
    NRule r;
    r.mode = Mode::theoretic;
    r.smoothness = smoothness;
    return r;
}

int NRule::resolve(CoefficientEstimate::Kind kind, int n) const {
    switch (mode) {
        case Mode::oracle: return oracle_N_max;
        case Mode::fixed: return fixed_N;
        case Mode::theoretic: {
            const double expo = kind == CoefficientEstimate::Kind::tau
                                    ? 1.0 / (2.0 * smoothness + 1.0)
                                    : 1.0 / (4.0 * smoothness + 2.0);
            // epsilon keeps floor() from losing exact powers to rounding
            return std::max(0, static_cast<int>(std::floor(std::pow(n, expo) + 1e-9)));
        }
    }
    throw std::logic_error("unknown N rule");
}

std::string NRule::describe() const {
    std::ostringstream os;
    switch (mode) {
        case Mode::oracle: os << "oracle(N_max=" << oracle_N_max << ")"; break;
        case Mode::fixed: os << "fixed(" << fixed_N << ")"; break;
        case Mode::theoretic: os << "theoretic(smoothness=" << smoothness << ")"; break;
    }
    return os.str();
}

namespace {

struct RepResult {
    double err = std::numeric_limits<double>::quiet_NaN();
    int N = -1;
    bool ok = false;
};

// Estimates the series, walks the truncation ladder on the grid i/n, and
// returns the error at the selected N (oracle: the empirical minimizer).
RepResult evaluate_replication(const ObservationSampler& sampler, std::uint64_t rep,
                               std::span<const double> truth_at,
                               CoefficientEstimate::Kind kind, const CutoffConfig& cutoff,
                               const NRule& rule) {
    const ObservationSeries obs = sampler.draw(rep);
    const int n = obs.n;
    const int sweep_N = rule.resolve(kind, n);
    const CosineSeries series = kind == CoefficientEstimate::Kind::tau
                                    ? estimate_tau_series(obs, sweep_N, cutoff)
                                    : estimate_sigma_series(obs, sweep_N, cutoff);

    std::vector<double> est(static_cast<std::size_t>(n), series.coefficient(0));
    double best_err = std::numeric_limits<double>::infinity();
    int best_N = 0;
    double err = 0.0;
    for (int N = 0; N <= sweep_N; ++N) {
        if (N >= 1) {
            const double theta = series.coefficient(static_cast<std::size_t>(N));
            for (int i = 1; i <= n; ++i) {
                est[static_cast<std::size_t>(i) - 1] +=
                    2.0 * theta * std::cos(N * kPi * static_cast<double>(i) / n);
            }
        }
        err = 0.0;
        for (int i = 0; i < n; ++i) {
            const double e = est[static_cast<std::size_t>(i)] - truth_at[static_cast<std::size_t>(i)];
            err += e * e;
        }
        err /= n;
        if (rule.mode == NRule::Mode::oracle && err < best_err) {
            best_err = err;
            best_N = N;
        }
    }
    if (rule.mode == NRule::Mode::oracle) return {best_err, best_N, true};
    return {err, sweep_N, true};
}

}  // namespace

ExperimentReport run_mise(const ExperimentConfig& cfg) {
    if (cfg.replications < 2) throw std::invalid_argument("run_mise: need at least 2 replications");
    if (cfg.n_list.empty()) throw std::invalid_argument("run_mise: empty n list");
    for (int n : cfg.n_list) {
        if (n <= 16) throw std::invalid_argument("run_mise: every n must exceed 16");
    }
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads) : hw;

    ExperimentReport report;
    for (int n : cfg.n_list) {
        const auto t0 = std::chrono::steady_clock::now();
        const ObservationSampler sampler(cfg.model, cfg.sigma2, cfg.tau2, NoiseLaw{cfg.noise}, n,
                                         cfg.master_seed);
        const FunctionSpec& truth =
            cfg.kind == CoefficientEstimate::Kind::tau ? cfg.tau2 : cfg.sigma2;
        std::vector<double> truth_at(static_cast<std::size_t>(n));
        for (int i = 1; i <= n; ++i)
            truth_at[static_cast<std::size_t>(i) - 1] = truth(static_cast<double>(i) / n);

        const int M = cfg.replications;
        std::vector<RepResult> slots(static_cast<std::size_t>(M));
        auto worker = [&](int lo, int hi) {
            for (int r = lo; r < hi; ++r) {
                try {
                    slots[static_cast<std::size_t>(r)] = evaluate_replication(
                        sampler, static_cast<std::uint64_t>(r), truth_at, cfg.kind, cfg.cutoff,
                        cfg.n_rule);
                } catch (const std::exception&) {
                    slots[static_cast<std::size_t>(r)].ok = false;
                }
            }
        };
        if (workers <= 1 || M < 4) {
            worker(0, M);
        } else {
            std::vector<std::thread> pool;
            const int chunk = (M + static_cast<int>(workers) - 1) / static_cast<int>(workers);
            for (unsigned w = 0; w < workers; ++w) {
                const int lo = static_cast<int>(w) * chunk;
                const int hi = std::min(M, lo + chunk);
                if (lo >= hi) break;
                pool.emplace_back(worker, lo, hi);
            }
            for (auto& th : pool) th.join();
        }

        int dropped = 0;
        double sum = 0.0;
        double sum_N = 0.0;
        int kept = 0;
        std::vector<double> errs;
        std::vector<int> ns_sel;
        errs.reserve(static_cast<std::size_t>(M));
        ns_sel.reserve(static_cast<std::size_t>(M));
        for (const auto& s : slots) {
            errs.push_back(s.ok ? s.err : std::numeric_limits<double>::quiet_NaN());
            ns_sel.push_back(s.N);
            if (!s.ok) {
                ++dropped;
                continue;
            }
            sum += s.err;
            sum_N += s.N;
            ++kept;
        }
        if (dropped * 20 > M) {
            throw std::runtime_error("run_mise: more than 5% of replications failed at n=" +
                                     std::to_string(n));
        }
        const double mean = sum / kept;
        double ss = 0.0;
        for (const auto& s : slots) {
            if (!s.ok) continue;
            ss += (s.err - mean) * (s.err - mean);
        }
        const double se = kept > 1 ? std::sqrt(ss / (kept - 1) / kept) : 0.0;
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        report.points.push_back(MisePoint{n, mean, se, sum_N / kept, dropped, wall});
        report.rep_errors.push_back(std::move(errs));
        report.rep_selected_N.push_back(std::move(ns_sel));
    }

    bool fit_ok = report.points.size() >= 3;
    for (const auto& p : report.points) fit_ok = fit_ok && p.mise_mean > 0.0;
    if (fit_ok) {
        std::vector<double> ns;
        std::vector<double> ms;
        for (const auto& p : report.points) {
            ns.push_back(static_cast<double>(p.n));
            ms.push_back(p.mise_mean);
        }
        report.rate = rate_fit(ns, ms);
    }
    return report;
}

namespace {

// two-sided 97.5% Student t quantiles for small residual dfs
double t_quantile_975(int df) {
    static constexpr double table[] = {12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306,
                                       2.262,  2.228, 2.201, 2.179, 2.160, 2.145, 2.131, 2.120,
                                       2.110,  2.101, 2.093, 2.086, 2.080, 2.074, 2.069, 2.064,
                                       2.060,  2.056, 2.052, 2.048, 2.045, 2.042};
    if (df < 1) throw std::invalid_argument("t quantile needs df >= 1");
    if (df <= 30) return table[df - 1];
    return 1.96;
}

}  // namespace

RateFit rate_fit(std::span<const double> ns, std::span<const double> mises) {
    if (ns.size() != mises.size()) throw std::invalid_argument("rate_fit: length mismatch");
    const std::size_t m = ns.size();
    if (m < 3) throw std::invalid_argument("rate_fit: need at least 3 points");
    std::vector<double> x(m);
    std::vector<double> y(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (!(ns[i] > 0.0)) throw std::invalid_argument("rate_fit: n values must be positive");
        if (!(mises[i] > 0.0)) throw std::invalid_argument("rate_fit: MISE values must be positive");
        x[i] = std::log(ns[i]);
        y[i] = std::log(mises[i]);
    }
    double xbar = 0.0;
    double ybar = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        xbar += x[i];
        ybar += y[i];
    }
    xbar /= static_cast<double>(m);
    ybar /= static_cast<double>(m);
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (x[i] - xbar) * (x[i] - xbar);
        sxy += (x[i] - xbar) * (y[i] - ybar);
    }
    if (sxx == 0.0) throw std::invalid_argument("rate_fit: n values are all equal");
    const double slope = sxy / sxx;
    const double intercept = ybar - slope * xbar;
    double rss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = y[i] - (intercept + slope * x[i]);
        rss += r * r;
    }
    const int df = static_cast<int>(m) - 2;
    const double se = std::sqrt(rss / df / sxx);
    const double tq = t_quantile_975(df);
    return RateFit{slope, slope - tq * se, slope + tq * se, intercept};
}

FigureId parse_figure_id(const std::string& name) {
    if (name == "fig2") return FigureId::fig2;
    if (name == "fig3") return FigureId::fig3;
    if (name == "fig4") return FigureId::fig4;
    if (name == "fig5") return FigureId::fig5;
    throw std::invalid_argument("unknown figure id '" + name + "' (expected fig2..fig5)");
}

std::string figure_name(FigureId id) {
    switch (id) {
        case FigureId::fig2: return "fig2";
        case FigureId::fig3: return "fig3";
        case FigureId::fig4: return "fig4";
        case FigureId::fig5: return "fig5";
    }
    throw std::logic_error("unknown figure id");
}

FigureScenario figure_scenario(FigureId id, std::uint64_t seed) {
    FigureScenario s;
    s.model = Model::tbm;
    s.n = 25000;
    s.tau2 = FunctionSpec::constant(0.01);  // tau = 0.1
    switch (id) {
        case FigureId::fig2:
            s.sigma2 = FunctionSpec::cosine(CosineSeries({2.0, 0.0, 0.5}));
            break;
        case FigureId::fig3:
            s.sigma2 = FunctionSpec::cosine(CosineSeries({2.0, 0.0, 0.5}));
            s.noise = NoiseKind::student_t3_normalized;
            break;
        case FigureId::fig4: {
            // sigma = 3|W~| on the grid, frozen per seed; the path is part of
            // the scenario so estimation error is measured against it
            RngStream path_stream(seed, 0, StreamRole::sigma_path);
            std::vector<double> vals(static_cast<std::size_t>(s.n) + 1);
            const double sd = 1.0 / std::sqrt(static_cast<double>(s.n));
            double w = 0.0;
            vals[0] = 0.0;
            for (int i = 1; i <= s.n; ++i) {
                w += sd * path_stream.normal();
                vals[static_cast<std::size_t>(i)] = 9.0 * w * w;
            }
            s.sigma2 = FunctionSpec::tabulated(std::move(vals));
            break;
        }
        case FigureId::fig5:
            s.sigma2 = FunctionSpec::jump(1.0, 4.0, 0.5);
            break;
    }
    return s;
}

namespace {

constexpr int kTauOracleMax = 12;
constexpr int kSigmaOracleMax = 24;
constexpr int kJumpDiagnosticN = 10;  // truncation at which the jump overshoot is examined

std::vector<double> series_on_grid(const CosineSeries& s, int N, int n) {
    std::vector<double> est(static_cast<std::size_t>(n), s.coefficient(0));
    for (int k = 1; k <= N; ++k) {
        const double theta = s.coefficient(static_cast<std::size_t>(k));
        for (int i = 1; i <= n; ++i) {
            est[static_cast<std::size_t>(i) - 1] +=
                2.0 * theta * std::cos(k * kPi * static_cast<double>(i) / n);
        }
    }
    return est;
}

int oracle_from_series(const CosineSeries& s, int N_max, std::span<const double> truth_at) {
    const int n = static_cast<int>(truth_at.size());
    std::vector<double> est(truth_at.size(), s.coefficient(0));
    double best = std::numeric_limits<double>::infinity();
    int best_N = 0;
    for (int N = 0; N <= N_max; ++N) {
        if (N >= 1) {
            const double theta = s.coefficient(static_cast<std::size_t>(N));
            for (int i = 1; i <= n; ++i) {
                est[static_cast<std::size_t>(i) - 1] +=
                    2.0 * theta * std::cos(N * kPi * static_cast<double>(i) / n);
            }
        }
        double err = 0.0;
        for (std::size_t i = 0; i < truth_at.size(); ++i) {
            const double e = est[i] - truth_at[i];
            err += e * e;
        }
        if (err < best) {
            best = err;
            best_N = N;
        }
    }
    return best_N;
}

double rel_l2(std::span<const double> est, std::span<const double> truth) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < est.size(); ++i) {
        num += (est[i] - truth[i]) * (est[i] - truth[i]);
        den += truth[i] * truth[i];
    }
    return std::sqrt(num / den);
}

struct FigureData {
    FigureScenario scen;
    ObservationSeries obs;
    std::vector<double> latent;
    CosineSeries tau_series;
    CosineSeries sigma_series;
    std::vector<double> tau_truth_at;
    std::vector<double> sigma_truth_at;
    FigureResult result;
};

FigureData figure_run_core(FigureId id, std::uint64_t seed) {
    FigureData d;
    d.scen = figure_scenario(id, seed);
    const ObservationSampler sampler(d.scen.model, d.scen.sigma2, d.scen.tau2,
                                     NoiseLaw{d.scen.noise}, d.scen.n, seed);
    d.obs = sampler.draw(0, &d.latent);

    const CutoffConfig cutoff;
    d.tau_series = estimate_tau_series(d.obs, kTauOracleMax, cutoff);
    d.sigma_series = estimate_sigma_series(d.obs, kSigmaOracleMax, cutoff);

    const int n = d.scen.n;
    d.tau_truth_at.resize(static_cast<std::size_t>(n));
    d.sigma_truth_at.resize(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        d.tau_truth_at[static_cast<std::size_t>(i) - 1] = d.scen.tau2(static_cast<double>(i) / n);
        d.sigma_truth_at[static_cast<std::size_t>(i) - 1] = d.scen.sigma2(static_cast<double>(i) / n);
    }

    d.result.oracle_N_tau = oracle_from_series(d.tau_series, kTauOracleMax, d.tau_truth_at);
    d.result.oracle_N_sigma = oracle_from_series(d.sigma_series, kSigmaOracleMax, d.sigma_truth_at);
    d.result.rel_err_tau =
        rel_l2(series_on_grid(d.tau_series, d.result.oracle_N_tau, n), d.tau_truth_at);
    d.result.rel_err_sigma =
        rel_l2(series_on_grid(d.sigma_series, d.result.oracle_N_sigma, n), d.sigma_truth_at);

    if (id == FigureId::fig5) {
        auto window_max = [n](const std::vector<double>& est) {
            double m = -std::numeric_limits<double>::infinity();
            for (int i = 1; i <= n; ++i) {
                const double t = static_cast<double>(i) / n;
                if (t >= 0.4 && t <= 0.6) m = std::max(m, est[static_cast<std::size_t>(i) - 1]);
            }
            return m;
        };
        d.result.overshoot_max = window_max(series_on_grid(d.sigma_series, kJumpDiagnosticN, n));
        d.result.overshoot_max_at_oracle =
            window_max(series_on_grid(d.sigma_series, d.result.oracle_N_sigma, n));
    }
    return d;
}

}  // namespace

FigureResult run_figure(FigureId id, std::uint64_t seed) {
    return figure_run_core(id, seed).result;
}

FigureResult replicate_figure(FigureId id, std::uint64_t seed,
                              const std::filesystem::path& out_dir) {
    const FigureData d = figure_run_core(id, seed);
    std::filesystem::create_directories(out_dir);
    const std::string prefix = figure_name(id);
    const int n = d.scen.n;

    std::vector<double> idx(static_cast<std::size_t>(n));
    std::vector<double> t(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        idx[static_cast<std::size_t>(i) - 1] = i;
        t[static_cast<std::size_t>(i) - 1] = static_cast<double>(i) / n;
    }

    write_csv(out_dir / (prefix + "_data.csv"), {"i", "t", "y"}, {idx, t, d.obs.y});
    write_csv(out_dir / (prefix + "_latent.csv"), {"t", "x"}, {t, d.latent});
    write_csv(out_dir / (prefix + "_tau2.csv"), {"t", "estimate", "truth"},
              {t, series_on_grid(d.tau_series, d.result.oracle_N_tau, n), d.tau_truth_at});
    write_csv(out_dir / (prefix + "_sigma2.csv"), {"t", "estimate", "truth"},
              {t, series_on_grid(d.sigma_series, d.result.oracle_N_sigma, n), d.sigma_truth_at});
    if (id == FigureId::fig4) {
        write_csv(out_dir / (prefix + "_sigma2_path.csv"), {"t", "sigma2"},
                  {t, d.sigma_truth_at});
    }

    std::vector<std::pair<std::string, std::string>> meta;
    meta.emplace_back("figure", prefix);
    meta.emplace_back("seed", std::to_string(seed));
    meta.emplace_back("n", std::to_string(n));
    meta.emplace_back("model", d.scen.model == Model::tbm ? "tbm" : "sbm");
    meta.emplace_back("noise", d.scen.noise == NoiseKind::gaussian ? "gaussian" : "student-t3");
    meta.emplace_back("tau2", function_spec_flag(d.scen.tau2));
    meta.emplace_back("sigma2", id == FigureId::fig4
                                    ? "file:" + prefix + "_sigma2_path.csv"
                                    : function_spec_flag(d.scen.sigma2));
    meta.emplace_back("oracle_N_tau", std::to_string(d.result.oracle_N_tau));
    meta.emplace_back("oracle_N_sigma", std::to_string(d.result.oracle_N_sigma));
    meta.emplace_back("rel_err_tau", std::to_string(d.result.rel_err_tau));
    meta.emplace_back("rel_err_sigma", std::to_string(d.result.rel_err_sigma));
    if (d.result.overshoot_max) {
        meta.emplace_back("overshoot_diagnostic_N", std::to_string(kJumpDiagnosticN));
        meta.emplace_back("overshoot_max", std::to_string(*d.result.overshoot_max));
        meta.emplace_back("overshoot_max_at_oracle_N",
                          std::to_string(*d.result.overshoot_max_at_oracle));
    }
    write_key_value_file(out_dir / (prefix + "_meta.txt"), meta);
    return d.result;
}

NormalityCheck normality_check(std::span<const double> samples) {
    if (samples.size() < 500)
        throw std::invalid_argument("normality_check: need at least 500 samples");
    const double m = static_cast<double>(samples.size());
    double mean = 0.0;
    for (double v : samples) mean += v;
    mean /= m;
    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;
    for (double v : samples) {
        const double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= m;
    m3 /= m;
    m4 /= m;
    const double skew = m3 / std::pow(m2, 1.5);
    const double exkurt = m4 / (m2 * m2) - 3.0;
    return NormalityCheck{skew, exkurt, std::abs(skew) <= 0.15 && std::abs(exkurt) <= 0.3};
}

}  // namespace specvol
