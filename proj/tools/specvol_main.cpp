// specvol: simulate noisy scaled-Brownian-motion observations and estimate the
// spot-volatility and noise-variance functions by spectral cosine series.

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "specvol/estimators.hpp"
#include "specvol/harness.hpp"
#include "specvol/io.hpp"
#include "specvol/simulate.hpp"
#include "specvol/spectral.hpp"

namespace fs = std::filesystem;
using namespace specvol;

namespace {

constexpr const char* kConventionNote =
    "Conventions: log() in cut-offs is the binary logarithm. Standard cut-offs: "
    "noise variance averages spectral frequencies [n/log2 n]..n-1 with weights "
    "1/lambda_i and normalizer n - n/log2(n); volatility averages the band "
    "[sqrt n]+1..2[sqrt n] with weight sqrt(n) and bias constant 7*pi^2/3.";

fs::path resolve_out(const std::string& out, const std::string& fallback) {
    if (!out.empty()) return out;
    const char* dir = std::getenv("SPECVOL_OUT_DIR");
    return dir != nullptr ? fs::path(dir) / fallback : fs::path(fallback);
}

fs::path sidecar(const fs::path& main_out, const std::string& suffix) {
    fs::path p = main_out;
    p.replace_extension();
    return p.concat(suffix);
}

Model parse_model(const std::string& m) {
    if (m == "tbm") return Model::tbm;
    if (m == "sbm") return Model::sbm;
    throw std::invalid_argument("flag --model: expected tbm or sbm, got '" + m + "'");
}

NoiseKind parse_noise(const std::string& s) {
    if (s == "gaussian") return NoiseKind::gaussian;
    if (s == "student-t3") return NoiseKind::student_t3_normalized;
    throw std::invalid_argument("flag --noise: expected gaussian or student-t3, got '" + s + "'");
}

CutoffConfig parse_cutoff(const std::string& s, CoefficientEstimate::Kind kind) {
    if (s == "standard") return CutoffConfig::standard();
    if (s == "tilde") return CutoffConfig::tilde();
    if (s.rfind("custom:", 0) == 0) {
        const std::string body = s.substr(7);
        const auto comma = body.find(',');
        try {
            if (kind == CoefficientEstimate::Kind::tau) {
                if (comma != std::string::npos)
                    throw std::invalid_argument("tau cutoff takes a single start index");
                return CutoffConfig::custom_tau(std::stoi(body));
            }
            if (comma == std::string::npos)
                throw std::invalid_argument("sigma cutoff needs custom:lo,hi");
            return CutoffConfig::custom_band(std::stoi(body.substr(0, comma)),
                                             std::stoi(body.substr(comma + 1)));
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception&) {
            throw std::invalid_argument("flag --cutoff: malformed custom spec '" + s + "'");
        }
    }
    throw std::invalid_argument("flag --cutoff: expected standard|tilde|custom:..., got '" + s +
                                "'");
}

NRule parse_n_rule(const std::string& s) {
    if (s == "oracle") return NRule::oracle();
    if (s.rfind("oracle:", 0) == 0) return NRule::oracle(std::stoi(s.substr(7)));
    if (s.rfind("fixed:", 0) == 0) return NRule::fixed(std::stoi(s.substr(6)));
    if (s.rfind("theoretic:", 0) == 0) return NRule::theoretic(std::stod(s.substr(10)));
    throw std::invalid_argument("flag --n-rule: expected oracle[:Nmax]|fixed:N|theoretic:s, got '" +
                                s + "'");
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        auto comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        out.push_back(std::stoi(s.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    if (out.empty()) throw std::invalid_argument("flag --n-list: empty");
    return out;
}

int run_simulate(const std::string& model, int n, std::uint64_t seed, const std::string& sigma2,
                 const std::string& tau2, const std::string& noise, std::uint64_t rep,
                 const std::string& out) {
    const auto s2 = parse_function_spec(sigma2);
    const auto t2 = parse_function_spec(tau2);
    const auto obs = observe(parse_model(model), s2, t2, NoiseLaw{parse_noise(noise)}, n, seed, rep);
    const fs::path out_path = resolve_out(out, "observations.csv");
    write_observation_csv(out_path, obs);
    write_key_value_file(sidecar(out_path, ".meta.txt"),
                         {{"subcommand", "simulate"},
                          {"model", model},
                          {"n", std::to_string(n)},
                          {"seed", std::to_string(seed)},
                          {"replication", std::to_string(rep)},
                          {"sigma2", function_spec_flag(s2)},
                          {"tau2", function_spec_flag(t2)},
                          {"noise", noise},
                          {"output", out_path.string()}});
    std::cout << "wrote " << obs.n << " observations to " << out_path.string() << "\n";
    return 0;
}

int run_estimate(CoefficientEstimate::Kind kind, const std::string& input, int N,
                 const std::string& cutoff_flag, int grid, const std::string& out) {
    const auto y = read_observation_column(input);
    const int n = static_cast<int>(y.size());
    if (n <= 16) throw std::invalid_argument("n must exceed 16 (input has " + std::to_string(n) +
                                             " observations)");
    ObservationSeries obs;
    obs.y = y;
    obs.n = n;

    const CutoffConfig cutoff = parse_cutoff(cutoff_flag, kind);
    if (const auto advisory = advisory_series_length(kind, n, N)) {
        std::cerr << *advisory << "\n";
    }
    const bool is_tau = kind == CoefficientEstimate::Kind::tau;
    const CosineSeries series =
        is_tau ? estimate_tau_series(obs, N, cutoff) : estimate_sigma_series(obs, N, cutoff);

    const fs::path out_path = resolve_out(out, is_tau ? "tau2_estimate.csv" : "sigma2_estimate.csv");
    std::vector<double> ts(static_cast<std::size_t>(grid) + 1);
    std::vector<double> vals(static_cast<std::size_t>(grid) + 1);
    for (int i = 0; i <= grid; ++i) {
        const double t = static_cast<double>(i) / grid;
        ts[static_cast<std::size_t>(i)] = t;
        vals[static_cast<std::size_t>(i)] = series(t);
    }
    write_csv(out_path, {"t", "estimate"}, {ts, vals});
    write_cosine_series_csv(sidecar(out_path, ".coeffs.csv"), series);
    write_key_value_file(sidecar(out_path, ".meta.txt"),
                         {{"subcommand", is_tau ? "estimate-tau" : "estimate-sigma"},
                          {"input", input},
                          {"n", std::to_string(n)},
                          {"N", std::to_string(N)},
                          {"cutoff", cutoff.describe()},
                          {"grid", std::to_string(grid)},
                          {"output", out_path.string()}});
    std::cout << "wrote " << (grid + 1) << " grid values to " << out_path.string() << "\n";
    return 0;
}

struct SweepScenario {
    ExperimentConfig cfg;
    // one-sided slope gate; failing it exits with code 2
    std::optional<double> slope_bound;
};

SweepScenario sweep_scenario(const std::string& name) {
    SweepScenario s;
    s.cfg.scenario = name;
    if (name == "rate-tau") {
        // tau^2(x) = (1 + 0.5 cos(pi x)) * 1e-2, effectively infinite smoothness
        s.cfg.kind = CoefficientEstimate::Kind::tau;
        s.cfg.tau2 = FunctionSpec::cosine(CosineSeries({1e-2, 0.25e-2}));
        s.cfg.sigma2 = FunctionSpec::cosine(CosineSeries({2.0, 0.0, 0.5}));
        s.cfg.n_rule = NRule::theoretic(100.0);
        s.slope_bound = -0.6;
    } else if (name == "rate-sigma") {
        s.cfg.kind = CoefficientEstimate::Kind::sigma;
        s.cfg.tau2 = FunctionSpec::constant(0.01);
        s.cfg.sigma2 = FunctionSpec::cosine(CosineSeries({2.0, 0.0, 0.5}));
        s.cfg.n_rule = NRule::theoretic(1.0);
        s.slope_bound = -0.25;
    } else if (name == "fig2-tau" || name == "fig2-sigma") {
        s.cfg.kind = name == "fig2-tau" ? CoefficientEstimate::Kind::tau
                                        : CoefficientEstimate::Kind::sigma;
        s.cfg.tau2 = FunctionSpec::constant(0.01);
        s.cfg.sigma2 = FunctionSpec::cosine(CosineSeries({2.0, 0.0, 0.5}));
        s.cfg.n_rule = NRule::oracle();
    } else if (name == "const-tau") {
        s.cfg.kind = CoefficientEstimate::Kind::tau;
        s.cfg.tau2 = FunctionSpec::constant(0.01);
        s.cfg.sigma2 = FunctionSpec::constant(1.0);
        s.cfg.n_rule = NRule::fixed(0);
    } else if (name == "custom") {
        // everything from flags
    } else {
        throw std::invalid_argument(
            "flag --scenario: expected rate-tau|rate-sigma|fig2-tau|fig2-sigma|const-tau|custom, "
            "got '" + name + "'");
    }
    return s;
}

int run_mise_sweep(const std::string& scenario, const std::string& n_list, int reps,
                   std::uint64_t seed, const std::string& out_dir, const std::string& n_rule,
                   const std::string& kind, const std::string& model, const std::string& sigma2,
                   const std::string& tau2, const std::string& noise, int threads) {
    SweepScenario s = sweep_scenario(scenario);
    ExperimentConfig& cfg = s.cfg;
    cfg.n_list = parse_int_list(n_list);
    cfg.replications = reps;
    cfg.master_seed = seed;
    cfg.threads = threads;
    cfg.model = parse_model(model);
    cfg.noise = parse_noise(noise);
    if (!n_rule.empty()) cfg.n_rule = parse_n_rule(n_rule);
    if (!kind.empty())
        cfg.kind = kind == "tau" ? CoefficientEstimate::Kind::tau
                                 : CoefficientEstimate::Kind::sigma;
    if (!sigma2.empty()) cfg.sigma2 = parse_function_spec(sigma2);
    if (!tau2.empty()) cfg.tau2 = parse_function_spec(tau2);

    const fs::path dir = resolve_out(out_dir, "mise-sweep");
    fs::create_directories(dir);

    const ExperimentReport report = run_mise(cfg);

    std::vector<double> ns;
    std::vector<double> mm;
    std::vector<double> ms;
    std::vector<double> mn;
    std::vector<double> dr;
    std::vector<double> ws;
    for (const auto& p : report.points) {
        ns.push_back(p.n);
        mm.push_back(p.mise_mean);
        ms.push_back(p.mise_se);
        mn.push_back(p.mean_selected_N);
        dr.push_back(p.dropped);
        ws.push_back(p.wall_seconds);
    }
    write_csv(dir / "report.csv",
              {"n", "mise_mean", "mise_se", "mean_selected_N", "dropped", "wall_seconds"},
              {ns, mm, ms, mn, dr, ws});

    std::vector<std::pair<std::string, std::string>> meta = {
        {"subcommand", "mise-sweep"},
        {"scenario", cfg.scenario},
        {"kind", cfg.kind == CoefficientEstimate::Kind::tau ? "tau" : "sigma"},
        {"model", cfg.model == Model::tbm ? "tbm" : "sbm"},
        {"noise", cfg.noise == NoiseKind::gaussian ? "gaussian" : "student-t3"},
        {"sigma2", function_spec_flag(cfg.sigma2)},
        {"tau2", function_spec_flag(cfg.tau2)},
        {"n_rule", cfg.n_rule.describe()},
        {"cutoff", cfg.cutoff.describe()},
        {"replications", std::to_string(cfg.replications)},
        {"seed", std::to_string(cfg.master_seed)},
    };
    if (report.rate) {
        write_csv(dir / "report_rate.csv", {"slope", "ci_lo", "ci_hi", "intercept"},
                  {{report.rate->slope}, {report.rate->ci_lo}, {report.rate->ci_hi},
                   {report.rate->intercept}});
        meta.emplace_back("slope", std::to_string(report.rate->slope));
        std::cout << "fitted log-log slope " << report.rate->slope << " [" << report.rate->ci_lo
                  << ", " << report.rate->ci_hi << "]\n";
    }
    write_key_value_file(dir / "config.meta.txt", meta);
    std::cout << "wrote " << (dir / "report.csv").string() << "\n";

    if (s.slope_bound) {
        if (!report.rate) {
            std::cerr << "scenario gate: no rate fit available (need >= 3 n values)\n";
            return 2;
        }
        if (report.rate->slope > *s.slope_bound) {
            std::cerr << "scenario gate failed: slope " << report.rate->slope << " > bound "
                      << *s.slope_bound << "\n";
            return 2;
        }
        std::cout << "scenario gate passed: slope " << report.rate->slope << " <= "
                  << *s.slope_bound << "\n";
    }
    return 0;
}

int run_replicate_figure(const std::string& id, std::uint64_t seed, const std::string& out_dir) {
    const FigureId fid = parse_figure_id(id);
    const fs::path dir = resolve_out(out_dir, "figures");
    const FigureResult r = replicate_figure(fid, seed, dir);
    std::cout << "figure " << id << ": oracle N tau=" << r.oracle_N_tau
              << " sigma=" << r.oracle_N_sigma << ", rel. L2 error tau2=" << r.rel_err_tau
              << " sigma2=" << r.rel_err_sigma << "\n";
    if (r.overshoot_max) {
        std::cout << "jump overshoot: max sigma2 on [0.4,0.6] = " << *r.overshoot_max
                  << " (diagnostic N), " << *r.overshoot_max_at_oracle << " (oracle N)\n";
    }
    std::cout << "panels in " << dir.string() << "\n";
    return 0;
}

int run_selfcheck() {
    struct Row {
        std::string name;
        double residual;
        double bound;
    };
    std::vector<Row> rows;

    for (int n : {8, 64, 256}) {
        rows.push_back({"diagonalization D*Lambda*D - K, n=" + std::to_string(n),
                        diagonalization_residual(n), 1e-10});
    }

    std::mt19937_64 rng(12345);
    auto rand_vec = [&rng](int m) {
        std::vector<double> v(static_cast<std::size_t>(m));
        for (auto& x : v) x = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
        return v;
    };

    for (int n : {16, 33, 100, 257, 512}) {
        const auto v = rand_vec(n - 1);
        const auto fast = dst_apply(v);
        const Eigen::MatrixXd D = dense_dst_matrix(n);
        Eigen::Map<const Eigen::VectorXd> vv(v.data(), n - 1);
        const Eigen::VectorXd dense = D * vv;
        double resid = 0.0;
        for (int i = 0; i < n - 1; ++i)
            resid = std::max(resid, std::abs(fast[static_cast<std::size_t>(i)] - dense(i)));
        rows.push_back({"fast vs dense DST, n=" + std::to_string(n), resid, 1e-10});
    }

    for (int m : {1, 2, 127, 1024, 4096}) {
        const auto v = rand_vec(m);
        const auto w = dst_apply(dst_apply(v));
        double resid = 0.0;
        for (int i = 0; i < m; ++i)
            resid = std::max(resid, std::abs(w[static_cast<std::size_t>(i)] -
                                             v[static_cast<std::size_t>(i)]));
        rows.push_back({"involution D(Dv)=v, len=" + std::to_string(m), resid, 1e-10});
    }

    // closed-form band sums via the Dirichlet kernel
    for (int n : {100, 10000}) {
        const int lo = n / 4;
        const int hi = n / 2;
        const double theta = kPi / n;
        auto csum = [theta](int a, int b) {
            return (std::sin((b + 0.5) * theta) - std::sin((a - 0.5) * theta)) /
                   (2.0 * std::sin(theta / 2.0));
        };
        const double closed = 2.0 * (hi - lo + 1) - 2.0 * csum(lo, hi);
        rows.push_back({"eigensum vs closed form, n=" + std::to_string(n),
                        std::abs(eigensum_band(n, lo, hi) - closed), 1e-9});
    }

    const auto sig2 = FunctionSpec::cosine(CosineSeries({2.0, 0.0, 0.5}));
    rows.push_back({"aliasing identity, n=16 k=0", aliasing_identity_residual(sig2, 0, 16), 1e-8});
    rows.push_back({"aliasing identity, n=32 k=3", aliasing_identity_residual(sig2, 3, 32), 1e-8});

    bool ok = true;
    std::cout << "selfcheck residuals:\n";
    for (const auto& r : rows) {
        const bool pass = r.residual <= r.bound;
        ok = ok && pass;
        std::cout << "  [" << (pass ? "ok" : "FAIL") << "] " << r.name << ": " << r.residual
                  << " (bound " << r.bound << ")\n";
    }
    return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("specvol: spectral series estimation of spot volatility and "
                             "microstructure-noise variance from noisy high-frequency "
                             "observations.\n") + kConventionNote};
    app.require_subcommand(1);

    // simulate
    std::string sim_model = "tbm";
    int sim_n = 25000;
    std::uint64_t sim_seed = 0;
    std::uint64_t sim_rep = 0;
    std::string sim_sigma2 = "const:1";
    std::string sim_tau2 = "const:0.01";
    std::string sim_noise = "gaussian";
    std::string sim_out;
    auto* sim = app.add_subcommand(
        "simulate", std::string("Draw one observation series Y_1..Y_n and write CSV i,t,y.\n") +
                        kConventionNote);
    std::string sim_config;
    sim->add_option("--config", sim_config,
                    "key=value file supplying any of the flags below (explicit flags win)");
    sim->add_option("--model", sim_model, "observation model: tbm or sbm");
    sim->add_option("--n", sim_n, "sample size (must exceed 16)");
    sim->add_option("--seed", sim_seed, "master seed");
    sim->add_option("--rep", sim_rep, "replication index within the seed's stream family");
    sim->add_option("--sigma2", sim_sigma2, "sigma^2 spec: const:c|cos:t0,t1,..|jump:lo,hi,at|file:path");
    sim->add_option("--tau2", sim_tau2, "tau^2 spec, same mini-language");
    sim->add_option("--noise", sim_noise, "noise law: gaussian or student-t3");
    sim->add_option("--out", sim_out, "output CSV path (default: $SPECVOL_OUT_DIR/observations.csv)");

    // estimate-tau / estimate-sigma
    std::string est_input;
    int est_N = 3;
    std::string est_cutoff = "standard";
    int est_grid = 1000;
    std::string est_out;
    auto add_estimate = [&](const char* name, const char* what) {
        auto* cmd = app.add_subcommand(
            name, std::string("Estimate ") + what + " as a cosine series from CSV observations.\n" +
                      kConventionNote);
        cmd->add_option("--input", est_input, "input CSV (i,t,y or a single column)")->required();
        cmd->add_option("--N", est_N, "series truncation level");
        cmd->add_option("--cutoff", est_cutoff,
                        "standard | tilde | custom:start (tau) / custom:lo,hi (sigma)");
        cmd->add_option("--grid", est_grid, "number of output grid cells on [0,1]");
        cmd->add_option("--out", est_out, "output CSV path (t,estimate)");
        return cmd;
    };
    auto* est_tau = add_estimate("estimate-tau", "the noise variance tau^2");
    auto* est_sigma = add_estimate("estimate-sigma", "the spot volatility sigma^2");

    // mise-sweep
    std::string sw_scenario = "custom";
    std::string sw_nlist = "1024,4096,16384";
    int sw_reps = 100;
    std::uint64_t sw_seed = 0;
    std::string sw_out;
    std::string sw_rule;
    std::string sw_kind;
    std::string sw_model = "tbm";
    std::string sw_sigma2;
    std::string sw_tau2;
    std::string sw_noise = "gaussian";
    int sw_threads = 0;
    auto* sweep = app.add_subcommand(
        "mise-sweep", std::string("Monte Carlo MISE sweep over n with a log-log rate fit; exits 2 "
                                  "when a scenario slope gate fails.\n") + kConventionNote);
    sweep->add_option("--scenario", sw_scenario,
                      "rate-tau|rate-sigma|fig2-tau|fig2-sigma|const-tau|custom");
    sweep->add_option("--n-list", sw_nlist, "comma-separated sample sizes");
    sweep->add_option("--reps", sw_reps, "replications per n");
    sweep->add_option("--seed", sw_seed, "master seed");
    sweep->add_option("--out", sw_out, "output directory");
    sweep->add_option("--n-rule", sw_rule, "oracle[:Nmax] | fixed:N | theoretic:smoothness");
    sweep->add_option("--kind", sw_kind, "tau or sigma (overrides scenario)");
    sweep->add_option("--model", sw_model, "tbm or sbm");
    sweep->add_option("--sigma2", sw_sigma2, "sigma^2 spec override");
    sweep->add_option("--tau2", sw_tau2, "tau^2 spec override");
    sweep->add_option("--noise", sw_noise, "gaussian or student-t3");
    sweep->add_option("--threads", sw_threads, "worker threads (0: hardware)");

    // replicate-figure
    std::string fig_id = "fig2";
    std::uint64_t fig_seed = 0;
    std::string fig_out;
    auto* fig = app.add_subcommand(
        "replicate-figure",
        std::string("Emit CSV panels for one of the four simulation scenarios.\n") +
            kConventionNote);
    fig->add_option("--id", fig_id, "fig2|fig3|fig4|fig5");
    fig->add_option("--seed", fig_seed, "scenario seed");
    fig->add_option("--out", fig_out, "output directory");

    // selfcheck
    auto* check = app.add_subcommand(
        "selfcheck", std::string("Run the transform/identity oracle suite and print residuals; "
                                 "exits 2 on any violation.\n") + kConventionNote);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (sim->parsed()) {
            if (!sim_config.empty()) {
                // file values fill in whatever was not given on the command line
                std::ifstream is(sim_config);
                if (!is) throw std::invalid_argument("cannot open config file '" + sim_config + "'");
                std::string line;
                int lineno = 0;
                while (std::getline(is, line)) {
                    ++lineno;
                    const auto stripped = line.substr(0, line.find('#'));
                    if (stripped.find_first_not_of(" \t\r\n") == std::string::npos) continue;
                    const auto eq = stripped.find('=');
                    if (eq == std::string::npos)
                        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                                    " lacks '=': '" + line + "'");
                    const auto key = stripped.substr(0, eq);
                    const auto value = stripped.substr(eq + 1);
                    if (key == "model" && sim->count("--model") == 0) sim_model = value;
                    else if (key == "n" && sim->count("--n") == 0) sim_n = std::stoi(value);
                    else if (key == "seed" && sim->count("--seed") == 0) sim_seed = std::stoull(value);
                    else if (key == "rep" && sim->count("--rep") == 0) sim_rep = std::stoull(value);
                    else if (key == "sigma2" && sim->count("--sigma2") == 0) sim_sigma2 = value;
                    else if (key == "tau2" && sim->count("--tau2") == 0) sim_tau2 = value;
                    else if (key == "noise" && sim->count("--noise") == 0) sim_noise = value;
                    else if (key == "out" && sim->count("--out") == 0) sim_out = value;
                    else if (key != "model" && key != "n" && key != "seed" && key != "rep" &&
                             key != "sigma2" && key != "tau2" && key != "noise" && key != "out")
                        throw std::invalid_argument("config file has unknown field '" + key + "'");
                }
            }
            return run_simulate(sim_model, sim_n, sim_seed, sim_sigma2, sim_tau2, sim_noise,
                                sim_rep, sim_out);
        }
        if (est_tau->parsed())
            return run_estimate(CoefficientEstimate::Kind::tau, est_input, est_N, est_cutoff,
                                est_grid, est_out);
        if (est_sigma->parsed())
            return run_estimate(CoefficientEstimate::Kind::sigma, est_input, est_N, est_cutoff,
                                est_grid, est_out);
        if (sweep->parsed())
            return run_mise_sweep(sw_scenario, sw_nlist, sw_reps, sw_seed, sw_out, sw_rule,
                                  sw_kind, sw_model, sw_sigma2, sw_tau2, sw_noise, sw_threads);
        if (fig->parsed()) return run_replicate_figure(fig_id, fig_seed, fig_out);
        if (check->parsed()) return run_selfcheck();
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
