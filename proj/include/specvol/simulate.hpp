#pragma once

// Exact-law simulation of the two observation models on the grid i/n:
//
//   tBM:  Y_i = int_0^{i/n} sigma(s) dW_s + tau(i/n) eps_i
//   sBM:  Y_i = sigma(i/n) W_{i/n}        + tau(i/n) eps_i
//
// tBM paths come from independent Gaussian increments whose variances are the
// exact integrals of sigma^2 over each grid cell, so estimator tests carry no
// discretization bias.  RNG streams are keyed by (master seed, replication,
// role); regenerating with the same key reproduces a series bit-exactly and
// independently of any thread fan-out.

#include <cstdint>
#include <random>
#include <vector>

#include "specvol/funcspace.hpp"

namespace specvol {

enum class Model { tbm, sbm };

enum class NoiseKind {
    gaussian,               // N(0,1)
    student_t3_normalized,  // t(3)/sqrt(3): unit variance, infinite fourth moment
};

struct NoiseLaw {
    NoiseKind kind = NoiseKind::gaussian;
};

enum class StreamRole : std::uint64_t {
    brownian = 1,
    noise = 2,
    sigma_path = 3,
};

// Deterministic substream of a counter-keyed family.  The key mixes
// (master seed, replication index, role) through SplitMix64 before seeding a
// fully specified mt19937_64, so distinct keys give independent streams and
// the draw sequence is identical across platforms and thread counts.  Gaussian
// draws use Box-Muller on the raw bits rather than std::normal_distribution,
// whose algorithm is implementation-defined.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t replication, StreamRole role);

    std::uint64_t next_u64() { return engine_(); }
    double uniform();    // [0,1)
    double normal();     // N(0,1)
    double student_t3(); // t(3), infinite fourth moment
    double draw(const NoiseLaw& law);

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Exact per-cell variances int_{(i-1)/n}^{i/n} sigma2(s) ds, i = 1..n.
std::vector<double> tbm_increment_variances(const FunctionSpec& sigma2, int n);

// Independent Gaussian increments of the tBM latent path (length n).
std::vector<double> simulate_tbm_increments(const FunctionSpec& sigma2, int n, RngStream& rng);

// sigma(i/n) W_{i/n}, i = 1..n, with W a standard Brownian motion.
std::vector<double> simulate_sbm(const FunctionSpec& sigma2, int n, RngStream& rng);

struct ObservationSeries {
    std::vector<double> y;  // Y_1..Y_n
    int n = 0;
    Model model = Model::tbm;
    std::uint64_t seed = 0;
    FunctionSpec sigma2 = FunctionSpec::constant(0.0);
    FunctionSpec tau2 = FunctionSpec::constant(0.0);
};

// Precomputes the deterministic part of a scenario (cell variances, grid
// values) once, then draws independent replications cheaply.  draw() is const
// and safe to call concurrently; each replication owns its streams.
class ObservationSampler {
public:
    ObservationSampler(Model model, FunctionSpec sigma2, FunctionSpec tau2, NoiseLaw noise, int n,
                       std::uint64_t seed);

    ObservationSeries draw(std::uint64_t replication) const;
    // As draw(), also exposing the latent path X_{i/n} (same streams, same y).
    ObservationSeries draw(std::uint64_t replication, std::vector<double>* latent_out) const;

    int n() const { return n_; }
    const FunctionSpec& sigma2() const { return sigma2_; }
    const FunctionSpec& tau2() const { return tau2_; }

private:
    Model model_;
    FunctionSpec sigma2_;
    FunctionSpec tau2_;
    NoiseLaw noise_;
    int n_;
    std::uint64_t seed_;
    std::vector<double> incr_sd_;   // tBM: sqrt of exact cell variances
    std::vector<double> sigma_at_;  // sBM: sigma(i/n)
    std::vector<double> tau_at_;    // tau(i/n)
};

// One-shot convenience over ObservationSampler; n must exceed 16.
ObservationSeries observe(Model model, const FunctionSpec& sigma2, const FunctionSpec& tau2,
                          const NoiseLaw& noise, int n, std::uint64_t seed,
                          std::uint64_t replication = 0);

// Variogram E(X_t - X_s)^2 of sBM:
//   (sigma(t) t^{1/2} - sigma(s) s^{1/2})^2
//   + sigma(t) sigma(s) [ |s-t| - (s^{1/2} - t^{1/2})^2 ]
double variogram_sbm(double s, double t, const FunctionSpec& sigma2);

}  // namespace specvol
