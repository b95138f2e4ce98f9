#include "specvol/simulate.hpp"

#include <cmath>
#include <stdexcept>

namespace specvol {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::mt19937_64 make_engine(std::uint64_t master, std::uint64_t replication, std::uint64_t role) {
    std::uint64_t s = master;
    (void)splitmix64(s);
    s ^= 0xA0761D6478BD642Full + replication;
    (void)splitmix64(s);
    s ^= 0xE7037ED1A0B428DBull + role;
    std::uint32_t words[8];
    for (int i = 0; i < 4; ++i) {
        const std::uint64_t w = splitmix64(s);
        words[2 * i] = static_cast<std::uint32_t>(w);
        words[2 * i + 1] = static_cast<std::uint32_t>(w >> 32);
    }
    std::seed_seq seq(words, words + 8);
    return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t replication, StreamRole role)
    : engine_(make_engine(master_seed, replication, static_cast<std::uint64_t>(role))) {}

double RngStream::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // u1 in (0,1] keeps log finite
    const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * kPi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

double RngStream::student_t3() {
    const double z = normal();
    const double c1 = normal();
    const double c2 = normal();
    const double c3 = normal();
    return z / std::sqrt((c1 * c1 + c2 * c2 + c3 * c3) / 3.0);
}

double RngStream::draw(const NoiseLaw& law) {
    switch (law.kind) {
        case NoiseKind::gaussian: return normal();
        case NoiseKind::student_t3_normalized: return student_t3() / std::sqrt(3.0);
    }
    throw std::logic_error("unknown noise kind");
}

std::vector<double> tbm_increment_variances(const FunctionSpec& sigma2, int n) {
    if (n < 1) throw std::invalid_argument("tbm_increment_variances: n must be >= 1");
    const auto cuts = sigma2.breakpoints();
    std::vector<double> vars(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        const double a = static_cast<double>(i - 1) / n;
        const double b = static_cast<double>(i) / n;
        const double v =
            integrate([&sigma2](double s) { return sigma2(s); }, a, b, 1e-13, cuts);
        if (v < -1e-12)
            throw std::domain_error("tbm_increment_variances: sigma^2 integrates negative");
        vars[static_cast<std::size_t>(i) - 1] = std::max(v, 0.0);
    }
    return vars;
}

std::vector<double> simulate_tbm_increments(const FunctionSpec& sigma2, int n, RngStream& rng) {
    const auto vars = tbm_increment_variances(sigma2, n);
    std::vector<double> incr(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) incr[i] = std::sqrt(vars[i]) * rng.normal();
    return incr;
}

std::vector<double> simulate_sbm(const FunctionSpec& sigma2, int n, RngStream& rng) {
    if (n < 1) throw std::invalid_argument("simulate_sbm: n must be >= 1");
    const double sd = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<double> path(static_cast<std::size_t>(n));
    double w = 0.0;
    for (int i = 1; i <= n; ++i) {
        w += sd * rng.normal();
        const double s2 = sigma2(static_cast<double>(i) / n);
        if (s2 < 0.0) throw std::domain_error("simulate_sbm: sigma^2 negative at grid point");
        path[static_cast<std::size_t>(i) - 1] = std::sqrt(s2) * w;
    }
    return path;
}

ObservationSampler::ObservationSampler(Model model, FunctionSpec sigma2, FunctionSpec tau2,
                                       NoiseLaw noise, int n, std::uint64_t seed)
    : model_(model),
      sigma2_(std::move(sigma2)),
      tau2_(std::move(tau2)),
      noise_(noise),
      n_(n),
      seed_(seed) {
    if (n <= 16) throw std::invalid_argument("ObservationSampler: n must exceed 16");

    if (model_ == Model::tbm) {
        const auto vars = tbm_increment_variances(sigma2_, n_);
        incr_sd_.resize(vars.size());
        for (std::size_t i = 0; i < vars.size(); ++i) incr_sd_[i] = std::sqrt(vars[i]);
    } else {
        sigma_at_.resize(static_cast<std::size_t>(n_));
        for (int i = 1; i <= n_; ++i) {
            const double s2 = sigma2_(static_cast<double>(i) / n_);
            if (s2 < 0.0) throw std::domain_error("ObservationSampler: sigma^2 negative at i/n");
            sigma_at_[static_cast<std::size_t>(i) - 1] = std::sqrt(s2);
        }
    }
    tau_at_.resize(static_cast<std::size_t>(n_));
    for (int i = 1; i <= n_; ++i) {
        const double t2 = tau2_(static_cast<double>(i) / n_);
        if (t2 < 0.0) throw std::domain_error("ObservationSampler: tau^2 negative at i/n");
        tau_at_[static_cast<std::size_t>(i) - 1] = std::sqrt(t2);
    }
}

ObservationSeries ObservationSampler::draw(std::uint64_t replication) const {
    return draw(replication, nullptr);
}

ObservationSeries ObservationSampler::draw(std::uint64_t replication,
                                           std::vector<double>* latent_out) const {
    RngStream w_stream(seed_, replication, StreamRole::brownian);
    RngStream e_stream(seed_, replication, StreamRole::noise);

    std::vector<double> y(static_cast<std::size_t>(n_));
    if (model_ == Model::tbm) {
        double x = 0.0;
        for (int i = 0; i < n_; ++i) {
            x += incr_sd_[static_cast<std::size_t>(i)] * w_stream.normal();
            y[static_cast<std::size_t>(i)] = x;
        }
    } else {
        const double sd = 1.0 / std::sqrt(static_cast<double>(n_));
        double w = 0.0;
        for (int i = 0; i < n_; ++i) {
            w += sd * w_stream.normal();
            y[static_cast<std::size_t>(i)] = sigma_at_[static_cast<std::size_t>(i)] * w;
        }
    }
    if (latent_out != nullptr) *latent_out = y;
    for (int i = 0; i < n_; ++i) {
        y[static_cast<std::size_t>(i)] += tau_at_[static_cast<std::size_t>(i)] * e_stream.draw(noise_);
    }
    return ObservationSeries{std::move(y), n_, model_, seed_, sigma2_, tau2_};
}

ObservationSeries observe(Model model, const FunctionSpec& sigma2, const FunctionSpec& tau2,
                          const NoiseLaw& noise, int n, std::uint64_t seed,
                          std::uint64_t replication) {
    return ObservationSampler(model, sigma2, tau2, noise, n, seed).draw(replication);
}

double variogram_sbm(double s, double t, const FunctionSpec& sigma2) {
    const double ss = sigma2(s);
    const double st = sigma2(t);
    if (ss < 0.0 || st < 0.0) throw std::domain_error("variogram_sbm: sigma^2 negative");
    const double sig_s = std::sqrt(ss);
    const double sig_t = std::sqrt(st);
    const double rs = std::sqrt(s);
    const double rt = std::sqrt(t);
    const double scaled = sig_t * rt - sig_s * rs;
    return scaled * scaled + sig_t * sig_s * (std::abs(s - t) - (rs - rt) * (rs - rt));
}

}  // namespace specvol
