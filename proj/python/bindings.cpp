#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "specvol/estimators.hpp"
#include "specvol/harness.hpp"
#include "specvol/io.hpp"
#include "specvol/simulate.hpp"
#include "specvol/spectral.hpp"

namespace py = pybind11;
using namespace specvol;

namespace {

std::vector<double> to_vector(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 1) throw std::invalid_argument("expected a one-dimensional array");
    return std::vector<double>(a.data(), a.data() + a.shape(0));
}

py::array_t<double> to_array(const std::vector<double>& v) {
    return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

Model model_from(const std::string& s) {
    if (s == "tbm") return Model::tbm;
    if (s == "sbm") return Model::sbm;
    throw std::invalid_argument("model must be 'tbm' or 'sbm'");
}

NoiseKind noise_from(const std::string& s) {
    if (s == "gaussian") return NoiseKind::gaussian;
    if (s == "student-t3") return NoiseKind::student_t3_normalized;
    throw std::invalid_argument("noise must be 'gaussian' or 'student-t3'");
}

CoefficientEstimate::Kind kind_from(const std::string& s) {
    if (s == "tau") return CoefficientEstimate::Kind::tau;
    if (s == "sigma") return CoefficientEstimate::Kind::sigma;
    throw std::invalid_argument("kind must be 'tau' or 'sigma'");
}

CutoffConfig cutoff_from(const std::string& s, CoefficientEstimate::Kind kind) {
    if (s == "standard") return CutoffConfig::standard();
    if (s == "tilde") return CutoffConfig::tilde();
    if (s.rfind("custom:", 0) == 0) {
        const std::string body = s.substr(7);
        const auto comma = body.find(',');
        if (kind == CoefficientEstimate::Kind::tau) {
            return CutoffConfig::custom_tau(std::stoi(body));
        }
        if (comma == std::string::npos)
            throw std::invalid_argument("sigma cutoff needs 'custom:lo,hi'");
        return CutoffConfig::custom_band(std::stoi(body.substr(0, comma)),
                                         std::stoi(body.substr(comma + 1)));
    }
    throw std::invalid_argument("cutoff must be 'standard', 'tilde' or 'custom:...'");
}

ObservationSeries obs_from(const py::array_t<double, py::array::c_style | py::array::forcecast>& y) {
    ObservationSeries obs;
    obs.y = to_vector(y);
    obs.n = static_cast<int>(obs.y.size());
    return obs;
}

}  // namespace

PYBIND11_MODULE(_specvol, m) {
    m.doc() =
        "Spectral cosine-series estimation of the spot-volatility function sigma^2(t) and the "
        "microstructure-noise variance tau^2(t) from noisy scaled-Brownian observations.\n\n"
        "Function arguments written as strings use the mini-language "
        "'const:c', 'cos:theta0,theta1,...', 'jump:low,high,point', 'file:path'.\n"
        "Cut-off conventions: log() is the binary logarithm; the noise filter averages "
        "spectral frequencies [n/log2 n]..n-1, the volatility band is [sqrt n]+1..2[sqrt n] "
        "with bias constant 7 pi^2/3.";

    m.def(
        "dst",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& v) {
            return to_array(dst_apply(to_vector(v)));
        },
        py::arg("v"),
        "Apply the involutory sine transform D (length m implies grid size n = m + 1).");

    m.def(
        "eval_series",
        [](const std::vector<double>& theta, double t) { return CosineSeries(theta)(t); },
        py::arg("theta"), py::arg("t"),
        "Evaluate theta_0 + 2 sum theta_i cos(i pi t) at t in [0, 1].");

    m.def(
        "cosine_coeffs",
        [](const std::string& spec, int max_k, double tol) {
            return to_array(cosine_coeffs(parse_function_spec(spec), max_k, tol).coefficients());
        },
        py::arg("function"), py::arg("max_k"), py::arg("tol") = 1e-10,
        "Cosine-basis coefficients of a function on [0, 1] by adaptive quadrature.");

    m.def(
        "sobolev_weighted_sum",
        [](const std::vector<double>& theta, double alpha) {
            return sobolev_weighted_sum(CosineSeries(theta), alpha).weighted_sum;
        },
        py::arg("theta"), py::arg("alpha"), "sum_i i^{2 alpha} theta_i^2 over the coefficients.");

    m.def(
        "aliased_sum",
        [](const std::vector<double>& theta, int r, int n, int trunc) {
            return aliased_sum(CosineSeries(theta), r, n, trunc);
        },
        py::arg("theta"), py::arg("r"), py::arg("n"), py::arg("trunc"),
        "Aliasing sum A(., r) of a coefficient sequence at sample size n.");

    m.def("eigensum_band", &eigensum_band, py::arg("n"), py::arg("lo"), py::arg("hi"),
          "Sum of lambda_i = 4 sin^2(i pi / 2n) over the 1-based band lo..hi.");

    m.def("diagonalization_residual", &diagonalization_residual, py::arg("n"),
          "Max-abs entry of D*Lambda*D - K (small n).");

    m.def(
        "build_k",
        [](int n) {
            const Eigen::MatrixXd K = build_K(n);
            py::array_t<double> out({K.rows(), K.cols()});
            for (Eigen::Index i = 0; i < K.rows(); ++i)
                for (Eigen::Index j = 0; j < K.cols(); ++j) out.mutable_at(i, j) = K(i, j);
            return out;
        },
        py::arg("n"), "Tridiagonal difference covariance K (2 / -1), shape (n-1, n-1).");

    m.def(
        "simulate",
        [](const std::string& model, const std::string& sigma2, const std::string& tau2,
           const std::string& noise, int n, std::uint64_t seed, std::uint64_t rep) {
            const auto obs =
                observe(model_from(model), parse_function_spec(sigma2),
                        parse_function_spec(tau2), NoiseLaw{noise_from(noise)}, n, seed, rep);
            return to_array(obs.y);
        },
        py::arg("model"), py::arg("sigma2"), py::arg("tau2"), py::arg("noise"), py::arg("n"),
        py::arg("seed"), py::arg("rep") = 0,
        "Draw one observation series Y_1..Y_n from the tbm or sbm model.");

    m.def(
        "variogram_sbm",
        [](double s, double t, const std::string& sigma2) {
            return variogram_sbm(s, t, parse_function_spec(sigma2));
        },
        py::arg("s"), py::arg("t"), py::arg("sigma2"), "Analytic variogram E(X_t - X_s)^2 of sBM.");

    m.def(
        "estimate_tau",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& y, int N,
           const std::string& cutoff) {
            const auto obs = obs_from(y);
            const auto cut = cutoff_from(cutoff, CoefficientEstimate::Kind::tau);
            return to_array(estimate_tau_series(obs, N, cut).coefficients());
        },
        py::arg("y"), py::arg("N"), py::arg("cutoff") = "standard",
        "Cosine coefficients of the noise-variance series estimator tau^2_N.");

    m.def(
        "estimate_sigma",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& y, int N,
           const std::string& cutoff) {
            const auto obs = obs_from(y);
            const auto cut = cutoff_from(cutoff, CoefficientEstimate::Kind::sigma);
            return to_array(estimate_sigma_series(obs, N, cut).coefficients());
        },
        py::arg("y"), py::arg("N"), py::arg("cutoff") = "standard",
        "Cosine coefficients of the spot-volatility series estimator sigma^2_N.");

    m.def(
        "oracle_threshold",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& y,
           const std::string& truth, const std::string& kind, int N_max,
           const std::string& cutoff) {
            const auto k = kind_from(kind);
            return oracle_threshold(obs_from(y), parse_function_spec(truth), k, N_max,
                                    cutoff_from(cutoff, k));
        },
        py::arg("y"), py::arg("truth"), py::arg("kind"), py::arg("N_max"),
        py::arg("cutoff") = "standard",
        "Truncation level minimizing the empirical grid error against a known truth.");

    m.def(
        "normality_check",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& samples) {
            const auto v = to_vector(samples);
            const auto r = normality_check(v);
            return py::make_tuple(r.skewness, r.excess_kurtosis, r.pass);
        },
        py::arg("samples"), "(skewness, excess kurtosis, pass) of a sample.");

    m.def(
        "rate_fit",
        [](const std::vector<double>& ns, const std::vector<double>& mises) {
            const auto fit = rate_fit(ns, mises);
            py::dict d;
            d["slope"] = fit.slope;
            d["ci"] = py::make_tuple(fit.ci_lo, fit.ci_hi);
            d["intercept"] = fit.intercept;
            return d;
        },
        py::arg("ns"), py::arg("mises"), "OLS log-log rate fit with a 95% CI.");

    m.def(
        "run_figure",
        [](const std::string& id, std::uint64_t seed) {
            const auto r = run_figure(parse_figure_id(id), seed);
            py::dict d;
            d["oracle_N_tau"] = r.oracle_N_tau;
            d["oracle_N_sigma"] = r.oracle_N_sigma;
            d["rel_err_tau"] = r.rel_err_tau;
            d["rel_err_sigma"] = r.rel_err_sigma;
            if (r.overshoot_max) d["overshoot_max"] = *r.overshoot_max;
            return d;
        },
        py::arg("id"), py::arg("seed"),
        "Run one simulation scenario (fig2..fig5) and return its summary statistics.");

    m.attr("__version__") = "0.1.0";
}
