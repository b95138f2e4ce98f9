#include "specvol/funcspace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace specvol {

CosineSeries::CosineSeries(std::vector<double> theta) : theta_(std::move(theta)) {
    if (theta_.empty()) throw std::invalid_argument("CosineSeries: need at least theta_0");
    for (double v : theta_) {
        if (!std::isfinite(v)) throw std::invalid_argument("CosineSeries: non-finite coefficient");
    }
}

double CosineSeries::operator()(double t) const {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("CosineSeries: t must lie in [0,1]");
    double acc = theta_[0];
    for (std::size_t i = 1; i < theta_.size(); ++i) {
        acc += 2.0 * theta_[i] * std::cos(static_cast<double>(i) * kPi * t);
    }
    return acc;
}

double eval_series(const CosineSeries& s, double t) { return s(t); }

FunctionSpec FunctionSpec::constant(double c) { return FunctionSpec(Node{Constant{c}}); }

FunctionSpec FunctionSpec::cosine(CosineSeries series) {
    return FunctionSpec(Node{Cosine{std::move(series)}});
}

FunctionSpec FunctionSpec::jump(double level_low, double level_high, double jump_point) {
    if (!(jump_point > 0.0 && jump_point < 1.0))
        throw std::invalid_argument("FunctionSpec::jump: jump_point must lie in (0,1)");
    return FunctionSpec(Node{Jump{level_low, level_high, jump_point}});
}

FunctionSpec FunctionSpec::tabulated(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("FunctionSpec::tabulated: empty value grid");
    return FunctionSpec(Node{Tabulated{std::move(values)}});
}

double FunctionSpec::operator()(double t) const {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("FunctionSpec: t must lie in [0,1]");
    return std::visit(
        [t](const auto& fn) -> double {
            using T = std::decay_t<decltype(fn)>;
            if constexpr (std::is_same_v<T, Constant>) {
                return fn.value;
            } else if constexpr (std::is_same_v<T, Cosine>) {
                return fn.series(t);
            } else if constexpr (std::is_same_v<T, Jump>) {
                return t > fn.jump_point ? fn.level_high : fn.level_low;
            } else {
                const auto& v = fn.values;
                if (v.size() == 1) return v[0];
                const auto m = v.size() - 1;
                // epsilon keeps grid points i/m from rounding into the cell below
                auto j = static_cast<std::size_t>(t * static_cast<double>(m) + 1e-9);
                if (j > m) j = m;
                return v[j];
            }
        },
        node_);
}

std::vector<double> FunctionSpec::breakpoints() const {
    return std::visit(
        [](const auto& fn) -> std::vector<double> {
            using T = std::decay_t<decltype(fn)>;
            if constexpr (std::is_same_v<T, Jump>) {
                return {fn.jump_point};
            } else if constexpr (std::is_same_v<T, Tabulated>) {
                const auto m = fn.values.size() - 1;
                std::vector<double> pts;
                pts.reserve(m > 0 ? m - 1 : 0);
                for (std::size_t j = 1; j < m; ++j)
                    pts.push_back(static_cast<double>(j) / static_cast<double>(m));
                return pts;
            } else {
                return {};
            }
        },
        node_);
}

bool FunctionSpec::nonnegative_on_grid(int n) const {
    for (int i = 0; i <= n; ++i) {
        if ((*this)(static_cast<double>(i) / n) < 0.0) return false;
    }
    return true;
}

const char* FunctionSpec::kind_name() const {
    switch (node_.index()) {
        case 0: return "constant";
        case 1: return "cosine";
        case 2: return "jump";
        default: return "tabulated";
    }
}

namespace {

double simpson(double fa, double fm, double fb, double h) { return h / 6.0 * (fa + 4.0 * fm + fb); }

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_smooth(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = simpson(fa, fm, fb, b - a);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    return integrate(f, a, b, tol, {});
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol,
                 std::span<const double> breakpoints) {
    if (!(tol > 0.0)) throw std::invalid_argument("integrate: tol must be positive");
    if (b < a) return -integrate(f, b, a, tol, breakpoints);

    std::vector<double> cuts;
    for (double p : breakpoints) {
        if (p > a && p < b) cuts.push_back(p);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const double pieces = static_cast<double>(cuts.size() + 1);
    double acc = 0.0;
    double lo = a;
    for (double p : cuts) {
        acc += integrate_smooth(f, lo, p, tol / pieces);
        lo = p;
    }
    acc += integrate_smooth(f, lo, b, tol / pieces);
    return acc;
}

CosineSeries cosine_coeffs(const FunctionSpec& f, int max_k, double tol) {
    if (max_k < 0) throw std::invalid_argument("cosine_coeffs: max_k must be >= 0");
    if (!(tol > 0.0)) throw std::invalid_argument("cosine_coeffs: tol must be positive");
    const auto base_cuts = f.breakpoints();
    std::vector<double> theta(static_cast<std::size_t>(max_k) + 1);
    for (int k = 0; k <= max_k; ++k) {
        const double kk = static_cast<double>(k);
        // split at quarter periods of cos(k pi x) so the adaptive rule cannot
        // terminate early on cancelling oscillations
        std::vector<double> cuts = base_cuts;
        for (int j = 1; j < 2 * k; ++j) cuts.push_back(j / (2.0 * kk));
        theta[static_cast<std::size_t>(k)] = integrate(
            [&f, kk](double x) { return f(x) * std::cos(kk * kPi * x); }, 0.0, 1.0, tol, cuts);
    }
    return CosineSeries(std::move(theta));
}

SobolevDiagnostics sobolev_weighted_sum(const CosineSeries& s, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("sobolev_weighted_sum: alpha must be positive");
    double acc = 0.0;
    const auto& theta = s.coefficients();
    for (std::size_t i = 1; i < theta.size(); ++i) {
        acc += std::pow(static_cast<double>(i), 2.0 * alpha) * theta[i] * theta[i];
    }
    return SobolevDiagnostics{alpha, acc, std::nullopt};
}

namespace {

// Even reflection of f about both endpoints; exact for functions with the
// boundary symmetry of the cosine basis.
double eval_reflected(const FunctionSpec& f, double t) {
    t = std::fmod(std::abs(t), 2.0);
    if (t > 1.0) t = 2.0 - t;
    return f(t);
}

// Central finite-difference derivative of order `alpha` on the reflected
// extension.  Coefficients are iterated first differences over step h.
double fd_derivative(const FunctionSpec& f, int alpha, double x, double h) {
    // binomial stencil: f^(a)(x) ~ h^-a * sum_j (-1)^j C(a,j) f(x + (a/2 - j) h)
    double acc = 0.0;
    double binom = 1.0;
    for (int j = 0; j <= alpha; ++j) {
        const double xj = x + (0.5 * alpha - j) * h;
        acc += ((j % 2 == 0) ? binom : -binom) * eval_reflected(f, xj);
        binom = binom * (alpha - j) / (j + 1.0);
    }
    return acc / std::pow(h, alpha);
}

}  // namespace

std::pair<double, double> derivative_energy_identity(
    const FunctionSpec& f, int alpha, int max_k,
    std::optional<std::function<double(double)>> derivative) {
    if (alpha < 1) throw std::invalid_argument("derivative_energy_identity: alpha must be >= 1");
    if (max_k < 0) throw std::invalid_argument("derivative_energy_identity: max_k must be >= 0");

    double lhs;
    if (derivative) {
        const auto& d = *derivative;
        lhs = integrate([&d](double x) { return d(x) * d(x); }, 0.0, 1.0, 1e-12);
    } else {
        // step tuned for the double rounding / truncation tradeoff of the stencil
        const double h = std::pow(2.0, -std::clamp(17 - 2 * alpha, 6, 15));
        const int grid = 4096;
        double acc = 0.0;
        for (int i = 0; i < grid; ++i) {
            const double x = (i + 0.5) / grid;
            const double g = fd_derivative(f, alpha, x, h);
            acc += g * g;
        }
        lhs = acc / grid;
    }

    const CosineSeries theta = cosine_coeffs(f, max_k, 1e-12);
    double sum = 0.0;
    for (std::size_t k = 1; k < theta.coefficients().size(); ++k) {
        sum += std::pow(static_cast<double>(k), 2.0 * alpha) * theta.coefficient(k) *
               theta.coefficient(k);
    }
    const double rhs = 2.0 * std::pow(kPi, 2.0 * alpha) * sum;
    return {lhs, rhs};
}

double aliased_sum(const CosineSeries& theta, int r, int n, int trunc) {
    if (n <= 1) throw std::invalid_argument("aliased_sum: n must exceed 1");
    if (trunc < n) throw std::invalid_argument("aliased_sum: trunc must be >= n");

    const int period = 2 * n;
    int rm = r % period;
    if (rm < 0) rm += period;

    double acc = 0.0;
    if (rm == 0) {
        acc = theta.coefficient(0);
        for (int q = period; q <= trunc; q += period) acc += 2.0 * theta.coefficient(q);
    } else if (rm == n) {
        for (int q = n; q <= trunc; q += period) acc += theta.coefficient(q);
    } else {
        for (int q = rm; q <= trunc; q += period) acc += theta.coefficient(q);
        for (int q = period - rm; q <= trunc; q += period) acc += theta.coefficient(q);
    }
    return acc;
}

}  // namespace specvol
