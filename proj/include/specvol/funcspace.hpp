#pragma once

// Deterministic functions on [0,1], their cosine-basis coefficients, and the
// aliasing sums used as numerical oracles by the spectral estimators.
//
// The basis throughout is {1, sqrt(2) cos(k pi t), k >= 1}; a series with
// coefficients theta_0..theta_N evaluates as theta_0 + 2 sum theta_i cos(i pi t).

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace specvol {

inline constexpr double kPi = 3.14159265358979323846;

// Coefficients theta_0..theta_N w.r.t. the cosine basis on [0,1].
class CosineSeries {
public:
    CosineSeries() : theta_{0.0} {}
    explicit CosineSeries(std::vector<double> theta);

    // theta_0 + 2 sum_{i=1..N} theta_i cos(i pi t); t must lie in [0,1].
    double operator()(double t) const;

    std::size_t max_index() const { return theta_.size() - 1; }
    const std::vector<double>& coefficients() const { return theta_; }
    // Coefficients beyond the stored range are zero.
    double coefficient(std::size_t k) const { return k < theta_.size() ? theta_[k] : 0.0; }

private:
    std::vector<double> theta_;
};

double eval_series(const CosineSeries& s, double t);

// A deterministic function on [0,1] given as a constant, a cosine series, a
// jump function, or a tabulated path.  Tabulated values v_0..v_m live on the
// grid j/m and interpolate piecewise-constant to the left: t in [j/m,(j+1)/m)
// evaluates to v_j, t = 1 to v_m.  This matches the sampling convention of the
// observation models, where paths enter through their values at i/n.
class FunctionSpec {
public:
    struct Constant {
        double value;
    };
    struct Cosine {
        CosineSeries series;
    };
    struct Jump {
        double level_low;
        double level_high;
        double jump_point;  // value is level_low on [0, jump_point], level_high after
    };
    struct Tabulated {
        std::vector<double> values;  // size m+1, grid step 1/m
    };

    static FunctionSpec constant(double c);
    static FunctionSpec cosine(CosineSeries series);
    static FunctionSpec jump(double level_low, double level_high, double jump_point);
    static FunctionSpec tabulated(std::vector<double> values);

    double operator()(double t) const;

    // Points in (0,1) where the function is not smooth; quadrature splits here.
    std::vector<double> breakpoints() const;

    // True if evaluation at i/n, i = 0..n, is nonnegative (variance functions).
    bool nonnegative_on_grid(int n) const;

    const char* kind_name() const;

    template <typename T>
    const T* get_if() const {
        return std::get_if<T>(&node_);
    }

private:
    using Node = std::variant<Constant, Cosine, Jump, Tabulated>;
    explicit FunctionSpec(Node node) : node_(std::move(node)) {}
    Node node_;
};

// Adaptive Simpson quadrature to absolute tolerance tol; the overload with
// breakpoints splits the domain there first (discontinuities, grid cells).
double integrate(const std::function<double(double)>& f, double a, double b, double tol);
double integrate(const std::function<double(double)>& f, double a, double b, double tol,
                 std::span<const double> breakpoints);

// theta_k = int_0^1 f(x) cos(k pi x) dx for k = 0..max_k.
CosineSeries cosine_coeffs(const FunctionSpec& f, int max_k, double tol);

struct SobolevDiagnostics {
    double alpha;
    double weighted_sum;           // sum i^{2 alpha} theta_i^2 over stored coefficients
    std::optional<double> bound;   // optional reference ellipsoid radius
};

SobolevDiagnostics sobolev_weighted_sum(const CosineSeries& s, double alpha);

// Checks int_0^1 (f^(alpha))^2 dx = 2 pi^(2 alpha) sum k^(2 alpha) theta_k^2 for
// functions with the reflection boundary symmetry.  Returns (lhs, rhs).  The
// derivative is taken from `derivative` when given, otherwise by central finite
// differences on the evenly reflected extension of f.
std::pair<double, double> derivative_energy_identity(
    const FunctionSpec& f, int alpha, int max_k,
    std::optional<std::function<double(double)>> derivative = std::nullopt);

// Aliasing sum A(., r) of a coefficient sequence s_0..s_N at sample size n:
//   r = 0 mod 2n : s_0 + 2 sum_{m>=1} s_{2nm}
//   r = n mod 2n : sum_{m>=0} s_{2nm+n}
//   otherwise    : sum over q >= 0 with q = +-r mod 2n of s_q
// truncated at index trunc (trunc must be >= n).
double aliased_sum(const CosineSeries& theta, int r, int n, int trunc);

}  // namespace specvol
