#pragma once

// Sine-transform core shared by both estimators: the involutory matrix
// D_{ij} = sqrt(2/n) sin(ij pi / n) on vectors of length n-1, the eigenvalues
// lambda_i = 4 sin^2(i pi / (2n)) of the MA(1) difference covariance K
// (tridiagonal 2/-1), and weighted quadratic forms in the spectral domain.
//
// dst_apply runs through an odd-extension real FFT of length 2n, so one call
// costs O(n log n); the dense matrix never materializes outside oracle paths.

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "specvol/funcspace.hpp"

namespace specvol {

// Eigenvalues lambda_1..lambda_{n-1} of K, from the closed form.
class SpectralGrid {
public:
    explicit SpectralGrid(int n);

    int n() const { return n_; }
    // 1-based index, i in 1..n-1.
    double lambda(int i) const;
    const std::vector<double>& lambdas() const { return lambdas_; }

private:
    int n_;
    std::vector<double> lambdas_;
};

enum class Domain { time, spectral };

// Difference vector Delta Y^k (time domain) or Z = D Delta Y^k (spectral).
struct DifferenceVector {
    std::vector<double> z;  // length n-1
    int k = 0;              // modulation index
    Domain domain = Domain::time;
};

// Applies D to v (length n-1 determines n).  D is involutory: applying twice
// returns the input up to rounding.
std::vector<double> dst_apply(std::span<const double> v);

// Dense D matrix; oracle/test path only (n capped at 512).
Eigen::MatrixXd dense_dst_matrix(int n);

// Tridiagonal covariance of first differences of i.i.d. noise: 2 on the
// diagonal, -1 off.  Requires n > 2.
Eigen::MatrixXd build_K(int n);

// Max-abs entry of D Lambda D - K; small n only (matrices materialize).
double diagonalization_residual(int n);

// sum_i w_i z_i^2 over matching-length vectors.
double weighted_quadratic_form(std::span<const double> z_spectral,
                               std::span<const double> weights);
double weighted_quadratic_form(const DifferenceVector& z, std::span<const double> weights);

// sum of lambda_i over the 1-based band lo..hi.
double eigensum_band(int n, int lo, int hi);

// Entrywise residual of (D Sigma_k^2 D)_{ij} = A(sigma_k^2, i-j) - A(sigma_k^2, i+j)
// with Sigma_k = diag(sigma_k(i/n)) and the aliasing sums truncated at 8n.
double aliasing_identity_residual(const FunctionSpec& sigma2, int k, int n);

}  // namespace specvol
