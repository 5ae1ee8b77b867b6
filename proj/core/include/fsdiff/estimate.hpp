#ifndef FSDIFF_ESTIMATE_HPP
#define FSDIFF_ESTIMATE_HPP

#include "fsdiff/fsdist.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace fsdiff::estimate {

// symmetric 2x2 matrix
struct Matrix2 {
    double a11 = 0.0, a12 = 0.0, a22 = 0.0;
};

// Eq. (41): Pearson correlation over the pairs (X_i, X_{i+lag}) with
// separate lead/lag means and variances. Throws DegenerateSample when fewer
// than two pairs remain or either marginal variance vanishes.
double sample_acf(const std::vector<double>& x, std::size_t lag);

// theta_hat = -ln(rho_hat) / lag_time; NaN when rho_hat <= 0 (the caller
// reports the acf_non_positive warning)
double estimate_theta(double rho_hat, double lag_time);

// invert (m1, m2) -> (alpha, beta):
//   beta = 2 m1 / (m1 - 1),  alpha = 2 m1^2 / ((2 - m1) m2 - m1^2).
// Throws MomentInversionFailed outside the image of the moment map.
struct MomentEstimates {
    double m1, m2, alpha, beta;
};
MomentEstimates estimate_alpha_beta(double m1, double m2);

// Asymptotic covariance of sqrt(n) (m1_hat - m1, m2_hat - m2) for a
// stationary path observed every dt time units (Theorem 2(i), with the
// sigma_12 power typo corrected: beta^3, not beta^2). Requires beta > 8.
Matrix2 asymptotic_cov_m(const FsParams& p, double dt);

// Asymptotic covariance of sqrt(n) (alpha_hat - alpha, beta_hat - beta)
// in corrected closed form (Theorem 2(ii); see README for the erratum).
Matrix2 asymptotic_cov_ab(const FsParams& p, double dt);

// the same matrix through the delta-method product D Sigma_m D^T with the
// printed Jacobian D (cross-check route)
Matrix2 asymptotic_cov_ab_product(const FsParams& p, double dt);

// S^{-1/2} v for symmetric positive definite S (closed-form 2x2 square
// root); throws NotPositiveDefinite otherwise
std::array<double, 2> studentize(const Matrix2& S, double v1, double v2);

struct EstimationReport {
    std::size_t n = 0;
    double dt = 1.0;
    double m1 = 0.0, m2 = 0.0;
    double alpha_hat = 0.0, beta_hat = 0.0;
    std::size_t lag = 1;
    double lag_time = 1.0;
    double rho_hat = 0.0;
    double theta_hat = 0.0;            // NaN when the ACF estimate fails
    bool has_cov = false;
    Matrix2 cov_ab;                    // valid when has_cov
    double alpha_se = 0.0, beta_se = 0.0;
    double alpha_ci_lo = 0.0, alpha_ci_hi = 0.0;  // 95% CI
    double beta_ci_lo = 0.0, beta_ci_hi = 0.0;
    std::vector<std::string> warnings;
};

// full method-of-moments pass over a uniformly spaced path
EstimationReport estimate(const std::vector<double>& x, double dt,
                          std::size_t lag = 1);

} // namespace fsdiff::estimate

#endif
