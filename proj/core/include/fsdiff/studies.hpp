#ifndef FSDIFF_STUDIES_HPP
#define FSDIFF_STUDIES_HPP

#include "fsdiff/fsdist.hpp"

#include <cstdint>
#include <vector>

namespace fsdiff::studies {

// Monte Carlo replication drivers behind `replicate` and the acceptance
// studies. All reductions are deterministic: per-replication seeds derive
// from the base seed and the replication index alone, and rows are stored
// by index regardless of worker scheduling. Worker count defaults to 1 and
// can be raised via the FSDIFF_THREADS environment variable.

int worker_count();

// CLT / confidence-interval coverage for the moment estimators at
// (alpha, beta, theta) = (5, 20, 1), unit observation spacing.
struct CoverageRow {
    double alpha_hat, beta_hat;
    double z_alpha, z_beta;   // studentized errors (estimated covariance)
    bool cover_alpha, cover_beta;
};
struct CoverageStudy {
    std::vector<CoverageRow> rows;
    double coverage_alpha, coverage_beta;
    double ks_alpha, ks_beta;  // KS distance of z's vs standard normal
};
CoverageStudy run_coverage_study(int reps, std::size_t n_obs,
                                 std::uint64_t seed);

// theta_hat consistency at theta = 0.5, unit spacing, lag 1
struct ThetaStudy {
    std::vector<double> theta_hat;
    double frac_within;  // fraction with |theta_hat - theta| <= tol
    double tol = 0.05;
};
ThetaStudy run_theta_study(int reps, std::size_t n_obs, std::uint64_t seed);

// GoF size under H0 at (5, 20, 1): p-values for the single test (m = 1)
// and the joint test (m = 2) from the same replication samples
struct SizeStudy {
    std::vector<double> p_m1, p_m2;
    double reject_rate_m1, reject_rate_m2;  // at nominal 5%
};
SizeStudy run_size_study(int reps, std::size_t n_obs, std::uint64_t seed);

// GoF power against i.i.d. Gamma(shape 2) data with the mean matched to
// FS(5, 20); joint test with m = 2 against (5, 20, 1)
struct PowerStudy {
    std::vector<double> p_values;
    double reject_rate;  // at nominal 5%
};
PowerStudy run_power_study(int reps, std::size_t n_obs, std::uint64_t seed);

// empirical KS distance of a sample against the standard normal CDF
double ks_vs_normal(std::vector<double> z);

} // namespace fsdiff::studies

#endif
