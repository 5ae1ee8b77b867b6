#ifndef FSDIFF_FSDIST_HPP
#define FSDIFF_FSDIST_HPP

#include <cstdint>
#include <utility>
#include <vector>

namespace fsdiff {

// Parameter triple of the Fisher-Snedecor diffusion. Regime flags are
// computed, never assumed; each use-site checks the flag it needs.
struct FsParams {
    double alpha;
    double beta;
    double theta;

    FsParams(double alpha_, double beta_, double theta_);

    bool ergodic() const { return alpha > 2.0; }
    bool finite_variance() const { return beta > 4.0; }
    bool covariance_ok() const { return beta > 8.0; }
    // Theorem 1 hypothesis: alpha > 2 and alpha off the even lattice
    // {4, 6, 8, ...} within tolerance 1e-8
    bool spectral_ok() const;
};

namespace fsdist {

// log of the invariant FS(alpha, beta) density Eq. (8)
double log_pdf(const FsParams& p, double x);

// invariant density; 0 at x = 0 for alpha > 2, the finite limit at alpha = 2
double pdf(const FsParams& p, double x);

// CDF via the regularized incomplete beta (exact F-distribution identity)
double cdf(const FsParams& p, double x);

// E[X^n] = (beta/alpha)^n Gamma(a/2+n) Gamma(b/2-n) / (Gamma(a/2) Gamma(b/2)),
// requires beta > 2n
double moment(const FsParams& p, int n);

// same value through the printed first-order recurrence (cross-check route)
double moment_by_recurrence(const FsParams& p, int n);

// (mean, variance); variance requires beta > 4
std::pair<double, double> mean_var(const FsParams& p);

// i.i.d. draws X = (beta/alpha) G1/G2, G1 ~ Gamma(alpha/2), G2 ~ Gamma(beta/2)
std::vector<double> sample(const FsParams& p, std::size_t n, std::uint64_t seed);

} // namespace fsdist
} // namespace fsdiff

#endif
