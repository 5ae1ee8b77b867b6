#ifndef FSDIFF_SPECTRAL_HPP
#define FSDIFF_SPECTRAL_HPP

#include "fsdiff/fsdist.hpp"
#include "fsdiff/fspoly.hpp"

#include <complex>
#include <vector>

namespace fsdiff::spectral {

// spectral cutoff Lambda = theta beta^2 / (8 (beta - 2))  (Eq. (23))
double cutoff(const FsParams& p);

// context for transition-density evaluation
struct SpectralContext {
    FsParams params;
    int N;                             // largest normalizable degree (4n < beta)
    std::vector<double> eigenvalues;   // lambda_0..lambda_N, Eq. (24)
    double cutoff;                     // Lambda, Eq. (23)
    std::vector<fspoly::FsPolynomial> polys;
};

// throws SpectralHypothesisViolated unless params.spectral_ok()
SpectralContext make_context(const FsParams& p);

// connection machinery of Eqs. (17)-(19)
struct ContinuationCoeffs {
    std::complex<double> z_plus, z_minus;   // roots -beta/4 +- Delta
    std::complex<double> u_plus, u_minus;   // 1 - alpha/2 + z_{+-}
    std::complex<double> delta;             // Delta = sqrt(beta^2/16 - lambda (beta-2)/(2 theta))
    std::complex<double> B_coef, A_coef;    // gamma-ratio constants of Eq. (19)
    std::complex<double> k_of_lambda;       // k = -i Delta (real positive above cutoff)
};
ContinuationCoeffs continuation_coeffs(const FsParams& p, double lambda);

// increasing fundamental solution f1 (Eq. (20)); real for real x at every
// lambda >= 0 (conjugate parameters above the cutoff)
double f1(const FsParams& p, double lambda, double x);

// decreasing solution f4 (Eq. (22)); diagnostic only. Requires lambda < Lambda
// and alpha x > beta (series argument inside the unit disk), else
// OutsideConvergence.
double f4(const FsParams& p, double lambda, double x);

// Gauss-Legendre discretization of the continuous-spectrum integral for a
// fixed t, parameterized by lambda = Lambda + 2 theta k^2/(beta-2) (Eq. (25)).
// Weights fold in the spectral weight, the Jacobian, the exponential damping
// and the overall constant, so
//   p_c(x; x0, t) = fs(x) * sum_i w[i] f1(x0, k[i]) f1(x, k[i]).
struct ContinuumQuadrature {
    double t = 0.0;
    std::vector<double> k;
    std::vector<double> w;
};
ContinuumQuadrature make_continuum_quadrature(const FsParams& p, double t);

// f1(x, lambda(k_i)) for a vector of continuous-spectrum wavenumbers
std::vector<double> f1_continuum_values(const FsParams& p,
                                        const std::vector<double>& ks,
                                        double x);

// Eq. (29) as printed lacks this factor; the Monte Carlo / normalization
// arbitration (see README) fixes the continuous-part constant at
// (beta - 2) / (2 theta). Reported here rather than silently absorbed.
double pc_normalization_factor(const FsParams& p);

struct DensityParts {
    double p = 0.0;     // p_d + p_c, clamped at 0
    double p_d = 0.0;   // discrete eigen-sum Eq. (28)
    double p_c = 0.0;   // continuous-spectrum integral Eq. (29) (corrected constant)
    bool clamped = false;
};

// evaluator with one argument of the (symmetric) kernel held fixed; caches
// the f1 values of the fixed argument across the k-grid
class DensityEvaluator {
public:
    DensityEvaluator(const SpectralContext& ctx, double x_fixed, double t);
    // p(x; x_fixed, t)
    double operator()(double x) const { return parts(x).p; }
    DensityParts parts(double x) const;
    const ContinuumQuadrature& quadrature() const { return cq_; }
private:
    const SpectralContext* ctx_;
    double x_fixed_, t_;
    ContinuumQuadrature cq_;
    std::vector<double> f1_fixed_;    // f1(x_fixed, k_i)
    std::vector<double> poly_fixed_;  // e^{-lambda_n t} F_n(x_fixed)
};

// Theorem 1: p(x; x0, t) = p_d + p_c
double transition_density(const SpectralContext& ctx, double x, double x0,
                          double t);
DensityParts transition_density_parts(const SpectralContext& ctx, double x,
                                      double x0, double t);

// Eq. (40): p(x, y, t) = fs(y) p(x; y, t)
double two_dim_density(const SpectralContext& ctx, double x, double y,
                       double t);

// Proposition 1 closed form e^{-lambda_j t} delta_ij
double cross_poly_moment(const SpectralContext& ctx, int i, int j, double t);

// printed cross moments of section 5.2; requires beta > 8
struct CrossRawMoments {
    double m11, m12, m22;
};
CrossRawMoments cross_raw_moments(const FsParams& p, double t);

} // namespace fsdiff::spectral

#endif
