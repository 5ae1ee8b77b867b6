#ifndef FSDIFF_GOF_HPP
#define FSDIFF_GOF_HPP

#include "fsdiff/fsdist.hpp"
#include "fsdiff/fspoly.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace fsdiff::gof {

struct GofResult {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
    std::vector<int> degrees;           // polynomial degrees entering the test
    std::vector<double> per_poly_z;     // z_j = n^{-1/2} sum_t F_j(X_t)
    std::vector<double> variance_diag;  // sigma_j^2 = coth(lambda_j dt / 2)
    std::string params_source;          // "given" or "estimated"
};

// asymptotic variance of z_j under H0 for observations spaced dt apart:
// sigma_j^2 = coth(theta dt j (beta - 2j) / (2 (beta - 2)))  (Eq. (61))
double z_variance(const FsParams& p, int j, double dt);

// throws TooFewPolynomials when the requested order m exceeds the
// normalizable system (moment-condition truncation check)
void moment_condition_check(const FsParams& p, int m);

// single-condition test of Eq. (60) on polynomial degree j
GofResult test_single(const FsParams& p, const std::vector<double>& x,
                      int j, double dt,
                      const std::string& params_source = "given");

// joint test of Eq. (63) on degrees 1..m (diagonal weighting)
GofResult test_joint(const FsParams& p, const std::vector<double>& x,
                     int m, double dt,
                     const std::string& params_source = "given");

// variants taking a prebuilt polynomial system (replication studies)
GofResult test_single(const FsParams& p,
                      const std::vector<fspoly::FsPolynomial>& sys,
                      const std::vector<double>& x, int j, double dt,
                      const std::string& params_source = "given");
GofResult test_joint(const FsParams& p,
                     const std::vector<fspoly::FsPolynomial>& sys,
                     const std::vector<double>& x, int m, double dt,
                     const std::string& params_source = "given");

// Stein solution of 2x(alpha x + beta) f' + alpha (beta - (beta-2) x) f
// = h - E[h], in the theta-free normalization. Lower-tail integral below the
// stationary mean, upper-tail above (both are exact; the switch preserves
// accuracy in the tails). e_h = E[h] under FS(alpha, beta).
double stein_solution(const FsParams& p,
                      const std::function<double(double)>& h, double e_h,
                      double x);

// the Stein operator applied to (f, f') at x
double apply_stein_operator(const FsParams& p, double f, double fp, double x);

// h_j of Eq. (54): the Stein operator applied to the polynomial F_j
double stein_h(const FsParams& p, const fspoly::FsPolynomial& f, double x);

// corrected score functions (d/d alpha, d/d beta) ln fs(x)
std::array<double, 2> score(const FsParams& p, double x);

// GMM sensitivity M_h(i, j) = -E[h_j(X) s_i(X)], i in {alpha, beta},
// j = 1..m (experimental diagnostics for estimated-parameter tests)
std::vector<std::array<double, 2>> stein_score_sensitivity(const FsParams& p,
                                                           int m);

} // namespace fsdiff::gof

#endif
