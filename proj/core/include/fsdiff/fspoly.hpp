#ifndef FSDIFF_FSPOLY_HPP
#define FSDIFF_FSPOLY_HPP

#include "fsdiff/fsdist.hpp"

#include <vector>

namespace fsdiff::fspoly {

// one orthonormal Fisher-Snedecor polynomial F_n
struct FsPolynomial {
    int degree = 0;
    std::vector<double> coeffs;  // monomial basis, ascending, length degree+1
    double norm_const = 1.0;     // alpha_n of Eq. (A.4) (signed)
    double eigenvalue = 0.0;     // lambda_n = theta n (beta - 2n) / (beta - 2)
};

// Largest normalizable degree: 4n < beta strictly. (At beta divisible by 4
// the nominal top index n = beta/4 has lambda_n = cutoff and infinite norm,
// so it is excluded.)
int max_degree(double beta);

// F_0..F_N. Coefficients come from the terminating 2F1 of Eq. (A.3), scaled
// by alpha_n of Eq. (A.4); the quadrature norm is asserted against
// 1/|alpha_n| within 1e-6 relative and wins on disagreement (with a
// diagnostic on stderr).
std::vector<FsPolynomial> build_system(const FsParams& p);

// Horner evaluation with compensated (Kahan) accumulation
double eval_poly(const FsPolynomial& f, double x);

// analytic derivative of the stored coefficient vector
double eval_poly_deriv(const FsPolynomial& f, double x, int order = 1);

// F_{n+1} from F_n, F_{n-1} by the moment-based Stieltjes three-term
// recurrence (exact closed-form moments as inner products). For n = 0 pass
// F_0 twice. Throws IndexOutOfSystem past N.
FsPolynomial recurrence_next(const FsParams& p, const FsPolynomial& F_n,
                             const FsPolynomial& F_nm1);

// residual of the generator-form Sturm-Liouville equation Eq. (16):
// 2 theta/(alpha (beta-2)) x (alpha x + beta) F'' - theta (x - mu) F' + lambda F
double sturm_liouville_residual(const FsParams& p, const FsPolynomial& f,
                                double x);

// eigenvalue lambda_n of Eq. (24)
double eigenvalue(const FsParams& p, int n);

// the Appendix A.7 self-adjoint normalization of the eigenvalue,
// lambda_n^{A.7} = alpha n (beta - 2n); kept distinct, never mixed in
double eigenvalue_a7(const FsParams& p, int n);

} // namespace fsdiff::fspoly

#endif
