#ifndef FSDIFF_SPECFUN_HPP
#define FSDIFF_SPECFUN_HPP

#include <complex>

namespace fsdiff::specfun {

// ln Gamma(x) for x > 0 (Lanczos, g = 7, 9 terms); relative error <= 1e-13
// on [1e-3, 1e3].
double ln_gamma(double x);

// ln Gamma(z) for complex z (reflection for Re z < 0.5). Branch of the
// result is unspecified modulo 2*pi*i; callers use Re(.) or exp(.) of
// combinations, both of which are branch-insensitive.
std::complex<double> ln_gamma(std::complex<double> z);

// ln|Gamma(x)| with the sign of Gamma(x), valid for any non-pole real x.
struct SignedLnGamma {
    double ln;
    int sign; // +1 or -1
};
SignedLnGamma signed_ln_gamma(double x);

// |Gamma(x + i y)|
double abs_gamma_complex(double x, double y);

// Beta function B(a, b), a, b > 0
double beta(double a, double b);

// digamma psi(x), x > 0
double digamma(double x);

// regularized upper incomplete gamma Q(s, x) = Gamma(s, x) / Gamma(s)
double reg_inc_gamma_upper(double s, double x);

// regularized incomplete beta I_x(a, b) (continued fraction); used for the
// exact FS/F-distribution CDF in tests
double reg_inc_beta(double a, double b, double x);

struct Hyp2F1Args {
    double a, b, c, z;
};

// Gauss hypergeometric 2F1(a, b; c; z) for real parameters and real z < 1.
// Series Eq. (B.1) for |z| <= z_switch and z in (z_switch, 1); continuation
// Eq. (B.4) to argument 1/z for z <= -1; Pfaff transformation to argument
// z/(z-1) on (-1, -z_switch) and whenever (B.4) is integer-degenerate;
// terminating polynomial (valid for every real z) when a or b is a
// nonpositive integer (tolerance 1e-8).
double hyp2f1(const Hyp2F1Args& args);
inline double hyp2f1(double a, double b, double c, double z) {
    return hyp2f1(Hyp2F1Args{a, b, c, z});
}

// Raw series sum of Eq. (B.1) with complex parameters a, b and real c, z;
// accumulation in complex<long double> to absorb the conjugate-parameter
// cancellation of the continuous-spectrum solutions. Throws
// NonconvergentSeries past the cap.
std::complex<double> hyp2f1_series_complex(std::complex<double> a,
                                           std::complex<double> b,
                                           double c, double z,
                                           int term_cap = 20000);

// same, with complex lower parameter (conjugate-pair continuations)
std::complex<double> hyp2f1_series_complex(std::complex<double> a,
                                           std::complex<double> b,
                                           std::complex<double> c, double z,
                                           int term_cap = 20000);

// d/dz 2F1 series value at the same precision (= (ab/c) 2F1(a+1,b+1;c+1;z)).
std::complex<double> hyp2f1_series_complex_deriv(std::complex<double> a,
                                                 std::complex<double> b,
                                                 double c, double z,
                                                 int term_cap = 20000);

inline bool is_nonpositive_integer(double x, double tol = 1e-8) {
    if (x > tol) return false;
    double r = std::abs(x - std::round(x));
    return r <= tol;
}

} // namespace fsdiff::specfun

#endif
