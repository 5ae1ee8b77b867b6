#include "fsdiff/fspoly.hpp"
#include "fsdiff/error.hpp"
#include "fsdiff/quadrature.hpp"
#include "fsdiff/specfun.hpp"

#include <cmath>
#include <iostream>

namespace fsdiff::fspoly {

namespace {

// monomial coefficients of F~_n = c_n 2F1(-n, n - b/2; a/2; -(a/b) x),
// c_n = a b^n prod_{k=1}^{n-1} (a + 2k)  [= F~_n(0), matching the Rodrigues
// table of Appendix A.2]
std::vector<double> ftilde_coeffs(double a, double b, int n) {
    if (n == 0) return {1.0};
    double cn = a * std::pow(b, n);
    for (int k = 1; k < n; ++k) cn *= (a + 2.0 * k);
    std::vector<double> c(n + 1);
    double term = 1.0;
    c[0] = cn;
    for (int k = 1; k <= n; ++k) {
        term *= (-n + k - 1.0) * (n - b / 2.0 + k - 1.0)
              / ((a / 2.0 + k - 1.0) * k) * (-a / b);
        c[k] = cn * term;
    }
    return c;
}

// printed normalizing constant alpha_n of Eq. (A.4)
double alpha_n_printed(double a, double b, int n) {
    if (n == 0) return 1.0;
    double prod = 1.0;
    for (int k = 1; k <= n; ++k) prod *= (b / 2.0 + k - 2.0 * n);
    double rad = specfun::beta(a / 2.0, b / 2.0)
               / (std::tgamma(n + 1.0) * std::pow(2.0 * b, 2.0 * n)
                  * specfun::beta(a / 2.0 + n, b / 2.0 - 2.0 * n))
               / prod;
    double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return sign * std::sqrt(rad);
}

double polyval_raw(const std::vector<double>& c, double x) {
    double v = 0.0;
    for (std::size_t j = c.size(); j-- > 0;) v = v * x + c[j];
    return v;
}

// exact fs-weighted inner product of two coefficient vectors via closed-form
// moments (all required moments exist inside the normalizable system)
double inner_product_exact(const FsParams& p, const std::vector<double>& u,
                           const std::vector<double>& v, int x_power = 0) {
    int top = int(u.size()) - 1 + int(v.size()) - 1 + x_power;
    std::vector<double> mom(top + 1);
    for (int j = 0; j <= top; ++j) mom[j] = fsdist::moment(p, j);
    double s = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j)
        for (std::size_t k = 0; k < v.size(); ++k)
            s += u[j] * v[k] * mom[j + k + x_power];
    return s;
}

} // namespace

int max_degree(double beta) {
    // strictly 4n < beta
    int n = int(std::floor(beta / 4.0));
    if (4.0 * n >= beta) --n;
    return n;
}

double eigenvalue(const FsParams& p, int n) {
    return p.theta * n * (p.beta - 2.0 * n) / (p.beta - 2.0);
}

double eigenvalue_a7(const FsParams& p, int n) {
    return p.alpha * n * (p.beta - 2.0 * n);
}

std::vector<FsPolynomial> build_system(const FsParams& p) {
    if (!(p.beta > 4.0))
        throw Error(ErrorCode::TooFewPolynomials,
                    "build_system requires beta > 4");
    const int N = max_degree(p.beta);
    std::vector<FsPolynomial> sys;
    sys.reserve(N + 1);
    for (int n = 0; n <= N; ++n) {
        FsPolynomial f;
        f.degree = n;
        f.eigenvalue = eigenvalue(p, n);
        f.norm_const = alpha_n_printed(p.alpha, p.beta, n);
        std::vector<double> c = ftilde_coeffs(p.alpha, p.beta, n);
        // quadrature norm is the source of truth for the scaling
        double norm2 = quad::integrate_0_inf([&](double x) {
            double v = polyval_raw(c, x);
            return v * v * fsdist::pdf(p, x);
        }, 1e-12);
        double norm_quad = std::sqrt(norm2);
        double norm_a4 = 1.0 / std::abs(f.norm_const);
        if (std::abs(norm_quad - norm_a4) > 1e-6 * norm_a4) {
            std::cerr << "fspoly: discrepancy between Eq. (A.4) norm and "
                         "quadrature norm at n=" << n
                      << " (A.4: " << norm_a4 << ", quadrature: " << norm_quad
                      << "); using the quadrature norm\n";
        }
        double sign = (n % 2 == 0) ? 1.0 : -1.0; // sign convention of alpha_n
        f.coeffs.resize(n + 1);
        for (int j = 0; j <= n; ++j) f.coeffs[j] = sign * c[j] / norm_quad;
        sys.push_back(std::move(f));
    }
    return sys;
}

double eval_poly(const FsPolynomial& f, double x) {
    // compensated Horner: error-free product/sum transformations accumulate
    // the rounding residue in e
    const auto& c = f.coeffs;
    std::size_t n = c.size();
    if (n == 0) return 0.0;
    double s = c[n - 1], e = 0.0;
    for (std::size_t j = n - 1; j-- > 0;) {
        double prod = s * x;
        double pe = std::fma(s, x, -prod);
        double t = prod + c[j];
        double se = (std::abs(prod) >= std::abs(c[j])) ? (prod - t) + c[j]
                                                       : (c[j] - t) + prod;
        s = t;
        e = e * x + (pe + se);
    }
    return s + e;
}

double eval_poly_deriv(const FsPolynomial& f, double x, int order) {
    std::vector<double> c = f.coeffs;
    for (int o = 0; o < order; ++o) {
        if (c.size() <= 1) return 0.0;
        std::vector<double> d(c.size() - 1);
        for (std::size_t j = 1; j < c.size(); ++j) d[j - 1] = j * c[j];
        c = std::move(d);
    }
    return polyval_raw(c, x);
}

FsPolynomial recurrence_next(const FsParams& p, const FsPolynomial& F_n,
                             const FsPolynomial& F_nm1) {
    const int n = F_n.degree;
    const int N = max_degree(p.beta);
    if (n + 1 > N)
        throw Error(ErrorCode::IndexOutOfSystem,
                    "recurrence_next: n+1 exceeds the normalizable system");

    // x F_n = a_n F_{n+1} + b_n F_n + a_{n-1} F_{n-1}
    double b_n = inner_product_exact(p, F_n.coeffs, F_n.coeffs, 1);
    double a_nm1 = (n == 0)
        ? 0.0
        : inner_product_exact(p, F_n.coeffs, F_nm1.coeffs, 1);

    // remainder r = x F_n - b_n F_n - a_{n-1} F_{n-1}
    std::vector<double> r(n + 2, 0.0);
    for (int j = 0; j <= n; ++j) r[j + 1] += F_n.coeffs[j];
    for (int j = 0; j <= n; ++j) r[j] -= b_n * F_n.coeffs[j];
    if (n > 0)
        for (int j = 0; j <= n - 1; ++j) r[j] -= a_nm1 * F_nm1.coeffs[j];

    double a_n = std::sqrt(inner_product_exact(p, r, r, 0));
    FsPolynomial out;
    out.degree = n + 1;
    out.eigenvalue = eigenvalue(p, n + 1);
    out.norm_const = alpha_n_printed(p.alpha, p.beta, n + 1);
    out.coeffs.resize(n + 2);
    for (int j = 0; j <= n + 1; ++j) out.coeffs[j] = r[j] / a_n;
    return out;
}

double sturm_liouville_residual(const FsParams& p, const FsPolynomial& f,
                                double x) {
    if (!(x > 0.0))
        throw Error(ErrorCode::DomainError, "residual requires x > 0");
    const double a = p.alpha, b = p.beta, th = p.theta;
    double F = eval_poly(f, x);
    double F1 = eval_poly_deriv(f, x, 1);
    double F2 = eval_poly_deriv(f, x, 2);
    return 2.0 * th / (a * (b - 2.0)) * x * (a * x + b) * F2
         - th * (x - b / (b - 2.0)) * F1
         + f.eigenvalue * F;
}

} // namespace fsdiff::fspoly
