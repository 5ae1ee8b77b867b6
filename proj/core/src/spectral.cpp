#include "fsdiff/spectral.hpp"
#include "fsdiff/error.hpp"
#include "fsdiff/quadrature.hpp"
#include "fsdiff/specfun.hpp"

#include <cmath>
#include <limits>

namespace fsdiff::spectral {

namespace {

using cd = std::complex<double>;

constexpr double kPi = 3.14159265358979323846264338327950288;

// f1 evaluation routes by zbar = alpha x / beta:
//   zbar <= kSeriesEdge   direct series at argument -zbar
//   zbar >= kContEdge     connection formula at argument -1/zbar
//   in between            RK4 integration of the ODE from the series anchor
constexpr double kSeriesEdge = 0.8;
constexpr double kContEdge = 1.25;
constexpr int kGapSteps = 512;

// lambda(k) = Lambda + 2 theta k^2 / (beta - 2), Eq. (25)
double lambda_of_k(const FsParams& p, double k) {
    return cutoff(p) + 2.0 * p.theta * k * k / (p.beta - 2.0);
}

// spectral weight M(k) of the continuous part (Eq. (29) machinery):
// M(k) = B(a/2, b/2) |G(-b/4 + ik)|^2 |G(a/2 + b/4 + ik)|^2
//        / (G(a/2)^2 |G(1 + 2ik)|^2)
double spectral_weight(const FsParams& p, double k) {
    const double a = p.alpha, b = p.beta;
    double ln = specfun::ln_gamma(a / 2.0) + specfun::ln_gamma(b / 2.0)
              - specfun::ln_gamma((a + b) / 2.0)
              + 2.0 * specfun::ln_gamma(cd(-b / 4.0, k)).real()
              + 2.0 * specfun::ln_gamma(cd(a / 2.0 + b / 4.0, k)).real()
              - 2.0 * specfun::ln_gamma(a / 2.0)
              - 2.0 * specfun::ln_gamma(cd(1.0, 2.0 * k)).real();
    return std::exp(ln);
}

// series value and x-derivative of f1 at x (zbar <= kSeriesEdge)
void f1_series_pair(const FsParams& p, const ContinuationCoeffs& cc, double x,
                    double* f, double* fp) {
    const double z = -p.alpha * x / p.beta;
    cd v = specfun::hyp2f1_series_complex(cc.z_plus, cc.z_minus,
                                          p.alpha / 2.0, z);
    *f = v.real();
    if (fp) {
        cd d = specfun::hyp2f1_series_complex_deriv(cc.z_plus, cc.z_minus,
                                                    p.alpha / 2.0, z);
        *fp = d.real() * (-p.alpha / p.beta);
    }
}

// connection formula value at x (zbar >= kContEdge)
double f1_connected(const FsParams& p, const ContinuationCoeffs& cc,
                    double lambda, double x) {
    const double zbar = p.alpha * x / p.beta;
    const double w = -1.0 / zbar;
    if (lambda > cutoff(p)) {
        // conjugate pair: f1 = 2 Re(B f3)
        cd pref = std::exp(-cc.z_minus * std::log(zbar));
        cd f3 = pref * specfun::hyp2f1_series_complex(
                    cc.z_minus, cc.u_minus, 1.0 - 2.0 * cc.delta, w);
        return 2.0 * (cc.B_coef * f3).real();
    }
    // real Delta below the cutoff: both branch solutions are real
    double d2 = 2.0 * cc.delta.real();
    if (std::abs(d2 - std::round(d2)) <= 1e-8)
        throw Error(ErrorCode::DegenerateContinuation,
                    "f1 continuation: 2*Delta is integer-degenerate");
    double f3 = std::pow(zbar, -cc.z_minus.real())
              * specfun::hyp2f1(cc.z_minus.real(), cc.u_minus.real(),
                                1.0 - d2, w);
    double f4v = std::pow(zbar, -cc.z_plus.real())
               * specfun::hyp2f1(cc.z_plus.real(), cc.u_plus.real(),
                                 1.0 + d2, w);
    return cc.B_coef.real() * f3 + cc.A_coef.real() * f4v;
}

// RK4 integration of the generator ODE
//   2 theta/(alpha (beta-2)) x (alpha x + beta) f'' - theta (x - mu) f' + lambda f = 0
// from the series anchor x_a = kSeriesEdge * beta/alpha to x in the gap
double f1_gap(const FsParams& p, const ContinuationCoeffs& cc, double lambda,
              double x) {
    const double a = p.alpha, b = p.beta, th = p.theta;
    const double mu = b / (b - 2.0);
    const double xa = kSeriesEdge * b / a;
    double f, fp;
    f1_series_pair(p, cc, xa, &f, &fp);
    auto fpp = [&](double xx, double ff, double ffp) {
        return (th * (xx - mu) * ffp - lambda * ff)
             * (a * (b - 2.0)) / (2.0 * th * xx * (a * xx + b));
    };
    const double h = (x - xa) / kGapSteps;
    double xx = xa;
    for (int i = 0; i < kGapSteps; ++i) {
        double k1f = fp, k1p = fpp(xx, f, fp);
        double k2f = fp + 0.5 * h * k1p, k2p = fpp(xx + 0.5 * h, f + 0.5 * h * k1f, fp + 0.5 * h * k1p);
        double k3f = fp + 0.5 * h * k2p, k3p = fpp(xx + 0.5 * h, f + 0.5 * h * k2f, fp + 0.5 * h * k2p);
        double k4f = fp + h * k3p, k4p = fpp(xx + h, f + h * k3f, fp + h * k3p);
        f += h / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f);
        fp += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        xx = xa + (i + 1) * h;
    }
    return f;
}

double f1_at(const FsParams& p, const ContinuationCoeffs& cc, double lambda,
             double x) {
    if (!(x > 0.0) || !(lambda >= 0.0))
        throw Error(ErrorCode::DomainError, "f1 requires x > 0, lambda >= 0");
    // terminating (eigen-polynomial) case: the series is exact at every x
    if (cc.delta.imag() == 0.0) {
        double zp = cc.z_plus.real();
        if (zp <= 1e-8 && std::abs(zp - std::round(zp)) <= 1e-8)
            return specfun::hyp2f1(zp, cc.z_minus.real(), p.alpha / 2.0,
                                   -p.alpha * x / p.beta);
    }
    const double zbar = p.alpha * x / p.beta;
    if (zbar <= kSeriesEdge) {
        double f;
        f1_series_pair(p, cc, x, &f, nullptr);
        return f;
    }
    if (zbar >= kContEdge) return f1_connected(p, cc, lambda, x);
    return f1_gap(p, cc, lambda, x);
}

} // namespace

double cutoff(const FsParams& p) {
    return p.theta * p.beta * p.beta / (8.0 * (p.beta - 2.0));
}

SpectralContext make_context(const FsParams& p) {
    if (!p.spectral_ok())
        throw Error(ErrorCode::SpectralHypothesisViolated,
                    "spectral density requires alpha > 2 off the lattice {4, 6, ...}");
    SpectralContext ctx{p, 0, {}, 0.0, {}};
    ctx.cutoff = cutoff(p);
    ctx.polys = fspoly::build_system(p);
    ctx.N = int(ctx.polys.size()) - 1;
    ctx.eigenvalues.resize(ctx.N + 1);
    for (int n = 0; n <= ctx.N; ++n)
        ctx.eigenvalues[n] = fspoly::eigenvalue(p, n);
    return ctx;
}

ContinuationCoeffs continuation_coeffs(const FsParams& p, double lambda) {
    const double a = p.alpha, b = p.beta;
    ContinuationCoeffs cc;
    cd rad = cd(b * b / 16.0 - lambda * (b - 2.0) / (2.0 * p.theta), 0.0);
    cc.delta = std::sqrt(rad); // principal branch: Re >= 0, else Im >= 0
    cc.z_plus = -b / 4.0 + cc.delta;
    cc.z_minus = -b / 4.0 - cc.delta;
    cc.u_plus = 1.0 - a / 2.0 + cc.z_plus;
    cc.u_minus = 1.0 - a / 2.0 + cc.z_minus;
    cc.k_of_lambda = cd(0.0, -1.0) * cc.delta;
    // Eq. (19); ln-gamma combinations are exponentiated jointly so the
    // 2*pi*i branch slack cancels. A denominator pole sends the coefficient
    // to 0 (the eigen-lambda degeneration); a numerator pole marks the
    // coefficient unusable (NaN; the evaluation routes never reach it).
    auto pole = [](cd z) {
        return z.imag() == 0.0 && z.real() < 0.5
            && std::abs(z.real() - std::round(z.real())) < 1e-12;
    };
    auto combo = [&](cd n1, cd n2, cd d1, cd d2) -> cd {
        if (pole(d1) || pole(d2)) return 0.0;
        if (pole(n1) || pole(n2))
            return std::numeric_limits<double>::quiet_NaN();
        return std::exp(specfun::ln_gamma(n1) + specfun::ln_gamma(n2)
                        - specfun::ln_gamma(d1) - specfun::ln_gamma(d2));
    };
    cd half_a = cd(a / 2.0, 0.0);
    cc.B_coef = combo(half_a, 2.0 * cc.delta, cc.z_plus, 1.0 - cc.u_minus);
    cc.A_coef = combo(half_a, -2.0 * cc.delta, cc.z_minus, 1.0 - cc.u_plus);
    return cc;
}

double f1(const FsParams& p, double lambda, double x) {
    ContinuationCoeffs cc = continuation_coeffs(p, lambda);
    return f1_at(p, cc, lambda, x);
}

double f4(const FsParams& p, double lambda, double x) {
    if (!(x > 0.0) || !(lambda >= 0.0))
        throw Error(ErrorCode::DomainError, "f4 requires x > 0, lambda >= 0");
    if (!(lambda < cutoff(p)))
        throw Error(ErrorCode::OutsideConvergence,
                    "f4 is defined below the spectral cutoff only");
    if (!(p.alpha * x > p.beta))
        throw Error(ErrorCode::OutsideConvergence,
                    "f4 series requires alpha x > beta");
    ContinuationCoeffs cc = continuation_coeffs(p, lambda);
    const double zbar = p.alpha * x / p.beta;
    return std::pow(zbar, -cc.z_plus.real())
         * specfun::hyp2f1(cc.z_plus.real(), cc.u_plus.real(),
                           1.0 + 2.0 * cc.delta.real(), -1.0 / zbar);
}

double pc_normalization_factor(const FsParams& p) {
    return (p.beta - 2.0) / (2.0 * p.theta);
}

ContinuumQuadrature make_continuum_quadrature(const FsParams& p, double t) {
    if (!(t > 0.0))
        throw Error(ErrorCode::DomainError, "continuum quadrature requires t > 0");
    // truncate where the damping exp(-2 theta k^2 t/(beta-2)) reaches 1e-14
    const double damp = 2.0 * p.theta * t / (p.beta - 2.0);
    double k_max = std::sqrt(std::log(1e14) / damp);
    if (k_max < 2.0) k_max = 2.0;
    // precision ceiling: the long-double 2F1 series behind f1 loses
    // ~exp(1.6 k) digits to cancellation, so values past k ~ 24 are noise.
    // Capping there is admissible only while the damping at the cap keeps
    // the discarded genuine tail below ~1e-5 of the density.
    const double k_star = 24.0;
    if (k_max > k_star) {
        if (std::exp(-damp * k_star * k_star) > 1e-6)
            throw Error(ErrorCode::QuadratureNotConverged,
                        "t too small for the continuous-spectrum quadrature");
        k_max = k_star;
    }
    const int n_panels = int(std::ceil(k_max / 0.5));
    const auto& gl = quad::gauss_legendre(12);
    ContinuumQuadrature cq;
    cq.t = t;
    cq.k.reserve(n_panels * gl.x.size());
    cq.w.reserve(n_panels * gl.x.size());
    const double pw = k_max / n_panels;
    for (int j = 0; j < n_panels; ++j) {
        double lo = j * pw, half = 0.5 * pw;
        for (std::size_t i = 0; i < gl.x.size(); ++i) {
            double k = lo + half * (gl.x[i] + 1.0);
            double w = half * gl.w[i] * (2.0 / kPi) * k * k
                     * spectral_weight(p, k)
                     * std::exp(-lambda_of_k(p, k) * t);
            cq.k.push_back(k);
            cq.w.push_back(w);
        }
    }
    return cq;
}

std::vector<double> f1_continuum_values(const FsParams& p,
                                        const std::vector<double>& ks,
                                        double x) {
    std::vector<double> out(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) {
        double lam = lambda_of_k(p, ks[i]);
        ContinuationCoeffs cc = continuation_coeffs(p, lam);
        out[i] = f1_at(p, cc, lam, x);
    }
    return out;
}

DensityEvaluator::DensityEvaluator(const SpectralContext& ctx, double x_fixed,
                                   double t)
    : ctx_(&ctx), x_fixed_(x_fixed), t_(t),
      cq_(make_continuum_quadrature(ctx.params, t)),
      f1_fixed_(f1_continuum_values(ctx.params, cq_.k, x_fixed)),
      poly_fixed_(ctx.polys.size()) {
    if (!(x_fixed > 0.0))
        throw Error(ErrorCode::DomainError, "density requires x0 > 0");
    for (std::size_t n = 0; n < ctx.polys.size(); ++n)
        poly_fixed_[n] = std::exp(-ctx.eigenvalues[n] * t)
                       * fspoly::eval_poly(ctx.polys[n], x_fixed);
}

DensityParts DensityEvaluator::parts(double x) const {
    if (!(x > 0.0))
        throw Error(ErrorCode::DomainError, "density requires x > 0");
    const FsParams& p = ctx_->params;
    DensityParts out;
    // discrete eigen-sum, Eq. (28)
    std::vector<double> terms(poly_fixed_.size());
    for (std::size_t n = 0; n < poly_fixed_.size(); ++n)
        terms[n] = poly_fixed_[n] * fspoly::eval_poly(ctx_->polys[n], x);
    double fsx = fsdist::pdf(p, x);
    out.p_d = fsx * quad::pairwise_sum(terms);
    // continuous-spectrum integral, Eq. (29) with the corrected constant
    std::vector<double> f1x = f1_continuum_values(p, cq_.k, x);
    std::vector<double> cterms(f1x.size());
    for (std::size_t i = 0; i < f1x.size(); ++i)
        cterms[i] = cq_.w[i] * f1_fixed_[i] * f1x[i];
    out.p_c = fsx * quad::pairwise_sum(cterms);
    out.p = out.p_d + out.p_c;
    if (out.p < 0.0) {
        out.p = 0.0;
        out.clamped = true;
    }
    return out;
}

double transition_density(const SpectralContext& ctx, double x, double x0,
                          double t) {
    return transition_density_parts(ctx, x, x0, t).p;
}

DensityParts transition_density_parts(const SpectralContext& ctx, double x,
                                      double x0, double t) {
    return DensityEvaluator(ctx, x0, t).parts(x);
}

double two_dim_density(const SpectralContext& ctx, double x, double y,
                       double t) {
    return fsdist::pdf(ctx.params, y) * transition_density(ctx, x, y, t);
}

double cross_poly_moment(const SpectralContext& ctx, int i, int j, double t) {
    if (i < 0 || j < 0 || i > ctx.N || j > ctx.N)
        throw Error(ErrorCode::IndexOutOfSystem,
                    "cross_poly_moment: index outside the normalizable system");
    if (i != j) return 0.0;
    return std::exp(-ctx.eigenvalues[j] * t);
}

CrossRawMoments cross_raw_moments(const FsParams& p, double t) {
    const double a = p.alpha, b = p.beta;
    if (!(b > 8.0))
        throw Error(ErrorCode::MomentDoesNotExist,
                    "cross moments m12, m22 require beta > 8");
    const double e1 = std::exp(-p.theta * t);
    const double lam2 = 2.0 * p.theta * (b - 4.0) / (b - 2.0);
    const double e2 = std::exp(-lam2 * t);
    CrossRawMoments m;
    m.m11 = (2.0 * b * b * (a + b - 2.0) / (a * (b - 4.0)) * e1 + b * b)
          / ((b - 2.0) * (b - 2.0));
    m.m12 = std::pow(b, 3) * (a + 2.0)
          / (a * a * (b - 2.0) * (b - 2.0) * (b - 4.0) * (b - 6.0))
          * (4.0 * (a + b - 2.0) * e1 + a * (b - 6.0));
    const double b4 = std::pow(b, 4);
    double A = 8.0 * b4 * (a + 2.0) * (a + b - 2.0) * (a + b - 4.0)
             / (std::pow(a, 3) * (b - 2.0) * std::pow(b - 4.0, 2)
                * std::pow(b - 6.0, 2) * (b - 8.0));
    double B = 8.0 * b4 * std::pow(a + 2.0, 2) * (a + b - 2.0)
             / (std::pow(a, 3) * std::pow(b - 2.0, 2) * (b - 4.0)
                * std::pow(b - 6.0, 2));
    double C = b4 * std::pow(a + 2.0, 2)
             / (a * a * std::pow(b - 2.0, 2) * std::pow(b - 4.0, 2));
    m.m22 = A * e2 + B * e1 + C;
    return m;
}

} // namespace fsdiff::spectral
