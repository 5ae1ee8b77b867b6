#include "fsdiff/estimate.hpp"
#include "fsdiff/error.hpp"
#include "fsdiff/quadrature.hpp"

#include <cmath>
#include <limits>

namespace fsdiff::estimate {

namespace {

double coth(double x) { return 1.0 / std::tanh(x); }

double mean_of(const std::vector<double>& v) {
    return quad::pairwise_sum(v) / double(v.size());
}

constexpr double kZ95 = 1.959963984540054;

} // namespace

double sample_acf(const std::vector<double>& x, std::size_t lag) {
    if (lag == 0 || x.size() < lag + 2)
        throw Error(ErrorCode::DegenerateSample,
                    "sample_acf needs at least two pairs at the requested lag");
    const std::size_t m = x.size() - lag;
    std::vector<double> lead(m), lagv(m);
    for (std::size_t i = 0; i < m; ++i) {
        lead[i] = x[i];
        lagv[i] = x[i + lag];
    }
    double mu_lead = mean_of(lead), mu_lag = mean_of(lagv);
    std::vector<double> cxx(m), cyy(m), cxy(m);
    for (std::size_t i = 0; i < m; ++i) {
        double dx = lead[i] - mu_lead, dy = lagv[i] - mu_lag;
        cxx[i] = dx * dx;
        cyy[i] = dy * dy;
        cxy[i] = dx * dy;
    }
    double vx = quad::pairwise_sum(cxx), vy = quad::pairwise_sum(cyy);
    if (!(vx > 0.0) || !(vy > 0.0))
        throw Error(ErrorCode::DegenerateSample,
                    "sample_acf: zero marginal variance");
    return quad::pairwise_sum(cxy) / std::sqrt(vx * vy);
}

double estimate_theta(double rho_hat, double lag_time) {
    if (!(lag_time > 0.0))
        throw Error(ErrorCode::DomainError, "lag_time must be positive");
    if (!(rho_hat > 0.0))
        return std::numeric_limits<double>::quiet_NaN();
    return -std::log(rho_hat) / lag_time;
}

MomentEstimates estimate_alpha_beta(double m1, double m2) {
    if (!(m1 > 1.0))
        throw Error(ErrorCode::MomentInversionFailed,
                    "moment inversion requires m1 > 1");
    double denom = (2.0 - m1) * m2 - m1 * m1;
    if (!(denom > 0.0))
        throw Error(ErrorCode::MomentInversionFailed,
                    "moment inversion: (2 - m1) m2 - m1^2 must be positive");
    MomentEstimates e;
    e.m1 = m1;
    e.m2 = m2;
    e.beta = 2.0 * m1 / (m1 - 1.0);
    e.alpha = 2.0 * m1 * m1 / denom;
    return e;
}

Matrix2 asymptotic_cov_m(const FsParams& p, double dt) {
    const double a = p.alpha, b = p.beta;
    if (!(b > 8.0))
        throw Error(ErrorCode::MomentDoesNotExist,
                    "moment covariance requires beta > 8");
    if (!(dt > 0.0))
        throw Error(ErrorCode::DomainError, "dt must be positive");
    const double te = p.theta * dt;               // per-observation mixing rate
    const double l2 = 2.0 * te * (b - 4.0) / (b - 2.0); // second eigen-rate
    Matrix2 s;
    double var = 2.0 * b * b * (a + b - 2.0)
               / (a * (b - 2.0) * (b - 2.0) * (b - 4.0));
    s.a11 = var * coth(te / 2.0);
    // corrected: beta^3 (the printed beta^2 breaks the t = 0 degeneration)
    double c12 = 4.0 * std::pow(b, 3) * (a + 2.0) * (a + b - 2.0)
               / (a * a * std::pow(b - 2.0, 2) * (b - 4.0) * (b - 6.0));
    s.a12 = c12 * coth(te / 2.0);
    double A = 8.0 * std::pow(b, 4) * (a + 2.0) * (a + b - 2.0) * (a + b - 4.0)
             / (std::pow(a, 3) * (b - 2.0) * std::pow(b - 4.0, 2)
                * std::pow(b - 6.0, 2) * (b - 8.0));
    double B = 8.0 * std::pow(b, 4) * std::pow(a + 2.0, 2) * (a + b - 2.0)
             / (std::pow(a, 3) * std::pow(b - 2.0, 2) * (b - 4.0)
                * std::pow(b - 6.0, 2));
    s.a22 = A * coth(l2 / 2.0) + B * coth(te / 2.0);
    return s;
}

Matrix2 asymptotic_cov_ab(const FsParams& p, double dt) {
    const double a = p.alpha, b = p.beta;
    if (!(b > 8.0))
        throw Error(ErrorCode::MomentDoesNotExist,
                    "estimator covariance requires beta > 8");
    if (!(dt > 0.0))
        throw Error(ErrorCode::DomainError, "dt must be positive");
    const double te = p.theta * dt;
    const double c1 = coth(te / 2.0);
    const double c2 = coth(te * (b - 4.0) / (b - 2.0));
    Matrix2 s;
    double pref = a * (a + 2.0) * (b - 2.0) * (a + b - 2.0)
                / (2.0 * b * std::pow(b - 4.0, 3) * std::pow(b - 6.0, 2));
    s.a11 = pref * (b * (a + 2.0) * (b - 2.0) * std::pow(b - 8.0, 2) * c1
                    + 4.0 * b * std::pow(b - 4.0, 3) * (a + b - 4.0)
                      / (b - 8.0) * c2);
    s.a12 = -b * (a + 2.0) * (b - 8.0) * std::pow(b - 2.0, 2) * (a + b - 2.0)
          / (2.0 * std::pow(b - 4.0, 2) * (b - 6.0)) * c1;
    s.a22 = b * b * std::pow(b - 2.0, 2) * (a + b - 2.0)
          / (2.0 * a * (b - 4.0)) * c1;
    return s;
}

Matrix2 asymptotic_cov_ab_product(const FsParams& p, double dt) {
    const double a = p.alpha, b = p.beta;
    Matrix2 m = asymptotic_cov_m(p, dt);
    // printed Jacobian of the moment inversion
    double d11 = a * (a + 2.0) * (b - 2.0) * (3.0 * b - 8.0)
               / (2.0 * b * (b - 4.0));
    double d12 = -a * a * (b - 2.0) * (b - 4.0) / (2.0 * b * b);
    double d21 = -std::pow(b - 2.0, 2) / 2.0;
    double d22 = 0.0;
    Matrix2 s;
    s.a11 = d11 * (d11 * m.a11 + d12 * m.a12)
          + d12 * (d11 * m.a12 + d12 * m.a22);
    s.a12 = d21 * (d11 * m.a11 + d12 * m.a12)
          + d22 * (d11 * m.a12 + d12 * m.a22);
    s.a22 = d21 * (d21 * m.a11 + d22 * m.a12)
          + d22 * (d21 * m.a12 + d22 * m.a22);
    return s;
}

std::array<double, 2> studentize(const Matrix2& S, double v1, double v2) {
    double tr = S.a11 + S.a22;
    double det = S.a11 * S.a22 - S.a12 * S.a12;
    double disc = tr * tr - 4.0 * det;
    double lmin = 0.5 * (tr - std::sqrt(std::max(disc, 0.0)));
    if (!(det > 0.0) || !(lmin > 0.0))
        throw Error(ErrorCode::NotPositiveDefinite,
                    "studentize: covariance is not positive definite");
    // S^{-1/2} = (adj(S) + sqrt(det) I) / (sqrt(det) sqrt(tr + 2 sqrt(det)))
    double s = std::sqrt(det);
    double t = std::sqrt(tr + 2.0 * s);
    double inv = 1.0 / (s * t);
    double r11 = (S.a22 + s) * inv, r12 = -S.a12 * inv, r22 = (S.a11 + s) * inv;
    return {r11 * v1 + r12 * v2, r12 * v1 + r22 * v2};
}

EstimationReport estimate(const std::vector<double>& x, double dt,
                          std::size_t lag) {
    if (x.size() < 10)
        throw Error(ErrorCode::DegenerateSample,
                    "estimation needs at least 10 observations");
    if (!(dt > 0.0))
        throw Error(ErrorCode::DomainError, "dt must be positive");
    EstimationReport r;
    r.n = x.size();
    r.dt = dt;
    r.lag = lag;
    r.lag_time = lag * dt;
    std::vector<double> sq(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) sq[i] = x[i] * x[i];
    r.m1 = mean_of(x);
    r.m2 = mean_of(sq);
    MomentEstimates me = estimate_alpha_beta(r.m1, r.m2);
    r.alpha_hat = me.alpha;
    r.beta_hat = me.beta;
    r.rho_hat = sample_acf(x, lag);
    r.theta_hat = estimate_theta(r.rho_hat, r.lag_time);
    if (std::isnan(r.theta_hat))
        r.warnings.push_back("acf_non_positive");
    if (r.beta_hat > 8.0 && std::isfinite(r.theta_hat) && r.theta_hat > 0.0) {
        FsParams ph(r.alpha_hat, r.beta_hat, r.theta_hat);
        r.cov_ab = asymptotic_cov_ab(ph, dt);
        r.has_cov = true;
        r.alpha_se = std::sqrt(r.cov_ab.a11 / double(r.n));
        r.beta_se = std::sqrt(r.cov_ab.a22 / double(r.n));
        r.alpha_ci_lo = r.alpha_hat - kZ95 * r.alpha_se;
        r.alpha_ci_hi = r.alpha_hat + kZ95 * r.alpha_se;
        r.beta_ci_lo = r.beta_hat - kZ95 * r.beta_se;
        r.beta_ci_hi = r.beta_hat + kZ95 * r.beta_se;
    } else if (!(r.beta_hat > 8.0)) {
        r.warnings.push_back("covariance_unavailable_beta_hat_le_8");
    }
    return r;
}

} // namespace fsdiff::estimate
