#include "fsdiff/gof.hpp"
#include "fsdiff/error.hpp"
#include "fsdiff/quadrature.hpp"
#include "fsdiff/specfun.hpp"

#include <cmath>

namespace fsdiff::gof {

namespace {

double coth(double x) { return 1.0 / std::tanh(x); }

double chi2_p_value(double stat, int dof) {
    return specfun::reg_inc_gamma_upper(dof / 2.0, stat / 2.0);
}

// z_j = n^{-1/2} sum_t F_j(X_t)
double z_statistic(const fspoly::FsPolynomial& f,
                   const std::vector<double>& x) {
    std::vector<double> terms(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        terms[i] = fspoly::eval_poly(f, x[i]);
    return quad::pairwise_sum(terms) / std::sqrt(double(x.size()));
}

GofResult run_test(const FsParams& p,
                   const std::vector<fspoly::FsPolynomial>& sys,
                   const std::vector<double>& x,
                   const std::vector<int>& degrees, double dt,
                   const std::string& params_source) {
    if (x.empty())
        throw Error(ErrorCode::DegenerateSample, "gof test needs data");
    if (!(dt > 0.0))
        throw Error(ErrorCode::DomainError, "dt must be positive");
    GofResult r;
    r.degrees = degrees;
    r.params_source = params_source;
    double stat = 0.0;
    for (int j : degrees) {
        if (j < 1 || j >= int(sys.size()))
            throw Error(ErrorCode::IndexOutOfSystem,
                        "gof degree outside the normalizable system");
        double z = z_statistic(sys[j], x);
        double s2 = z_variance(p, j, dt);
        r.per_poly_z.push_back(z);
        r.variance_diag.push_back(s2);
        stat += z * z / s2;
    }
    r.statistic = stat;
    r.dof = int(degrees.size());
    r.p_value = chi2_p_value(stat, r.dof);
    return r;
}

} // namespace

double z_variance(const FsParams& p, int j, double dt) {
    double lam_eff = p.theta * dt * j * (p.beta - 2.0 * j) / (p.beta - 2.0);
    if (!(lam_eff > 0.0))
        throw Error(ErrorCode::DomainError,
                    "z_variance requires a positive eigen-rate");
    return coth(lam_eff / 2.0);
}

void moment_condition_check(const FsParams& p, int m) {
    if (m < 1)
        throw Error(ErrorCode::DomainError, "test order m must be >= 1");
    if (m > fspoly::max_degree(p.beta))
        throw Error(ErrorCode::TooFewPolynomials,
                    "test order exceeds the normalizable polynomial system");
}

GofResult test_single(const FsParams& p, const std::vector<double>& x,
                      int j, double dt, const std::string& params_source) {
    return test_single(p, fspoly::build_system(p), x, j, dt, params_source);
}

GofResult test_joint(const FsParams& p, const std::vector<double>& x,
                     int m, double dt, const std::string& params_source) {
    return test_joint(p, fspoly::build_system(p), x, m, dt, params_source);
}

GofResult test_single(const FsParams& p,
                      const std::vector<fspoly::FsPolynomial>& sys,
                      const std::vector<double>& x, int j, double dt,
                      const std::string& params_source) {
    moment_condition_check(p, j);
    return run_test(p, sys, x, {j}, dt, params_source);
}

GofResult test_joint(const FsParams& p,
                     const std::vector<fspoly::FsPolynomial>& sys,
                     const std::vector<double>& x, int m, double dt,
                     const std::string& params_source) {
    moment_condition_check(p, m);
    std::vector<int> degrees;
    for (int j = 1; j <= m; ++j) degrees.push_back(j);
    return run_test(p, sys, x, degrees, dt, params_source);
}

double stein_solution(const FsParams& p,
                      const std::function<double(double)>& h, double e_h,
                      double x) {
    if (!(x > 0.0))
        throw Error(ErrorCode::DomainError, "stein_solution requires x > 0");
    const double mu = p.beta / (p.beta - 2.0);
    auto g = [&](double y) { return (h(y) - e_h) * fsdist::pdf(p, y); };
    double integral;
    if (x <= mu) {
        integral = quad::integrate(g, 0.0, x, 1e-10);
    } else {
        // -integral over (x, inf), mapped by y -> 1/t
        integral = -quad::integrate(
            [&](double t) { return g(1.0 / t) / (t * t); }, 0.0, 1.0 / x,
            1e-10);
    }
    return integral / (2.0 * x * (p.alpha * x + p.beta) * fsdist::pdf(p, x));
}

double apply_stein_operator(const FsParams& p, double f, double fp, double x) {
    return 2.0 * x * (p.alpha * x + p.beta) * fp
         + p.alpha * (p.beta - (p.beta - 2.0) * x) * f;
}

double stein_h(const FsParams& p, const fspoly::FsPolynomial& f, double x) {
    return apply_stein_operator(p, fspoly::eval_poly(f, x),
                                fspoly::eval_poly_deriv(f, x), x);
}

std::array<double, 2> score(const FsParams& p, double x) {
    if (!(x > 0.0))
        throw Error(ErrorCode::DomainError, "score requires x > 0");
    const double a = p.alpha, b = p.beta;
    const double axb = a * x + b;
    double s_a = (b * (1.0 - x) + axb * std::log(a * x / axb)) / (2.0 * axb)
               - 0.5 * (specfun::digamma(a / 2.0)
                        - specfun::digamma((a + b) / 2.0));
    double s_b = (a * (x - 1.0) + axb * std::log(b / axb)) / (2.0 * axb)
               + 0.5 * (specfun::digamma((a + b) / 2.0)
                        - specfun::digamma(b / 2.0));
    return {s_a, s_b};
}

std::vector<std::array<double, 2>> stein_score_sensitivity(const FsParams& p,
                                                           int m) {
    moment_condition_check(p, m);
    auto sys = fspoly::build_system(p);
    std::vector<std::array<double, 2>> out;
    out.reserve(m);
    for (int j = 1; j <= m; ++j) {
        std::array<double, 2> row;
        for (int i = 0; i < 2; ++i) {
            row[i] = -quad::integrate_0_inf([&](double x) {
                return stein_h(p, sys[j], x) * score(p, x)[i]
                     * fsdist::pdf(p, x);
            }, 1e-9);
        }
        out.push_back(row);
    }
    return out;
}

} // namespace fsdiff::gof
