// Acceptance gate: one line per criterion, nonzero exit if any fails.
// Criteria are property- and oracle-based at desk scale; Monte Carlo
// studies use fixed seeds so the run is reproducible.

#include "fsdiff/diffusion.hpp"
#include "fsdiff/error.hpp"
#include "fsdiff/estimate.hpp"
#include "fsdiff/fsdist.hpp"
#include "fsdiff/fspoly.hpp"
#include "fsdiff/gof.hpp"
#include "fsdiff/quadrature.hpp"
#include "fsdiff/specfun.hpp"
#include "fsdiff/spectral.hpp"
#include "fsdiff/studies.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace fsdiff;

namespace {

int g_failures = 0;

void report(int id, const char* desc, bool pass, const std::string& detail) {
    std::printf("criterion %2d: %s  %s (%s)\n", id, pass ? "PASS" : "FAIL",
                desc, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

void run(int id, const char* desc,
         const std::function<std::pair<bool, std::string>()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
        auto [p, d] = body();
        pass = p;
        detail = d;
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(
        std::chrono::steady_clock::now() - t0).count();
    char buf[32];
    std::snprintf(buf, sizeof buf, ", %.1fs", secs);
    report(id, desc, pass, detail + buf);
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// fixed Gauss-Legendre x-grid over (0, 100] for density integrals; panel
// layout tuned so that the invariant density integrates to ~1e-9
struct XGrid {
    std::vector<double> x, w;
    XGrid() {
        const double edges[] = {1e-8, 0.5, 1.0, 2.0, 4.0, 7.0, 12.0,
                                20.0, 35.0, 60.0, 100.0};
        const auto& gl = quad::gauss_legendre(24);
        for (std::size_t e = 0; e + 1 < std::size(edges); ++e) {
            double half = 0.5 * (edges[e + 1] - edges[e]);
            double mid = 0.5 * (edges[e + 1] + edges[e]);
            for (std::size_t i = 0; i < gl.x.size(); ++i) {
                x.push_back(mid + half * gl.x[i]);
                w.push_back(half * gl.w[i]);
            }
        }
    }
};

const XGrid& xgrid() {
    static XGrid g;
    return g;
}

double ks_vs_uniform(std::vector<double> p) {
    std::sort(p.begin(), p.end());
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        d = std::max(d, std::abs(p[i] - double(i) / p.size()));
        d = std::max(d, std::abs(double(i + 1) / p.size() - p[i]));
    }
    return d;
}

// --- criteria -------------------------------------------------------------

std::pair<bool, std::string> crit1_orthonormality() {
    double worst = 0.0;
    for (auto [a, b] : {std::pair{5.0, 20.0}, {3.0, 12.0}, {7.0, 30.0}}) {
        FsParams p(a, b, 1.0);
        auto sys = fspoly::build_system(p);
        for (std::size_t i = 0; i < sys.size(); ++i)
            for (std::size_t j = i; j < sys.size(); ++j) {
                double g = quad::integrate_0_inf([&](double x) {
                    return fspoly::eval_poly(sys[i], x)
                         * fspoly::eval_poly(sys[j], x) * fsdist::pdf(p, x);
                }, 1e-10);
                worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
            }
    }
    return {worst <= 1e-7, "max Gram deviation " + fmt("%.2e", worst)};
}

std::pair<bool, std::string> crit2_sturm_liouville() {
    FsParams p(5.0, 20.0, 1.0);
    auto sys = fspoly::build_system(p);
    double worst = 0.0;
    for (const auto& f : sys)
        for (int i = 0; i < 20; ++i) {
            double x = 0.1 + 0.45 * i;
            double scale = 1.0 + std::abs(f.eigenvalue)
                                 * (1.0 + std::abs(fspoly::eval_poly(f, x)));
            worst = std::max(
                worst, std::abs(fspoly::sturm_liouville_residual(p, f, x))
                           / scale);
        }
    return {worst <= 1e-8, "max relative residual " + fmt("%.2e", worst)};
}

std::pair<bool, std::string> crit3_normalization() {
    FsParams p(5.0, 20.0, 0.5);
    auto ctx = spectral::make_context(p);
    const auto& g = xgrid();
    double worst_mass = 0.0, worst_mean = 0.0;
    for (double x0 : {0.5, 1.2, 4.0})
        for (double t : {0.5, 1.0, 2.0}) {
            spectral::DensityEvaluator ev(ctx, x0, t);
            double mass = 0.0, mean = 0.0;
            for (std::size_t i = 0; i < g.x.size(); ++i) {
                double pv = ev(g.x[i]);
                mass += g.w[i] * pv;
                mean += g.w[i] * g.x[i] * pv;
            }
            worst_mass = std::max(worst_mass, std::abs(mass - 1.0));
            worst_mean = std::max(
                worst_mean, std::abs(mean - diffusion::cond_mean(p, x0, t)));
        }
    bool pass = worst_mass <= 1e-4 && worst_mean <= 1e-4;
    return {pass, "mass err " + fmt("%.2e", worst_mass) + ", mean err "
                      + fmt("%.2e", worst_mean)};
}

std::pair<bool, std::string> crit4_chapman_kolmogorov() {
    FsParams p(5.0, 20.0, 0.5);
    auto ctx = spectral::make_context(p);
    const auto& g = xgrid();
    struct Triple { double x, x0, s, t; };
    const Triple triples[] = {{1.0, 1.2, 0.5, 0.5}, {0.7, 2.0, 0.5, 1.0},
                              {2.5, 0.6, 1.0, 0.5}, {1.5, 1.5, 1.0, 1.0},
                              {0.5, 3.0, 0.5, 1.5}};
    double worst = 0.0;
    for (const auto& tr : triples) {
        // p(x; x0, s+t) = integral p(x; y, t) p(y; x0, s) dy
        spectral::DensityEvaluator ev_t(ctx, tr.x, tr.t);   // fixes x
        spectral::DensityEvaluator ev_s(ctx, tr.x0, tr.s);  // fixes x0
        double fx = fsdist::pdf(p, tr.x);
        double acc = 0.0;
        for (std::size_t i = 0; i < g.x.size(); ++i) {
            double y = g.x[i];
            // symmetry: p(x; y, t) = fs(x)/fs(y) p(y; x, t)
            double pxy = ev_t(y) * fx / fsdist::pdf(p, y);
            acc += g.w[i] * pxy * ev_s(y);
        }
        double rhs = spectral::transition_density(ctx, tr.x, tr.x0,
                                                  tr.s + tr.t);
        worst = std::max(worst, std::abs(acc - rhs));
    }
    return {worst <= 1e-3, "max composition error " + fmt("%.2e", worst)};
}

std::pair<bool, std::string> crit5_cross_poly() {
    FsParams p(5.0, 20.0, 0.5);
    auto ctx = spectral::make_context(p);
    const auto& g = xgrid();
    double worst = 0.0;
    for (double t : {0.5, 1.0}) {
        auto cq = spectral::make_continuum_quadrature(p, t);
        // factorized double quadrature: precompute fs-weighted projections
        // of F_i onto each spectral component over the x-grid
        std::vector<std::vector<double>> U(3, std::vector<double>(cq.k.size(), 0.0));
        std::vector<std::vector<double>> G(3, std::vector<double>(ctx.polys.size(), 0.0));
        for (std::size_t a = 0; a < g.x.size(); ++a) {
            double fsw = g.w[a] * fsdist::pdf(p, g.x[a]);
            auto f1v = spectral::f1_continuum_values(p, cq.k, g.x[a]);
            for (int i = 1; i <= 2; ++i) {
                double Fi = fspoly::eval_poly(ctx.polys[i], g.x[a]);
                for (std::size_t q = 0; q < cq.k.size(); ++q)
                    U[i][q] += fsw * Fi * f1v[q];
                for (std::size_t n = 0; n < ctx.polys.size(); ++n)
                    G[i][n] += fsw * Fi
                             * fspoly::eval_poly(ctx.polys[n], g.x[a]);
            }
        }
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j) {
                double e = 0.0;
                for (std::size_t n = 0; n < ctx.polys.size(); ++n)
                    e += std::exp(-ctx.eigenvalues[n] * t) * G[i][n] * G[j][n];
                for (std::size_t q = 0; q < cq.k.size(); ++q)
                    e += cq.w[q] * U[i][q] * U[j][q];
                double expect = spectral::cross_poly_moment(ctx, i, j, t);
                worst = std::max(worst, std::abs(e - expect));
            }
    }
    return {worst <= 1e-3, "max |quadrature - closed form| " + fmt("%.2e", worst)};
}

std::pair<bool, std::string> crit6_cross_moment_degeneration() {
    FsParams p(5.0, 20.0, 1.0);
    auto m0 = spectral::cross_raw_moments(p, 0.0);
    auto mi = spectral::cross_raw_moments(p, 1e3);
    double mu = fsdist::moment(p, 1), m2 = fsdist::moment(p, 2);
    double worst = 0.0;
    auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
    worst = std::max({rel(m0.m11, fsdist::moment(p, 2)),
                      rel(m0.m12, fsdist::moment(p, 3)),
                      rel(m0.m22, fsdist::moment(p, 4)),
                      rel(mi.m11, mu * mu), rel(mi.m12, mu * m2),
                      rel(mi.m22, m2 * m2)});
    return {worst <= 1e-10, "max relative deviation " + fmt("%.2e", worst)};
}

std::pair<bool, std::string> crit7_covariance_algebra() {
    double worst = 0.0;
    for (double a : {3.0, 5.0, 8.0})
        for (double b : {9.5, 12.0, 20.0})
            for (double th : {0.5, 1.0, 2.0}) {
                FsParams p(a, b, th);
                auto x = estimate::asymptotic_cov_ab(p, 1.0);
                auto y = estimate::asymptotic_cov_ab_product(p, 1.0);
                worst = std::max({worst,
                                  std::abs(x.a11 - y.a11) / std::abs(y.a11),
                                  std::abs(x.a12 - y.a12) / std::abs(y.a12),
                                  std::abs(x.a22 - y.a22) / std::abs(y.a22)});
            }
    return {worst <= 1e-9, "27-point grid, max relative gap " + fmt("%.2e", worst)};
}

std::pair<bool, std::string> crit8_clt_coverage() {
    auto s = studies::run_coverage_study(500, 100000, 20250824);
    const double ks_crit = 1.6276 / std::sqrt(500.0); // 1% level
    bool pass = s.ks_alpha < ks_crit && s.ks_beta < ks_crit
             && s.coverage_alpha >= 0.92 && s.coverage_alpha <= 0.98
             && s.coverage_beta >= 0.92 && s.coverage_beta <= 0.98;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "KS %.4f/%.4f (crit %.4f), coverage %.3f/%.3f",
                  s.ks_alpha, s.ks_beta, ks_crit, s.coverage_alpha,
                  s.coverage_beta);
    return {pass, buf};
}

std::pair<bool, std::string> crit9_theta_consistency() {
    auto s = studies::run_theta_study(200, 200000, 77001);
    return {s.frac_within >= 0.95,
            "|theta_hat - 0.5| <= 0.05 in " + fmt("%.1f", 100.0 * s.frac_within)
                + "% of 200 reps"};
}

std::pair<bool, std::string> crit10_gof_size_power() {
    auto size = studies::run_size_study(1000, 10000, 31337);
    auto power = studies::run_power_study(200, 10000, 424242);
    double ks = ks_vs_uniform(size.p_m1);
    bool pass = size.reject_rate_m1 >= 0.035 && size.reject_rate_m1 <= 0.065
             && size.reject_rate_m2 >= 0.035 && size.reject_rate_m2 <= 0.065
             && power.reject_rate >= 0.80 && ks < 0.0614;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "size m1 %.3f, m2 %.3f; power %.3f; p-value KS %.4f",
                  size.reject_rate_m1, size.reject_rate_m2,
                  power.reject_rate, ks);
    return {pass, buf};
}

std::pair<bool, std::string> crit11_stein_residual() {
    FsParams p(5.0, 20.0, 0.5);
    auto sys = fspoly::build_system(p);
    // exact constant for the identity case
    double c = 1.0 / (p.alpha * (2.0 - p.beta));
    double const_dev = 0.0;
    double eh1 = fsdist::moment(p, 1);
    for (double x : {0.3, 1.0, 2.0, 6.0})
        const_dev = std::max(const_dev,
            std::abs(gof::stein_solution(p, [](double y) { return y; },
                                         eh1, x) - c));
    // defining-equation residual for three h's via a 5-point derivative
    struct H { std::function<double(double)> h; double eh; };
    std::vector<H> hs = {
        {[](double y) { return y; }, eh1},
        {[&](double y) { return fspoly::eval_poly(sys[1], y); }, 0.0},
        {[](double y) { return y * y; }, fsdist::moment(p, 2)},
    };
    double worst = 0.0;
    for (const auto& hh : hs)
        for (double x : {0.4, 0.9, 1.6, 3.0}) {
            auto f = [&](double y) {
                return gof::stein_solution(p, hh.h, hh.eh, y);
            };
            double st = 1e-3 * x;
            double fp = (8.0 * (f(x + st) - f(x - st))
                         - (f(x + 2 * st) - f(x - 2 * st))) / (12.0 * st);
            double lhs = gof::apply_stein_operator(p, f(x), fp, x);
            double rhs = hh.h(x) - hh.eh;
            worst = std::max(worst,
                             std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
        }
    bool pass = const_dev <= 1e-12 && worst <= 1e-6;
    return {pass, "const dev " + fmt("%.2e", const_dev) + ", residual "
                      + fmt("%.2e", worst)};
}

std::pair<bool, std::string> crit12_score() {
    FsParams p(5.0, 20.0, 1.0);
    const double h = 1e-6;
    double worst = 0.0;
    for (double x : {0.3, 0.8, 1.5, 3.0, 8.0}) {
        auto s = gof::score(p, x);
        double fa = (fsdist::log_pdf(FsParams(5.0 + h, 20.0, 1.0), x)
                     - fsdist::log_pdf(FsParams(5.0 - h, 20.0, 1.0), x))
                  / (2.0 * h);
        double fb = (fsdist::log_pdf(FsParams(5.0, 20.0 + h, 1.0), x)
                     - fsdist::log_pdf(FsParams(5.0, 20.0 - h, 1.0), x))
                  / (2.0 * h);
        worst = std::max({worst, std::abs(s[0] - fa), std::abs(s[1] - fb)});
    }
    auto m = gof::stein_score_sensitivity(p, 2);
    double biggest = 0.0;
    for (const auto& row : m)
        for (double v : row) biggest = std::max(biggest, std::abs(v));
    bool pass = worst <= 1e-5 && biggest > 1e-3;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "FD gap %.2e; E[h_j s_k] = [[%.3g, %.3g], [%.3g, %.3g]]",
                  worst, -m[0][0], -m[0][1], -m[1][0], -m[1][1]);
    return {pass, buf};
}

std::pair<bool, std::string> crit13_wronskian() {
    FsParams p(5.0, 20.0, 0.5);
    double lam = spectral::cutoff(p) / 2.0;
    auto wronsk = [&](double x) {
        double st = 1e-3 * x;
        auto d = [&](double (*f)(const FsParams&, double, double)) {
            return (8.0 * (f(p, lam, x + st) - f(p, lam, x - st))
                    - (f(p, lam, x + 2 * st) - f(p, lam, x - 2 * st)))
                 / (12.0 * st);
        };
        return (spectral::f4(p, lam, x) * d(spectral::f1)
              - d(spectral::f4) * spectral::f1(p, lam, x))
             / diffusion::scale_density(p, x);
    };
    // decade [2 beta/alpha, 20 beta/alpha] = [8, 80]
    double w0 = wronsk(8.0), lo = w0, hi = w0;
    for (int i = 1; i <= 12; ++i) {
        double x = 8.0 * std::pow(10.0, i / 12.0);
        double w = wronsk(x);
        lo = std::min(lo, w);
        hi = std::max(hi, w);
    }
    double var = (hi - lo) / std::abs(w0);
    return {var <= 1e-6, "relative variation " + fmt("%.2e", var)
                             + " over x in [8, 80]"};
}

std::pair<bool, std::string> crit14_specfun_suite() {
    double worst = 0.0;
    auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
    worst = std::max(worst, rel(specfun::ln_gamma(10.0), std::log(362880.0)));
    worst = std::max(worst, rel(specfun::abs_gamma_complex(0.0, 1.0),
                                std::sqrt(M_PI / std::sinh(M_PI))));
    worst = std::max(worst, rel(specfun::beta(2.5, 3.0), 16.0 / 315.0));
    worst = std::max(worst, std::abs(specfun::digamma(2.0)
                                     - (specfun::digamma(1.0) + 1.0)));
    worst = std::max(worst,
                     rel(specfun::reg_inc_gamma_upper(0.5, 1.920729410347062),
                         0.05));
    worst = std::max(worst, rel(specfun::hyp2f1(1.0, 1.0, 2.0, -1.0),
                                std::log(2.0)));
    // derivative identity at 20 points
    for (int i = 0; i < 20; ++i) {
        double z = -0.45 + 0.04 * i, st = 1e-6;
        double fd = (specfun::hyp2f1(0.7, 1.9, 2.3, z + st)
                     - specfun::hyp2f1(0.7, 1.9, 2.3, z - st)) / (2.0 * st);
        double an = 0.7 * 1.9 / 2.3 * specfun::hyp2f1(1.7, 2.9, 3.3, z);
        worst = std::max(worst, std::abs(fd - an) / std::abs(an) / 1e4);
    }
    // continuation overlap at 1e-9
    double overlap = 0.0;
    for (double z : {-0.6, -0.55, -0.5}) {
        double main_route = specfun::hyp2f1(0.8, 2.1, 3.4, z);
        double raw = specfun::hyp2f1_series_complex({0.8, 0.0}, {2.1, 0.0},
                                                    3.4, z).real();
        overlap = std::max(overlap, std::abs(main_route - raw)
                                        / std::abs(raw));
    }
    bool pass = worst <= 1e-9 && overlap <= 1e-9;
    return {pass, "max example error " + fmt("%.2e", worst)
                      + ", overlap " + fmt("%.2e", overlap)};
}

} // namespace

int main() {
    // grid sanity: the fixed x-grid must integrate the invariant density
    // to ~1e-8, otherwise criteria 3-5 are not meaningful
    {
        FsParams p(5.0, 20.0, 0.5);
        const auto& g = xgrid();
        double mass = 0.0;
        for (std::size_t i = 0; i < g.x.size(); ++i)
            mass += g.w[i] * fsdist::pdf(p, g.x[i]);
        if (std::abs(mass - 1.0) > 1e-7) {
            std::printf("x-grid self-check failed: fs mass %.12f\n", mass);
            return 1;
        }
    }

    run(1, "polynomial orthonormality", crit1_orthonormality);
    run(2, "Sturm-Liouville residual", crit2_sturm_liouville);
    run(3, "transition density normalization + conditional mean", crit3_normalization);
    run(4, "Chapman-Kolmogorov composition", crit4_chapman_kolmogorov);
    run(5, "cross polynomial moments vs closed form", crit5_cross_poly);
    run(6, "cross-moment degeneration at t=0 and t=inf", crit6_cross_moment_degeneration);
    run(7, "covariance closed form vs delta-method product", crit7_covariance_algebra);
    run(8, "Monte Carlo CLT + CI coverage", crit8_clt_coverage);
    run(9, "theta-hat consistency", crit9_theta_consistency);
    run(10, "GoF size and power", crit10_gof_size_power);
    run(11, "Stein solution residual + identity constant", crit11_stein_residual);
    run(12, "score oracle + Stein/score non-orthogonality", crit12_score);
    run(13, "Wronskian constancy", crit13_wronskian);
    run(14, "special-function suite", crit14_specfun_suite);

    if (g_failures) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all 14 acceptance criteria passed\n");
    return 0;
}
