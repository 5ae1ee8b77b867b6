#include <doctest.h>

#include "fsdiff/error.hpp"
#include "fsdiff/fsdist.hpp"
#include "fsdiff/gof.hpp"
#include "fsdiff/quadrature.hpp"
#include "fsdiff/specfun.hpp"

#include <cmath>

using namespace fsdiff;

namespace {
const FsParams kP(5.0, 20.0, 1.0);
}

TEST_CASE("z variance is coth(lambda_j dt / 2)") {
    for (int j : {1, 2, 3, 4}) {
        double lam = fspoly::eigenvalue(kP, j);
        CHECK(gof::z_variance(kP, j, 1.0)
              == doctest::Approx(1.0 / std::tanh(lam / 2.0)).epsilon(1e-13));
    }
    // time rescaling: dt enters through theta_eff = theta dt
    CHECK(gof::z_variance(kP, 1, 0.5)
          == doctest::Approx(1.0 / std::tanh(0.25)).epsilon(1e-13));
}

TEST_CASE("moment condition truncation guard") {
    CHECK_THROWS_AS(gof::moment_condition_check(kP, 5), Error); // N = 4
    CHECK_NOTHROW(gof::moment_condition_check(kP, 4));
    CHECK_THROWS_AS(gof::moment_condition_check(kP, 0), Error);
}

TEST_CASE("test statistics and chi-square p-values") {
    auto x = fsdist::sample(kP, 2000, 99);
    auto r1 = gof::test_single(kP, x, 1, 1.0);
    CHECK(r1.dof == 1);
    CHECK(r1.per_poly_z.size() == 1);
    CHECK(r1.statistic
          == doctest::Approx(r1.per_poly_z[0] * r1.per_poly_z[0]
                             / r1.variance_diag[0]).epsilon(1e-12));
    CHECK(r1.p_value
          == doctest::Approx(specfun::reg_inc_gamma_upper(0.5, r1.statistic / 2.0))
                 .epsilon(1e-12));
    auto r2 = gof::test_joint(kP, x, 2, 1.0);
    CHECK(r2.dof == 2);
    CHECK(r2.statistic >= 0.0);
    CHECK(r2.p_value <= 1.0);
    // i.i.d. data under-disperses z relative to the path variance, so the
    // test is conservative; the p-value should not be extreme on FS draws
    CHECK(r2.p_value > 0.01);
}

TEST_CASE("Stein identity case returns the exact constant") {
    FsParams p(5.0, 20.0, 0.5);
    double c = 1.0 / (p.alpha * (2.0 - p.beta));
    double eh = fsdist::moment(p, 1);
    for (double x : {0.2, 0.9, 1.5, 4.0, 12.0})
        CHECK(gof::stein_solution(p, [](double y) { return y; }, eh, x)
              == doctest::Approx(c).epsilon(1e-12));
}

TEST_CASE("Stein characterization: E[A f] = 0 over the invariant law") {
    FsParams p(5.0, 20.0, 1.0);
    struct Alt { double (*f)(double); double (*fp)(double); };
    static const Alt alts[] = {
        {[](double x) { return 1.0 / (1.0 + x); },
         [](double x) { return -1.0 / ((1.0 + x) * (1.0 + x)); }},
        {[](double x) { return std::sin(x) * std::exp(-x); },
         [](double x) { return (std::cos(x) - std::sin(x)) * std::exp(-x); }},
        {[](double x) { return x / (1.0 + x * x); },
         [](double x) { return (1.0 - x * x) / std::pow(1.0 + x * x, 2); }},
    };
    for (const auto& alt : alts) {
        double e = quad::integrate_0_inf([&](double x) {
            return gof::apply_stein_operator(p, alt.f(x), alt.fp(x), x)
                 * fsdist::pdf(p, x);
        }, 1e-9);
        CHECK(std::abs(e) < 1e-8);
    }
}

TEST_CASE("Stein h-vector has zero stationary mean") {
    auto sys = fspoly::build_system(kP);
    for (int j = 1; j <= 2; ++j) {
        double e = quad::integrate_0_inf([&](double x) {
            return gof::stein_h(kP, sys[j], x) * fsdist::pdf(kP, x);
        }, 1e-9);
        CHECK(std::abs(e) < 1e-7);
    }
}

TEST_CASE("score matches the finite-difference gradient of ln fs") {
    FsParams p(5.0, 20.0, 1.0);
    const double h = 1e-6;
    for (double x : {0.3, 1.0, 2.2, 6.0}) {
        auto s = gof::score(p, x);
        double fa = (fsdist::log_pdf(FsParams(5.0 + h, 20.0, 1.0), x)
                     - fsdist::log_pdf(FsParams(5.0 - h, 20.0, 1.0), x))
                  / (2.0 * h);
        double fb = (fsdist::log_pdf(FsParams(5.0, 20.0 + h, 1.0), x)
                     - fsdist::log_pdf(FsParams(5.0, 20.0 - h, 1.0), x))
                  / (2.0 * h);
        CHECK(s[0] == doctest::Approx(fa).epsilon(1e-6));
        CHECK(s[1] == doctest::Approx(fb).epsilon(1e-6));
    }
    // the score has zero mean under the law it differentiates
    for (int i = 0; i < 2; ++i) {
        double e = quad::integrate_0_inf([&](double x) {
            return gof::score(p, x)[i] * fsdist::pdf(p, x);
        }, 1e-9);
        CHECK(std::abs(e) < 1e-8);
    }
}

TEST_CASE("Stein-score sensitivity is reported and non-degenerate") {
    auto m = gof::stein_score_sensitivity(kP, 2);
    REQUIRE(m.size() == 2);
    double biggest = 0.0;
    for (const auto& row : m)
        for (double v : row) biggest = std::max(biggest, std::abs(v));
    CHECK(biggest > 1e-3); // non-orthogonality of the moment conditions
}
