#include "fsdiff/studies.hpp"
#include "fsdiff/diffusion.hpp"
#include "fsdiff/estimate.hpp"
#include "fsdiff/gof.hpp"
#include "fsdiff/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <thread>

namespace fsdiff::studies {

namespace {

std::uint64_t rep_seed(std::uint64_t base, int rep) {
    return base + 0x9E3779B97F4A7C15ULL * (std::uint64_t(rep) + 1);
}

// run body(rep) for rep in [0, reps) across the configured workers; each
// worker owns a contiguous block so the result layout is scheduling-free
void parallel_reps(int reps, const std::function<void(int)>& body) {
    int workers = std::min(worker_count(), reps);
    if (workers <= 1) {
        for (int r = 0; r < reps; ++r) body(r);
        return;
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        int lo = reps * w / workers, hi = reps * (w + 1) / workers;
        pool.emplace_back([&, lo, hi] {
            for (int r = lo; r < hi; ++r) body(r);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace

int worker_count() {
    if (const char* env = std::getenv("FSDIFF_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

double ks_vs_normal(std::vector<double> z) {
    std::sort(z.begin(), z.end());
    const double n = double(z.size());
    double d = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        double cdf = 0.5 * std::erfc(-z[i] / std::sqrt(2.0));
        d = std::max(d, std::abs(cdf - double(i) / n));
        d = std::max(d, std::abs(double(i + 1) / n - cdf));
    }
    return d;
}

CoverageStudy run_coverage_study(int reps, std::size_t n_obs,
                                 std::uint64_t seed) {
    const FsParams p(5.0, 20.0, 1.0);
    CoverageStudy out;
    out.rows.resize(reps);
    parallel_reps(reps, [&](int r) {
        auto path = diffusion::simulate_observed(
            p, -1.0, n_obs, 1.0, 50, diffusion::Scheme::ExactDrift,
            rep_seed(seed, r));
        auto rep = estimate::estimate(path.values, 1.0, 1);
        double rn = std::sqrt(double(rep.n));
        auto z = estimate::studentize(rep.cov_ab,
                                      rn * (rep.alpha_hat - p.alpha),
                                      rn * (rep.beta_hat - p.beta));
        out.rows[r] = CoverageRow{
            rep.alpha_hat, rep.beta_hat, z[0], z[1],
            rep.alpha_ci_lo <= p.alpha && p.alpha <= rep.alpha_ci_hi,
            rep.beta_ci_lo <= p.beta && p.beta <= rep.beta_ci_hi};
    });
    std::vector<double> za(reps), zb(reps);
    int ca = 0, cb = 0;
    for (int r = 0; r < reps; ++r) {
        za[r] = out.rows[r].z_alpha;
        zb[r] = out.rows[r].z_beta;
        ca += out.rows[r].cover_alpha;
        cb += out.rows[r].cover_beta;
    }
    out.coverage_alpha = double(ca) / reps;
    out.coverage_beta = double(cb) / reps;
    out.ks_alpha = ks_vs_normal(za);
    out.ks_beta = ks_vs_normal(zb);
    return out;
}

ThetaStudy run_theta_study(int reps, std::size_t n_obs, std::uint64_t seed) {
    const FsParams p(5.0, 20.0, 0.5);
    ThetaStudy out;
    out.theta_hat.resize(reps);
    parallel_reps(reps, [&](int r) {
        auto path = diffusion::simulate_observed(
            p, -1.0, n_obs, 1.0, 2, diffusion::Scheme::ExactDrift,
            rep_seed(seed, r));
        double rho = estimate::sample_acf(path.values, 1);
        out.theta_hat[r] = estimate::estimate_theta(rho, 1.0);
    });
    int ok = 0;
    for (double th : out.theta_hat)
        if (std::isfinite(th) && std::abs(th - p.theta) <= out.tol) ++ok;
    out.frac_within = double(ok) / reps;
    return out;
}

SizeStudy run_size_study(int reps, std::size_t n_obs, std::uint64_t seed) {
    const FsParams p(5.0, 20.0, 1.0);
    const auto sys = fspoly::build_system(p);
    SizeStudy out;
    out.p_m1.resize(reps);
    out.p_m2.resize(reps);
    parallel_reps(reps, [&](int r) {
        auto path = diffusion::simulate_observed(
            p, -1.0, n_obs, 1.0, 50, diffusion::Scheme::ExactDrift,
            rep_seed(seed, r));
        out.p_m1[r] = gof::test_single(p, sys, path.values, 1, 1.0).p_value;
        out.p_m2[r] = gof::test_joint(p, sys, path.values, 2, 1.0).p_value;
    });
    int r1 = 0, r2 = 0;
    for (int r = 0; r < reps; ++r) {
        r1 += out.p_m1[r] < 0.05;
        r2 += out.p_m2[r] < 0.05;
    }
    out.reject_rate_m1 = double(r1) / reps;
    out.reject_rate_m2 = double(r2) / reps;
    return out;
}

PowerStudy run_power_study(int reps, std::size_t n_obs, std::uint64_t seed) {
    const FsParams p(5.0, 20.0, 1.0);
    const auto sys = fspoly::build_system(p);
    const double shape = 2.0;
    const double scale = fsdist::moment(p, 1) / shape; // matched mean
    PowerStudy out;
    out.p_values.resize(reps);
    parallel_reps(reps, [&](int r) {
        Rng rng(rep_seed(seed, r));
        std::vector<double> x(n_obs);
        for (auto& v : x) v = scale * rng.gamma(shape);
        out.p_values[r] = gof::test_joint(p, sys, x, 2, 1.0).p_value;
    });
    int rej = 0;
    for (double pv : out.p_values) rej += pv < 0.05;
    out.reject_rate = double(rej) / reps;
    return out;
}

} // namespace fsdiff::studies
