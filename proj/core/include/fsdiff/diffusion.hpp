#ifndef FSDIFF_DIFFUSION_HPP
#define FSDIFF_DIFFUSION_HPP

#include "fsdiff/fsdist.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fsdiff::diffusion {

enum class Scheme {
    Euler,
    Milstein,
    // Exponential-Euler step with the exact linear-drift decay factor.
    // It reproduces the conditional mean at any step and the stationary
    // mean/variance and the ACF exactly at any step size, which the Monte
    // Carlo acceptance studies rely on (see README / design notes).
    ExactDrift,
};

const char* scheme_name(Scheme s);
std::optional<Scheme> scheme_from_name(const std::string& name);

struct SamplePath {
    std::vector<double> times;
    std::vector<double> values;
    std::optional<double> dt;   // uniform spacing when uniform
    std::string origin;         // "simulated(seed=...,scheme=...)" or "ingested(...)"
    long clamp_count = 0;       // positivity-floor events (discretization diagnostic)
};

struct BoundaryReport {
    std::string left_feller;    // "regular" (alpha < 2) or "entrance" (alpha > 2)
    std::string right_feller;   // "natural"
    std::string left_lp_lc;     // "limit_circle" (alpha < 4) or "limit_point"
    std::string right_lp_lc;    // "limit_point"
    double cutoff_lambda = 0.0; // theta beta^2 / (8 (beta - 2))
    std::string left_osc;       // "non_oscillatory"
    std::string right_osc;      // "NO for lambda <= Lambda, O for lambda > Lambda"
};

// drift mu(x) = -theta (x - beta/(beta-2))
double drift(const FsParams& p, double x);

// sigma(x) = sqrt(4 theta x (alpha x + beta) / (alpha (beta - 2)))
double diffusion_coeff(const FsParams& p, double x);

// scale density Eq. (11), speed density Eq. (12), speed mass Eq. (13)
double scale_density(const FsParams& p, double x);
double speed_density(const FsParams& p, double x);
double speed_mass(const FsParams& p);

// Theorem 3 case analysis (lookup); throws UnclassifiedParameter on the
// excluded lattice alpha in {2m}
BoundaryReport classify_boundaries(const FsParams& p);

// E[X_t | X_0 = x0] = x0 e^{-theta t} + mu (1 - e^{-theta t})
double cond_mean(const FsParams& p, double x0, double t);

// stationary ACF e^{-theta t}; requires beta > 4
double acf(const FsParams& p, double t);

// Lamperti-transformed drift
double lamperti_drift(const FsParams& p, double y);

// discretized path on [0, t_end] with uniform step dt; x0 < 0 requests a
// stationary draw for the initial state
SamplePath simulate(const FsParams& p, double x0, double t_end, double dt,
                    Scheme scheme, std::uint64_t seed);

// n_obs observations spaced obs_dt apart, each advanced by `substeps`
// internal steps; only the observations are stored (memory-friendly for the
// Monte Carlo studies). x0 < 0 requests a stationary initial draw.
SamplePath simulate_observed(const FsParams& p, double x0, std::size_t n_obs,
                             double obs_dt, int substeps, Scheme scheme,
                             std::uint64_t seed);

// CSV serialization: header "t,x", 17 significant digits
void write_csv(const SamplePath& path, const std::string& filename);
SamplePath read_csv(const std::string& filename);

} // namespace fsdiff::diffusion

#endif
