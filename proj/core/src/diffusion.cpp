#include "fsdiff/diffusion.hpp"
#include "fsdiff/error.hpp"
#include "fsdiff/rng.hpp"
#include "fsdiff/specfun.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fsdiff::diffusion {

namespace {
constexpr double kFloor = 1e-12; // positivity floor (boundary unattainable in
                                 // continuous time; clamps measure step error)
}

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::Euler: return "euler";
        case Scheme::Milstein: return "milstein";
        case Scheme::ExactDrift: return "exact_drift";
    }
    return "unknown";
}

std::optional<Scheme> scheme_from_name(const std::string& name) {
    if (name == "euler") return Scheme::Euler;
    if (name == "milstein") return Scheme::Milstein;
    if (name == "exact_drift") return Scheme::ExactDrift;
    return std::nullopt;
}

double drift(const FsParams& p, double x) {
    return -p.theta * (x - p.beta / (p.beta - 2.0));
}

double diffusion_coeff(const FsParams& p, double x) {
    return std::sqrt(4.0 * p.theta * x * (p.alpha * x + p.beta)
                     / (p.alpha * (p.beta - 2.0)));
}

double scale_density(const FsParams& p, double x) {
    // s(x) = x^{-alpha/2} (alpha x + beta)^{alpha/2 + beta/2 - 1}
    const double a = p.alpha, b = p.beta;
    return std::exp(-(a / 2.0) * std::log(x)
                    + (a / 2.0 + b / 2.0 - 1.0) * std::log(a * x + b));
}

double speed_density(const FsParams& p, double x) {
    // m(x) = alpha (beta-2) / (2 theta) x^{alpha/2 - 1} (alpha x + beta)^{-(alpha+beta)/2}
    const double a = p.alpha, b = p.beta;
    return a * (b - 2.0) / (2.0 * p.theta)
         * std::exp((a / 2.0 - 1.0) * std::log(x)
                    - (a + b) / 2.0 * std::log(a * x + b));
}

double speed_mass(const FsParams& p) {
    const double a = p.alpha, b = p.beta;
    return a * (b - 2.0) / (2.0 * p.theta)
         * std::exp(-(a / 2.0) * std::log(a) - (b / 2.0) * std::log(b))
         * specfun::beta(a / 2.0, b / 2.0);
}

BoundaryReport classify_boundaries(const FsParams& p) {
    const double a = p.alpha;
    double half = a / 2.0;
    if (std::abs(half - std::round(half)) <= 1e-8 && std::round(half) >= 1.0)
        throw Error(ErrorCode::UnclassifiedParameter,
                    "Theorem 3 excludes alpha on the lattice {2m}");
    BoundaryReport r;
    r.left_feller = (a < 2.0) ? "regular" : "entrance";
    r.right_feller = "natural";
    r.left_lp_lc = (a < 4.0) ? "limit_circle" : "limit_point";
    r.right_lp_lc = "limit_point";
    r.cutoff_lambda = p.theta * p.beta * p.beta / (8.0 * (p.beta - 2.0));
    r.left_osc = "non_oscillatory";
    r.right_osc = "NO for lambda <= Lambda, O for lambda > Lambda";
    return r;
}

double cond_mean(const FsParams& p, double x0, double t) {
    double e = std::exp(-p.theta * t);
    return x0 * e + p.beta / (p.beta - 2.0) * (1.0 - e);
}

double acf(const FsParams& p, double t) {
    if (!(p.beta > 4.0))
        throw Error(ErrorCode::MomentDoesNotExist,
                    "ACF requires finite variance (beta > 4)");
    return std::exp(-p.theta * t);
}

double lamperti_drift(const FsParams& p, double y) {
    const double a = p.alpha, b = p.beta, th = p.theta;
    return (a - b - 1.0) / 2.0 * std::sqrt(th / (b - 2.0))
         * std::tanh(y * std::sqrt(b * th / (b - 2.0)));
}

namespace {

struct Stepper {
    const FsParams& p;
    Scheme scheme;
    double dt;
    double mu;          // stationary mean
    double c_sigma2;    // sigma^2(x) = c * x (alpha x + beta)
    double rho, vload;  // exact-drift decay and variance loading
    long* clamp_count;

    Stepper(const FsParams& p_, Scheme s, double dt_, long* cc)
        : p(p_), scheme(s), dt(dt_),
          mu(p_.beta / (p_.beta - 2.0)),
          c_sigma2(4.0 * p_.theta / (p_.alpha * (p_.beta - 2.0))),
          rho(std::exp(-p_.theta * dt_)),
          vload(0.0), clamp_count(cc) {
        vload = (1.0 - rho * rho) / (2.0 * p.theta);
    }

    double step(double x, Rng& rng) const {
        double z = rng.normal();
        double out;
        if (scheme == Scheme::ExactDrift) {
            double sig = std::sqrt(c_sigma2 * x * (p.alpha * x + p.beta));
            out = mu + (x - mu) * rho + sig * std::sqrt(vload) * z;
        } else {
            double dw = z * std::sqrt(dt);
            double sig = std::sqrt(c_sigma2 * x * (p.alpha * x + p.beta));
            out = x - p.theta * (x - mu) * dt + sig * dw;
            if (scheme == Scheme::Milstein) {
                // sigma sigma' = 2 theta (2 alpha x + beta) / (alpha (beta-2))
                double ssp = 2.0 * p.theta * (2.0 * p.alpha * x + p.beta)
                           / (p.alpha * (p.beta - 2.0));
                out += 0.5 * ssp * (dw * dw - dt);
            }
        }
        if (out < kFloor) {
            out = kFloor;
            ++(*clamp_count);
        }
        return out;
    }
};

double initial_state(const FsParams& p, double x0, Rng& rng) {
    if (x0 >= 0.0) {
        if (!(x0 > 0.0))
            throw Error(ErrorCode::DomainError, "x0 must be positive");
        return x0;
    }
    // stationary draw
    return p.beta / p.alpha * rng.gamma(p.alpha / 2.0) / rng.gamma(p.beta / 2.0);
}

void check_step(const FsParams& p, double dt, Scheme scheme) {
    if (!(dt > 0.0))
        throw Error(ErrorCode::DomainError, "dt must be positive");
    // the exponential-Euler (exact-drift) step has no explicit-drift
    // stability limit; only the explicit schemes need the guard
    if (scheme != Scheme::ExactDrift && p.theta * dt > 0.5)
        throw Error(ErrorCode::StepTooLarge,
                    "stability guard: theta * dt must not exceed 0.5");
}

std::string origin_string(Scheme scheme, std::uint64_t seed) {
    std::ostringstream os;
    os << "simulated(seed=" << seed << ",scheme=" << scheme_name(scheme) << ")";
    return os.str();
}

} // namespace

SamplePath simulate(const FsParams& p, double x0, double t_end, double dt,
                    Scheme scheme, std::uint64_t seed) {
    check_step(p, dt, scheme);
    if (!(t_end >= dt))
        throw Error(ErrorCode::DomainError, "t_end must be at least dt");
    const std::size_t n_steps = std::size_t(std::llround(t_end / dt));
    SamplePath path;
    path.dt = dt;
    path.origin = origin_string(scheme, seed);
    path.times.resize(n_steps + 1);
    path.values.resize(n_steps + 1);
    Rng rng(seed);
    Stepper st(p, scheme, dt, &path.clamp_count);
    double x = initial_state(p, x0, rng);
    path.times[0] = 0.0;
    path.values[0] = x;
    for (std::size_t i = 1; i <= n_steps; ++i) {
        x = st.step(x, rng);
        path.times[i] = i * dt;
        path.values[i] = x;
    }
    return path;
}

SamplePath simulate_observed(const FsParams& p, double x0, std::size_t n_obs,
                             double obs_dt, int substeps, Scheme scheme,
                             std::uint64_t seed) {
    if (substeps < 1)
        throw Error(ErrorCode::DomainError, "substeps must be >= 1");
    const double dt = obs_dt / substeps;
    check_step(p, dt, scheme);
    SamplePath path;
    path.dt = obs_dt;
    path.origin = origin_string(scheme, seed);
    path.times.resize(n_obs);
    path.values.resize(n_obs);
    Rng rng(seed);
    Stepper st(p, scheme, dt, &path.clamp_count);
    double x = initial_state(p, x0, rng);
    for (std::size_t i = 0; i < n_obs; ++i) {
        if (i > 0)
            for (int k = 0; k < substeps; ++k) x = st.step(x, rng);
        path.times[i] = i * obs_dt;
        path.values[i] = x;
    }
    return path;
}

void write_csv(const SamplePath& path, const std::string& filename) {
    std::FILE* f = std::fopen(filename.c_str(), "w");
    if (!f) throw Error(ErrorCode::DomainError, "cannot open " + filename);
    std::fputs("t,x\n", f);
    for (std::size_t i = 0; i < path.times.size(); ++i)
        std::fprintf(f, "%.17g,%.17g\n", path.times[i], path.values[i]);
    std::fclose(f);
}

SamplePath read_csv(const std::string& filename) {
    std::ifstream in(filename);
    if (!in) throw Error(ErrorCode::DomainError, "cannot open " + filename);
    SamplePath path;
    path.origin = "ingested(" + filename + ")";
    std::string line;
    if (!std::getline(in, line) || line.rfind("t,x", 0) != 0)
        throw Error(ErrorCode::DomainError, "CSV must start with header t,x");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw Error(ErrorCode::DomainError, "malformed CSV row: " + line);
        double t = std::stod(line.substr(0, comma));
        double x = std::stod(line.substr(comma + 1));
        if (!path.times.empty() && t <= path.times.back())
            throw Error(ErrorCode::DomainError, "times must be strictly increasing");
        if (!(x > 0.0))
            throw Error(ErrorCode::DomainError, "values must be positive");
        path.times.push_back(t);
        path.values.push_back(x);
    }
    if (path.times.size() >= 2) {
        double d0 = path.times[1] - path.times[0];
        bool uniform = true;
        for (std::size_t i = 2; i < path.times.size(); ++i)
            if (std::abs(path.times[i] - path.times[i - 1] - d0) > 1e-9 * d0) {
                uniform = false;
                break;
            }
        if (uniform) path.dt = d0;
    }
    return path;
}

} // namespace fsdiff::diffusion
