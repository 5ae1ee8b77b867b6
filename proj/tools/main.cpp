// fsdiff: command-line front end for the Fisher-Snedecor diffusion library.
//
// Subcommands: simulate, estimate, test, density, poly, replicate.
// Data goes to files (or stdout for CSV tables); diagnostics and error
// envelopes go to stderr. Exit status: 0 success, 1 validation error,
// 2 numeric failure.

#include "fsdiff/diffusion.hpp"
#include "fsdiff/error.hpp"
#include "fsdiff/estimate.hpp"
#include "fsdiff/fsdist.hpp"
#include "fsdiff/fspoly.hpp"
#include "fsdiff/gof.hpp"
#include "fsdiff/spectral.hpp"
#include "fsdiff/studies.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

using json = nlohmann::json;
using namespace fsdiff;

namespace {

constexpr int kSchemaVersion = 1;

// JSON config file support for CLI11: {"subcommand": {"option": value}};
// command-line flags take precedence (CLI11 default behaviour).
class ConfigJson : public CLI::Config {
public:
    std::string to_config(const CLI::App*, bool, bool,
                          std::string) const override {
        return "";
    }
    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        json j;
        try {
            j = json::parse(input);
        } catch (const json::parse_error& e) {
            throw Error(ErrorCode::DomainError,
                        std::string("config file is not valid JSON: ") + e.what());
        }
        std::vector<CLI::ConfigItem> out;
        for (auto& [sub, obj] : j.items()) {
            if (!obj.is_object())
                throw CLI::ConversionError("config: top level must map "
                                           "subcommands to option objects");
            for (auto& [key, val] : obj.items()) {
                CLI::ConfigItem item;
                item.parents = {sub};
                item.name = key;
                if (val.is_string())
                    item.inputs = {val.get<std::string>()};
                else
                    item.inputs = {val.dump()};
                out.push_back(std::move(item));
            }
        }
        return out;
    }
};

void write_text(const std::string& path, const std::string& text) {
    if (path == "-" || path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream f(path);
    if (!f) throw Error(ErrorCode::DomainError, "cannot open " + path);
    f << text;
}

double normal_quantile(double q) {
    // bisection on the standard normal CDF (erfc); plenty for CI levels
    double lo = -10.0, hi = 10.0;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (0.5 * std::erfc(-mid / std::sqrt(2.0)) < q ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

struct ParamFlags {
    double alpha = 0.0, beta = 0.0, theta = 0.0;
    void add(CLI::App* cmd) {
        cmd->add_option("--alpha", alpha, "FS degrees of freedom alpha")
            ->required();
        cmd->add_option("--beta", beta, "FS degrees of freedom beta")
            ->required();
        cmd->add_option("--theta", theta, "mean-reversion rate theta")
            ->required();
    }
    FsParams params() const { return FsParams(alpha, beta, theta); }
};

json report_to_json(const estimate::EstimationReport& r, double level,
                    double zq) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["alpha_hat"] = r.alpha_hat;
    j["beta_hat"] = r.beta_hat;
    j["theta_hat"] = std::isfinite(r.theta_hat) ? json(r.theta_hat) : json();
    j["rho_hat"] = r.rho_hat;
    j["m1"] = r.m1;
    j["m2"] = r.m2;
    j["lag_t"] = r.lag_time;
    j["n_effective"] = r.n;
    if (r.has_cov) {
        j["cov_asymptotic"] = {{r.cov_ab.a11, r.cov_ab.a12},
                               {r.cov_ab.a12, r.cov_ab.a22}};
        j["ci_level"] = level;
        j["ci_alpha"] = {r.alpha_hat - zq * r.alpha_se,
                         r.alpha_hat + zq * r.alpha_se};
        j["ci_beta"] = {r.beta_hat - zq * r.beta_se,
                        r.beta_hat + zq * r.beta_se};
    } else {
        j["cov_asymptotic"] = nullptr;
        j["ci_alpha"] = nullptr;
        j["ci_beta"] = nullptr;
    }
    j["warnings"] = r.warnings;
    return j;
}

json gof_to_json(const gof::GofResult& r) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["statistic"] = r.statistic;
    j["dof"] = r.dof;
    j["p_value"] = r.p_value;
    j["degrees"] = r.degrees;
    j["per_poly_z"] = r.per_poly_z;
    j["variance_diag"] = r.variance_diag;
    j["params_source"] = r.params_source;
    return j;
}

double require_uniform_dt(const diffusion::SamplePath& path) {
    if (!path.dt)
        throw Error(ErrorCode::DomainError,
                    "input CSV must be uniformly spaced in time");
    return *path.dt;
}

int run(int argc, char** argv) {
    CLI::App app{"Fisher-Snedecor diffusion toolkit"};
    app.require_subcommand(1);
    app.fallthrough(); // lets `fsdiff <sub> --config f` reach the global option
    app.config_formatter(std::make_shared<ConfigJson>());
    app.set_config("--config", "", "JSON config file (flags take precedence)");

    // --- simulate ---
    auto* sim = app.add_subcommand("simulate", "simulate a sample path")->configurable();
    ParamFlags sim_p;
    sim_p.add(sim);
    double sim_x0 = 1.0, sim_tend = 10.0, sim_dt = 0.0;
    bool sim_stat = false;
    std::string sim_scheme = "milstein", sim_out;
    std::uint64_t sim_seed = 0;
    sim->add_option("--x0", sim_x0, "initial state");
    sim->add_flag("--stationary", sim_stat, "draw the initial state from FS");
    sim->add_option("--t-end", sim_tend, "simulation horizon")->required();
    sim->add_option("--dt", sim_dt, "step size (default: 0.01/theta)");
    sim->add_option("--scheme", sim_scheme,
                    "euler | milstein | exact_drift");
    sim->add_option("--seed", sim_seed, "RNG seed")->required();
    sim->add_option("--out", sim_out, "output CSV path")->required();

    // --- estimate ---
    auto* est = app.add_subcommand("estimate", "method-of-moments estimation")->configurable();
    std::string est_in, est_out;
    std::size_t est_lag = 1;
    double est_level = 0.95;
    est->add_option("--in", est_in, "input CSV path")->required();
    est->add_option("--lag-steps", est_lag, "ACF lag in observation steps");
    est->add_option("--level", est_level, "confidence level");
    est->add_option("--out", est_out, "output JSON path")->required();

    // --- test ---
    auto* tst = app.add_subcommand("test", "goodness-of-fit test")->configurable();
    ParamFlags tst_p;
    tst_p.add(tst);
    std::string tst_in, tst_out;
    int tst_m = 0, tst_j = 0;
    tst->add_option("--in", tst_in, "input CSV path")->required();
    auto* opt_m = tst->add_option("--m", tst_m, "joint test order (degrees 1..m)");
    auto* opt_j = tst->add_option("--j", tst_j, "single-condition degree");
    opt_m->excludes(opt_j);
    tst->add_option("--out", tst_out, "output JSON path")->required();

    // --- density ---
    auto* den = app.add_subcommand("density", "spectral transition density")->configurable();
    ParamFlags den_p;
    den_p.add(den);
    double den_x0 = 1.0, den_t = 1.0;
    std::vector<double> den_grid;
    std::string den_out;
    den->add_option("--x0", den_x0, "conditioning state")->required();
    den->add_option("--t", den_t, "time horizon")->required();
    den->add_option("--grid", den_grid, "x_min,x_max,n")
        ->delimiter(',')->expected(3)->required();
    den->add_option("--out", den_out, "output CSV path ('-' for stdout)");

    // --- poly ---
    auto* pol = app.add_subcommand("poly", "orthonormal polynomial table")->configurable();
    ParamFlags pol_p;
    pol_p.add(pol);
    int pol_max = -1;
    std::string pol_out;
    pol->add_option("--max-degree", pol_max, "truncate the table (default: N)");
    pol->add_option("--out", pol_out, "output CSV path ('-' for stdout)");

    // --- replicate ---
    auto* rep = app.add_subcommand("replicate", "Monte Carlo study driver")->configurable();
    std::string rep_study, rep_out;
    int rep_reps = 100;
    std::uint64_t rep_seed = 0;
    std::size_t rep_n = 0;
    rep->add_option("--study", rep_study, "coverage | size | power | theta")
        ->required();
    rep->add_option("--reps", rep_reps, "number of replications")->required();
    rep->add_option("--seed", rep_seed, "base RNG seed")->required();
    rep->add_option("--n", rep_n, "observations per replication (default per study)");
    rep->add_option("--out", rep_out, "summary JSON path ('-' for stdout)");

    CLI11_PARSE(app, argc, argv);

    if (sim->parsed()) {
        FsParams p = sim_p.params();
        if (sim_dt <= 0.0) sim_dt = 0.01 / p.theta;
        double x0 = sim_stat ? -1.0 : sim_x0;
        auto scheme = diffusion::scheme_from_name(sim_scheme);
        if (!scheme)
            throw Error(ErrorCode::DomainError,
                        "unknown scheme: " + sim_scheme);
        auto path = diffusion::simulate(p, x0, sim_tend, sim_dt, *scheme,
                                        sim_seed);
        diffusion::write_csv(path, sim_out);
        if (path.clamp_count > 0)
            std::cerr << "warning: " << path.clamp_count
                      << " positivity-floor clamps\n";
        return 0;
    }

    if (est->parsed()) {
        auto path = diffusion::read_csv(est_in);
        double dt = require_uniform_dt(path);
        auto r = estimate::estimate(path.values, dt, est_lag);
        if (!(est_level > 0.0) || !(est_level < 1.0))
            throw Error(ErrorCode::DomainError, "level must be in (0,1)");
        double zq = normal_quantile(1.0 - (1.0 - est_level) / 2.0);
        write_text(est_out, report_to_json(r, est_level, zq).dump(2) + "\n");
        return 0;
    }

    if (tst->parsed()) {
        FsParams p = tst_p.params();
        auto path = diffusion::read_csv(tst_in);
        double dt = require_uniform_dt(path);
        gof::GofResult r = (tst_j > 0)
            ? gof::test_single(p, path.values, tst_j, dt)
            : gof::test_joint(p, path.values, tst_m > 0 ? tst_m : 2, dt);
        write_text(tst_out, gof_to_json(r).dump(2) + "\n");
        return 0;
    }

    if (den->parsed()) {
        FsParams p = den_p.params();
        auto ctx = spectral::make_context(p);
        double lo = den_grid[0], hi = den_grid[1];
        int n = int(den_grid[2]);
        if (!(lo > 0.0) || !(hi > lo) || n < 2)
            throw Error(ErrorCode::DomainError, "grid must be x_min,x_max,n "
                        "with 0 < x_min < x_max and n >= 2");
        spectral::DensityEvaluator ev(ctx, den_x0, den_t);
        std::string out = "x,p_d,p_c,p\n";
        char buf[128];
        for (int i = 0; i < n; ++i) {
            double x = lo + (hi - lo) * i / (n - 1);
            auto parts = ev.parts(x);
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n",
                          x, parts.p_d, parts.p_c, parts.p);
            out += buf;
        }
        write_text(den_out, out);
        return 0;
    }

    if (pol->parsed()) {
        FsParams p = pol_p.params();
        auto sys = fspoly::build_system(p);
        int top = (pol_max >= 0) ? pol_max : int(sys.size()) - 1;
        if (top >= int(sys.size()))
            throw Error(ErrorCode::IndexOutOfSystem,
                        "max-degree exceeds the normalizable system");
        std::string out = "degree,eigenvalue,power,coefficient\n";
        char buf[128];
        for (int n = 0; n <= top; ++n)
            for (std::size_t k = 0; k < sys[n].coeffs.size(); ++k) {
                std::snprintf(buf, sizeof buf, "%d,%.17g,%zu,%.17g\n",
                              n, sys[n].eigenvalue, k, sys[n].coeffs[k]);
                out += buf;
            }
        write_text(pol_out, out);
        return 0;
    }

    if (rep->parsed()) {
        json j;
        j["schema_version"] = kSchemaVersion;
        j["study"] = rep_study;
        j["reps"] = rep_reps;
        j["seed"] = rep_seed;
        j["workers"] = studies::worker_count();
        if (rep_study == "coverage") {
            auto s = studies::run_coverage_study(
                rep_reps, rep_n ? rep_n : 100000, rep_seed);
            j["coverage_alpha"] = s.coverage_alpha;
            j["coverage_beta"] = s.coverage_beta;
            j["ks_alpha"] = s.ks_alpha;
            j["ks_beta"] = s.ks_beta;
            json rows = json::array();
            for (auto& r : s.rows)
                rows.push_back({{"alpha_hat", r.alpha_hat},
                                {"beta_hat", r.beta_hat},
                                {"z_alpha", r.z_alpha},
                                {"z_beta", r.z_beta},
                                {"cover_alpha", r.cover_alpha},
                                {"cover_beta", r.cover_beta}});
            j["rows"] = rows;
        } else if (rep_study == "theta") {
            auto s = studies::run_theta_study(
                rep_reps, rep_n ? rep_n : 200000, rep_seed);
            j["frac_within_tol"] = s.frac_within;
            j["tol"] = s.tol;
            j["rows"] = s.theta_hat;
        } else if (rep_study == "size") {
            auto s = studies::run_size_study(
                rep_reps, rep_n ? rep_n : 10000, rep_seed);
            j["reject_rate_m1"] = s.reject_rate_m1;
            j["reject_rate_m2"] = s.reject_rate_m2;
            json rows = json::array();
            for (int r = 0; r < rep_reps; ++r)
                rows.push_back({{"p_m1", s.p_m1[r]}, {"p_m2", s.p_m2[r]}});
            j["rows"] = rows;
        } else if (rep_study == "power") {
            auto s = studies::run_power_study(
                rep_reps, rep_n ? rep_n : 10000, rep_seed);
            j["reject_rate"] = s.reject_rate;
            j["rows"] = s.p_values;
        } else {
            throw Error(ErrorCode::DomainError,
                        "unknown study: " + rep_study);
        }
        write_text(rep_out, j.dump(2) + "\n");
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        json env = {{"schema_version", kSchemaVersion},
                    {"error", {{"code", e.code_name()},
                               {"message", e.what()}}}};
        std::cerr << env.dump(2) << "\n";
        return error_exit_status(e.code());
    } catch (const std::exception& e) {
        json env = {{"schema_version", kSchemaVersion},
                    {"error", {{"code", "INTERNAL"},
                               {"message", e.what()}}}};
        std::cerr << env.dump(2) << "\n";
        return 2;
    }
}
