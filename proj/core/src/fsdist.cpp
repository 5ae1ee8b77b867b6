#include "fsdiff/fsdist.hpp"
#include "fsdiff/error.hpp"
#include "fsdiff/rng.hpp"
#include "fsdiff/specfun.hpp"

#include <cmath>
#include <limits>

namespace fsdiff {

FsParams::FsParams(double alpha_, double beta_, double theta_)
    : alpha(alpha_), beta(beta_), theta(theta_) {
    if (!(alpha > 0.0) || !(beta > 2.0) || !(theta > 0.0))
        throw Error(ErrorCode::DomainError,
                    "FsParams requires alpha > 0, beta > 2, theta > 0");
}

bool FsParams::spectral_ok() const {
    if (!(alpha > 2.0)) return false;
    double half = alpha / 2.0; // lattice alpha = 2(m+1) <=> alpha/2 integer >= 2
    double r = std::abs(half - std::round(half));
    return !(r <= 1e-8 && std::round(half) >= 2.0);
}

namespace fsdist {

double log_pdf(const FsParams& p, double x) {
    const double a = p.alpha, b = p.beta;
    if (x < 0.0) return -std::numeric_limits<double>::infinity();
    if (x == 0.0) {
        if (a > 2.0) return -std::numeric_limits<double>::infinity();
        if (a == 2.0)
            return std::log(a) * (a / 2.0) + std::log(b) * (b / 2.0)
                 - std::log(specfun::beta(a / 2.0, b / 2.0))
                 - (a + b) / 2.0 * std::log(b);
        return std::numeric_limits<double>::infinity(); // alpha < 2: pole
    }
    return (a / 2.0) * std::log(a) + (b / 2.0) * std::log(b)
         - std::log(specfun::beta(a / 2.0, b / 2.0))
         + (a / 2.0 - 1.0) * std::log(x)
         - (a + b) / 2.0 * std::log(a * x + b);
}

double pdf(const FsParams& p, double x) {
    double l = log_pdf(p, x);
    if (l == -std::numeric_limits<double>::infinity()) return 0.0;
    return std::exp(l);
}

double cdf(const FsParams& p, double x) {
    if (x <= 0.0) return 0.0;
    const double a = p.alpha, b = p.beta;
    return specfun::reg_inc_beta(a / 2.0, b / 2.0, a * x / (a * x + b));
}

double moment(const FsParams& p, int n) {
    if (n < 0) throw Error(ErrorCode::DomainError, "moment order must be >= 0");
    if (n == 0) return 1.0;
    const double a = p.alpha, b = p.beta;
    if (!(b > 2.0 * n))
        throw Error(ErrorCode::MomentDoesNotExist,
                    "moment of order n requires beta > 2n");
    return std::exp(n * (std::log(b) - std::log(a))
                    + specfun::ln_gamma(a / 2.0 + n) - specfun::ln_gamma(a / 2.0)
                    + specfun::ln_gamma(b / 2.0 - n) - specfun::ln_gamma(b / 2.0));
}

double moment_by_recurrence(const FsParams& p, int n) {
    if (n < 0) throw Error(ErrorCode::DomainError, "moment order must be >= 0");
    const double a = p.alpha, b = p.beta;
    if (n > 0 && !(b > 2.0 * n))
        throw Error(ErrorCode::MomentDoesNotExist,
                    "moment of order n requires beta > 2n");
    double m = 1.0; // E[X^0]
    for (int k = 0; k + 1 <= n; ++k) {
        // printed recurrence:
        // (2(k+2)/(beta+2) - 1) E[X^{k+1}]
        //     = -[beta(alpha-2) + 2 beta (k+1)] / (alpha (beta+2)) E[X^k]
        double lhs_coef = 2.0 * (k + 2.0) / (b + 2.0) - 1.0;
        double rhs_coef = -(b * (a - 2.0) + 2.0 * b * (k + 1.0)) / (a * (b + 2.0));
        m = rhs_coef * m / lhs_coef;
    }
    return m;
}

std::pair<double, double> mean_var(const FsParams& p) {
    const double a = p.alpha, b = p.beta;
    double mean = b / (b - 2.0);
    if (!(b > 4.0))
        throw Error(ErrorCode::MomentDoesNotExist, "variance requires beta > 4");
    double var = 2.0 * b * b * (a + b - 2.0)
               / (a * (b - 2.0) * (b - 2.0) * (b - 4.0));
    return {mean, var};
}

std::vector<double> sample(const FsParams& p, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> out(n);
    const double ratio = p.beta / p.alpha;
    for (std::size_t i = 0; i < n; ++i) {
        double g1 = rng.gamma(p.alpha / 2.0);
        double g2 = rng.gamma(p.beta / 2.0);
        out[i] = ratio * g1 / g2;
    }
    return out;
}

} // namespace fsdist
} // namespace fsdiff
