#include "fsdiff/specfun.hpp"
#include "fsdiff/error.hpp"

#include <cmath>
#include <limits>

namespace fsdiff::specfun {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kLnSqrt2Pi = 0.91893853320467274178032973640561764;

// Lanczos approximation, g = 7, 9 coefficients (double-precision set).
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

// Lanczos core for Re(z) >= 0.5: returns ln Gamma(z).
template <typename T>
T lanczos_ln_gamma(T z) {
    z -= T(1);
    T a = T(kLanczos[0]);
    for (int i = 1; i < 9; ++i) a += T(kLanczos[i]) / (z + T(i));
    T t = z + T(kLanczosG + 0.5);
    return T(kLnSqrt2Pi) + (z + T(0.5)) * std::log(t) - t + std::log(a);
}

template <>
std::complex<double> lanczos_ln_gamma(std::complex<double> z) {
    z -= 1.0;
    std::complex<double> a = kLanczos[0];
    for (int i = 1; i < 9; ++i) a += kLanczos[i] / (z + double(i));
    std::complex<double> t = z + (kLanczosG + 0.5);
    return kLnSqrt2Pi + (z + 0.5) * std::log(t) - t + std::log(a);
}

} // namespace

double ln_gamma(double x) {
    if (!(x > 0.0))
        throw Error(ErrorCode::DomainError, "ln_gamma requires x > 0");
    if (x < 0.5) {
        // reflection keeps the Lanczos core in its accurate half-plane
        return std::log(kPi / std::sin(kPi * x)) - ln_gamma(1.0 - x);
    }
    return lanczos_ln_gamma<double>(x);
}

std::complex<double> ln_gamma(std::complex<double> z) {
    if (z.real() < 0.5) {
        // lnGamma(z) = ln(pi) - ln sin(pi z) - lnGamma(1 - z); the 2*pi*i
        // branch slack is documented in the header.
        std::complex<double> s = std::sin(kPi * z);
        if (s == std::complex<double>(0.0, 0.0))
            throw Error(ErrorCode::DomainError, "ln_gamma at a pole");
        return std::log(kPi) - std::log(s) - ln_gamma(1.0 - z);
    }
    return lanczos_ln_gamma<std::complex<double>>(z);
}

SignedLnGamma signed_ln_gamma(double x) {
    if (x > 0.0) return {ln_gamma(x), +1};
    double r = x - std::floor(x);
    if (r == 0.0)
        throw Error(ErrorCode::DomainError, "gamma pole at nonpositive integer");
    // reflection: |Gamma(x)| = pi / (|sin(pi x)| * Gamma(1 - x));
    // sign alternates between consecutive negative integers
    double ln = std::log(kPi / std::abs(std::sin(kPi * x))) - ln_gamma(1.0 - x);
    long long f = static_cast<long long>(std::floor(x));
    int sign = (f % 2 == 0) ? +1 : -1;
    return {ln, sign};
}

double abs_gamma_complex(double x, double y) {
    if (y == 0.0) {
        return std::exp(signed_ln_gamma(x).ln);
    }
    return std::exp(ln_gamma(std::complex<double>(x, y)).real());
}

double beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0))
        throw Error(ErrorCode::DomainError, "beta requires a, b > 0");
    return std::exp(ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b));
}

double digamma(double x) {
    if (!(x > 0.0))
        throw Error(ErrorCode::DomainError, "digamma requires x > 0");
    double result = 0.0;
    while (x < 6.0) { // recurrence into the asymptotic regime
        result -= 1.0 / x;
        x += 1.0;
    }
    // asymptotic series with Bernoulli coefficients
    double inv = 1.0 / x, inv2 = inv * inv;
    result += std::log(x) - 0.5 * inv;
    result -= inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0
              - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0
              - inv2 * 691.0 / 32760.0)))));
    return result;
}

double reg_inc_gamma_upper(double s, double x) {
    if (!(s > 0.0) || !(x >= 0.0))
        throw Error(ErrorCode::DomainError, "reg_inc_gamma_upper requires s > 0, x >= 0");
    if (x == 0.0) return 1.0;
    const double lg = ln_gamma(s);
    if (x < s + 1.0) {
        // series for P(s,x), then Q = 1 - P
        double ap = s, sum = 1.0 / s, del = sum;
        for (int n = 0; n < 500; ++n) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-16)
                return 1.0 - sum * std::exp(-x + s * std::log(x) - lg);
        }
        throw Error(ErrorCode::QuadratureNotConverged, "incomplete gamma series stalled");
    }
    // Lentz continued fraction for Q(s,x)
    const double tiny = std::numeric_limits<double>::min() / 1e-30;
    double b = x + 1.0 - s, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16)
            return h * std::exp(-x + s * std::log(x) - lg);
    }
    throw Error(ErrorCode::QuadratureNotConverged, "incomplete gamma CF stalled");
}

namespace {

// continued fraction for the regularized incomplete beta
double betacf(double a, double b, double x) {
    const double tiny = 1e-300;
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0, d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 500; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) return h;
    }
    throw Error(ErrorCode::QuadratureNotConverged, "incomplete beta CF stalled");
}

} // namespace

double reg_inc_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0) || x < 0.0 || x > 1.0)
        throw Error(ErrorCode::DomainError, "reg_inc_beta domain");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    double lbt = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b)
               + a * std::log(x) + b * std::log1p(-x);
    double bt = std::exp(lbt);
    if (x < (a + 1.0) / (a + b + 2.0))
        return bt * betacf(a, b, x) / a;
    return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

namespace {

constexpr int kSeriesCap = 10000;
constexpr double kZSwitch = 0.5;
constexpr double kIntTol = 1e-8;

// terminating series: a = -n exactly
double hyp2f1_terminating(int n, double b, double c, double z) {
    double sum = 1.0, term = 1.0;
    for (int k = 0; k < n; ++k) {
        term *= (-n + k) * (b + k) / ((c + k) * (k + 1)) * z;
        sum += term;
    }
    return sum;
}

double hyp2f1_series(double a, double b, double c, double z) {
    double sum = 1.0, term = 1.0, prev = std::numeric_limits<double>::max();
    for (int k = 0; k < kSeriesCap; ++k) {
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z;
        sum += term;
        double at = std::abs(term);
        if (at < 1e-15 * std::abs(sum) && at <= prev) return sum;
        prev = at;
    }
    throw Error(ErrorCode::NonconvergentSeries,
                "2F1 series exceeded the 10000-term cap");
}

// signed product of gammas: Gamma(p1) Gamma(p2) / (Gamma(q1) Gamma(q2));
// a pole in the denominator kills the whole product (ratio -> 0)
double gamma_ratio(double p1, double p2, double q1, double q2) {
    if ((q1 <= 0.0 && is_nonpositive_integer(q1, kIntTol))
        || (q2 <= 0.0 && is_nonpositive_integer(q2, kIntTol)))
        return 0.0;
    auto g1 = signed_ln_gamma(p1), g2 = signed_ln_gamma(p2);
    auto h1 = signed_ln_gamma(q1), h2 = signed_ln_gamma(q2);
    double ln = g1.ln + g2.ln - h1.ln - h2.ln;
    int sign = g1.sign * g2.sign * h1.sign * h2.sign;
    return sign * std::exp(ln);
}

} // namespace

double hyp2f1(const Hyp2F1Args& args) {
    const double a = args.a, b = args.b, c = args.c, z = args.z;

    const bool a_term = is_nonpositive_integer(a, kIntTol);
    const bool b_term = is_nonpositive_integer(b, kIntTol);
    if (is_nonpositive_integer(c, kIntTol)) {
        // admissible only when the series terminates before hitting the pole
        double n = a_term ? -std::round(a) : (b_term ? -std::round(b)
                  : std::numeric_limits<double>::infinity());
        if (!(n < -std::round(c) + 0.5))
            throw Error(ErrorCode::DomainError,
                        "hyp2f1: c is a nonpositive integer and series does not terminate first");
    }
    // terminating cases are polynomials, valid for every real z
    if (a_term) return hyp2f1_terminating(int(-std::round(a)), b, c, z);
    if (b_term) return hyp2f1_terminating(int(-std::round(b)), a, c, z);
    if (!(z < 1.0))
        throw Error(ErrorCode::DomainError, "hyp2f1 requires z < 1");
    if (z == 0.0) return 1.0;
    if (z > 0.0 || -z <= kZSwitch) return hyp2f1_series(a, b, c, z);

    // Pfaff transformation z -> z/(z-1) in (0, 1): the fallback whenever the
    // 1/z continuation is unavailable, and the default on (-1, -z_switch)
    // where the series loses accuracy but 1/z lies outside the unit disk
    auto pfaff = [&]() {
        return std::pow(1.0 - z, -a)
             * hyp2f1(Hyp2F1Args{a, c - b, c, z / (z - 1.0)});
    };
    if (z > -1.0) return pfaff();

    // z <= -1: continuation Eq. (B.4) to argument 1/z; the formula
    // degenerates when a - b is an integer, where Pfaff takes over
    if (std::abs(a - b - std::round(a - b)) <= kIntTol) return pfaff();
    const double w = 1.0 / z;
    double t1 = gamma_ratio(c, b - a, b, c - a) * std::pow(-z, -a)
              * hyp2f1_series(a, 1.0 - c + a, 1.0 - b + a, w);
    double t2 = gamma_ratio(c, a - b, a, c - b) * std::pow(-z, -b)
              * hyp2f1_series(b, 1.0 - c + b, 1.0 - a + b, w);
    return t1 + t2;
}

namespace {

using cld = std::complex<long double>;

cld series_cld(cld a, cld b, cld c, long double z, int cap, bool deriv) {
    if (deriv) {
        cld f = a * b / c;
        a += 1.0L; b += 1.0L; c += 1.0L;
        cld sum = 1.0L, term = 1.0L;
        long double prev = std::numeric_limits<long double>::max();
        for (int k = 0; k < cap; ++k) {
            term *= (a + cld(k)) * (b + cld(k)) / ((c + cld(k)) * (k + 1.0L)) * z;
            sum += term;
            long double at = std::abs(term);
            if (at < 1e-18L * std::abs(sum) && at <= prev) return f * sum;
            prev = at;
        }
        throw Error(ErrorCode::NonconvergentSeries, "complex 2F1 series cap hit");
    }
    cld sum = 1.0L, term = 1.0L;
    long double prev = std::numeric_limits<long double>::max();
    for (int k = 0; k < cap; ++k) {
        term *= (a + cld(k)) * (b + cld(k)) / ((c + cld(k)) * (k + 1.0L)) * z;
        sum += term;
        long double at = std::abs(term);
        if (at < 1e-18L * std::abs(sum) && at <= prev) return sum;
        prev = at;
    }
    throw Error(ErrorCode::NonconvergentSeries, "complex 2F1 series cap hit");
}

cld to_cld(std::complex<double> z) { return cld(z.real(), z.imag()); }

} // namespace

std::complex<double> hyp2f1_series_complex(std::complex<double> a,
                                           std::complex<double> b,
                                           double c, double z, int term_cap) {
    cld r = series_cld(to_cld(a), to_cld(b), cld(c), (long double)z,
                       term_cap, false);
    return {double(r.real()), double(r.imag())};
}

std::complex<double> hyp2f1_series_complex(std::complex<double> a,
                                           std::complex<double> b,
                                           std::complex<double> c, double z,
                                           int term_cap) {
    cld r = series_cld(to_cld(a), to_cld(b), to_cld(c), (long double)z,
                       term_cap, false);
    return {double(r.real()), double(r.imag())};
}

std::complex<double> hyp2f1_series_complex_deriv(std::complex<double> a,
                                                 std::complex<double> b,
                                                 double c, double z, int term_cap) {
    cld r = series_cld(to_cld(a), to_cld(b), cld(c), (long double)z,
                       term_cap, true);
    return {double(r.real()), double(r.imag())};
}

} // namespace fsdiff::specfun
