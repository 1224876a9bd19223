#include "nlk/special.hpp"

#include <cmath>

#include "nlk/errors.hpp"

namespace nlk {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Lanczos coefficients for g = 7, n = 9.
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

double lanczos_series(double x) {
    double a = kLanczos[0];
    for (int i = 1; i < 9; ++i) a += kLanczos[i] / (x + i);
    return a;
}

} // namespace

double gamma_fn(double x) {
    if (!std::isfinite(x)) throw InvalidParameter("gamma_fn: non-finite argument");
    if (x <= 0.0 && x == std::floor(x)) throw InvalidParameter("gamma_fn: pole at non-positive integer");
    if (x < 0.5) {
        // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
        return kPi / (std::sin(kPi * x) * gamma_fn(1.0 - x));
    }
    double z = x - 1.0;
    double a = lanczos_series(z);
    double t = z + kLanczosG + 0.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

double lgamma_fn(double x) {
    if (!(x > 0.0)) throw InvalidParameter("lgamma_fn: requires x > 0");
    if (x < 0.5) {
        return std::log(kPi / std::sin(kPi * x)) - lgamma_fn(1.0 - x);
    }
    double z = x - 1.0;
    double a = lanczos_series(z);
    double t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

double beta_fn(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw InvalidParameter("beta_fn: requires positive arguments");
    if (a + b < 170.0) return gamma_fn(a) * gamma_fn(b) / gamma_fn(a + b);
    return std::exp(lgamma_fn(a) + lgamma_fn(b) - lgamma_fn(a + b));
}

double sphere_area(int m) {
    if (m < 1) throw InvalidParameter("sphere_area: requires m >= 1");
    return 2.0 * std::pow(kPi, 0.5 * m) / gamma_fn(0.5 * m);
}

double sphere_pmoment(int m, double p) {
    if (m < 1) throw InvalidParameter("sphere_pmoment: requires m >= 1");
    if (!(p >= 0.0)) throw InvalidParameter("sphere_pmoment: requires p >= 0");
    return 2.0 * std::pow(kPi, 0.5 * (m - 1)) * gamma_fn(0.5 * (p + 1.0)) / gamma_fn(0.5 * (p + m));
}

double cauchy_moment(int m, double q) {
    if (m < 0) throw InvalidParameter("cauchy_moment: requires m >= 0");
    if (m == 0) return 1.0;
    if (!(2.0 * q > m)) throw InvalidParameter("cauchy_moment: divergent, needs 2q > m");
    return std::pow(kPi, 0.5 * m) * gamma_fn(q - 0.5 * m) / gamma_fn(q);
}

} // namespace nlk
