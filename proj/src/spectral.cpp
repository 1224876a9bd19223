#include "nlk/spectral.hpp"

#include <cmath>
#include <vector>

#include "nlk/parallel.hpp"
#include "nlk/quadrature.hpp"
#include "nlk/rng.hpp"
#include "nlk/special.hpp"

namespace nlk {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;

// int_0^{pi/2} sin^m cos^c dtheta (the tan-substituted radial profile).
QuadResult angular_profile(int m, double c) {
    auto f = [m, c](double th) {
        return std::pow(std::sin(th), m) * std::pow(std::cos(th), c);
    };
    return integrate_endpoint_singular(f, 0.0, 0.5 * kPi, static_cast<double>(m), c, 1e-12, 1e-12);
}

} // namespace

SpectralConstants spectral_constants(const FracParams& pr) {
    pr.require_p2("spectral_constants");
    SpectralConstants sc;
    sc.params = pr;
    const int d = pr.d;
    const double s = pr.s;

    QuadResult osc = osc_one_minus_cos(2.0 * s);
    if (d == 1) {
        // z^2 / |z|^{3+2s} collapses onto |z|^{-1-2s}: l1 and kappa coincide.
        sc.l1 = 2.0 * osc.value;
        sc.l1_err = 2.0 * osc.error;
        sc.kappa = sc.l1;
        sc.kappa_err = sc.l1_err;
        sc.has_l2 = false;
        return sc;
    }
    const double om = sphere_area(d - 1);
    const double q1 = 0.5 * (d + 2.0 + 2.0 * s);
    const double q0 = 0.5 * (d + 2.0 * s);

    QuadResult j1 = angular_profile(d - 2, 2.0 * q1 - d);            // z_1^2 weight
    QuadResult j2 = angular_profile(d, 2.0 * q1 - d - 2.0);          // z_perp^2 weight
    QuadResult j3 = angular_profile(d - 2, 2.0 * q0 - d + 2.0 - 2.0); // kappa profile

    sc.l1 = om * j1.value * 2.0 * osc.value;
    sc.l2 = om / (d - 1.0) * j2.value * 2.0 * osc.value;
    sc.kappa = om * j3.value * 2.0 * osc.value;
    sc.l1_err = om * (j1.error * 2.0 * osc.value + j1.value * 2.0 * osc.error);
    sc.l2_err = om / (d - 1.0) * (j2.error * 2.0 * osc.value + j2.value * 2.0 * osc.error);
    sc.kappa_err = om * (j3.error * 2.0 * osc.value + j3.value * 2.0 * osc.error);
    sc.has_l2 = true;
    return sc;
}

double SymbolMatrix::longitudinal() const {
    Vec e = xi * (1.0 / norm(xi));
    return dot(e, matrix.apply(e));
}

double SymbolMatrix::transverse() const {
    if (xi.dim() == 1) return longitudinal();
    // Any unit vector orthogonal to xi.
    Vec e(xi.dim());
    int k = 0;
    for (int i = 1; i < xi.dim(); ++i)
        if (std::fabs(xi[i]) < std::fabs(xi[k])) k = i;
    e[k] = 1.0;
    double c = dot(e, xi) / norm_sq(xi);
    e = e - xi * c;
    e = e * (1.0 / norm(e));
    return dot(e, matrix.apply(e));
}

SymbolMatrix symbol(const FracParams& pr, const Vec& xi) {
    pr.require_p2("symbol");
    if (norm_sq(xi) == 0.0) throw InvalidParameter("symbol: xi must be nonzero");
    SpectralConstants sc = spectral_constants(pr);
    const int d = pr.d;
    const double s = pr.s;
    const double amp = std::pow(kTwoPi, 2.0 * s) * std::pow(norm(xi), 2.0 * s);
    const double l2 = sc.has_l2 ? sc.l2 : 0.0;
    Mat m(d);
    double n2 = norm_sq(xi);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) m(i, j) = amp * (sc.l1 - l2) * xi[i] * xi[j] / n2;
        m(i, i) += amp * l2;
    }
    if (d == 1) m(0, 0) = amp * sc.l1;
    SymbolMatrix out;
    out.xi = xi;
    out.matrix = m;
    out.params = pr;
    return out;
}

void symbol_mc_diagnostic(const FracParams& pr, const Vec& xi, const QuadConfig& cfg, Mat& value,
                          Mat& std_error) {
    pr.require_p2("symbol_mc_diagnostic");
    if (pr.d > 3) throw InvalidParameter("symbol_mc_diagnostic: d <= 3 only");
    if (norm_sq(xi) == 0.0) throw InvalidParameter("symbol_mc_diagnostic: xi must be nonzero");
    cfg.validate();
    const int d = pr.d;
    const double s = pr.s;
    const double kernel_pow = d + 2.0 + 2.0 * s;
    const double area = sphere_area(d);

    // Radial strata: density ~ r^{1-2s} on [0,1], ~ r^{-1-2s} shells on
    // [1, R], exact power tail beyond.
    struct Shell {
        double lo, hi, e;
        int kind; // 0 near, 1 far, 2 tail
    };
    std::vector<Shell> shells;
    shells.push_back({0.0, 1.0, 2.0 - 2.0 * s, 0});
    const double rfar = 50.0;
    int nfar = std::max(1, cfg.n_strata - 2);
    for (int i = 0; i < nfar; ++i) {
        double a = std::pow(rfar, static_cast<double>(i) / nfar);
        double b = std::pow(rfar, static_cast<double>(i + 1) / nfar);
        shells.push_back({a, b, 2.0 * s, 1});
    }
    shells.push_back({rfar, 0.0, 2.0 * s, 2});
    const int K = static_cast<int>(shells.size());
    const std::int64_t base = cfg.n_samples / K, rem = cfg.n_samples % K;

    std::vector<Mat> sums(static_cast<std::size_t>(K), Mat(d));
    std::vector<Mat> sums2(static_cast<std::size_t>(K), Mat(d));
    std::vector<std::int64_t> ms(static_cast<std::size_t>(K), 0);

    parallel_for_indexed(K, cfg.jobs, [&](int k) {
        const Shell sh = shells[static_cast<std::size_t>(k)];
        const std::int64_t m = base + (k < rem ? 1 : 0);
        Rng rng(derive_seed(cfg.seed ^ 0x51513ULL, static_cast<std::uint64_t>(k)));
        Mat sum(d), sum2(d);
        for (std::int64_t i = 0; i < m; ++i) {
            Vec w = rng.unit_sphere(d);
            double u = rng.uniform01();
            double r = 0.0, g = 1.0;
            if (sh.kind == 0) {
                double a = sh.e;
                r = sh.hi * std::pow(u, 1.0 / a);
                g = a * std::pow(r, a - 1.0) / std::pow(sh.hi, a);
            } else if (sh.kind == 2) {
                r = sh.lo * std::pow(1.0 - u, -1.0 / sh.e);
                g = sh.e * std::pow(sh.lo, sh.e) * std::pow(r, -1.0 - sh.e);
            } else {
                double la = std::pow(sh.lo, -sh.e), lb = std::pow(sh.hi, -sh.e);
                r = std::pow(la - u * (la - lb), -1.0 / sh.e);
                g = sh.e * std::pow(r, -1.0 - sh.e) / (la - lb);
            }
            if (r <= 0.0) continue;
            Vec h = w * r;
            double osc = 1.0 - std::cos(kTwoPi * dot(xi, h));
            double wgt = osc * std::pow(r, -kernel_pow) * std::pow(r, d - 1) / g * area;
            for (int a2 = 0; a2 < d; ++a2)
                for (int b2 = 0; b2 < d; ++b2) {
                    double v = wgt * h[a2] * h[b2];
                    sum(a2, b2) += v;
                    sum2(a2, b2) += v * v;
                }
        }
        sums[static_cast<std::size_t>(k)] = sum;
        sums2[static_cast<std::size_t>(k)] = sum2;
        ms[static_cast<std::size_t>(k)] = m;
    });

    value = Mat(d);
    Mat var(d);
    for (int k = 0; k < K; ++k) {
        std::int64_t m = ms[static_cast<std::size_t>(k)];
        if (m < 2) continue;
        for (int a2 = 0; a2 < d; ++a2)
            for (int b2 = 0; b2 < d; ++b2) {
                double mean = sums[static_cast<std::size_t>(k)](a2, b2) / static_cast<double>(m);
                double vv = std::max(
                    0.0, (sums2[static_cast<std::size_t>(k)](a2, b2) / static_cast<double>(m) -
                          mean * mean) *
                             static_cast<double>(m) / static_cast<double>(m - 1));
                value(a2, b2) += mean;
                var(a2, b2) += vv / static_cast<double>(m);
            }
    }
    std_error = Mat(d);
    for (int a2 = 0; a2 < d; ++a2)
        for (int b2 = 0; b2 < d; ++b2) std_error(a2, b2) = std::sqrt(var(a2, b2));
}

namespace {

// Fourier modulus-squared of a Gaussian-family field: |F u|^2 = |a|^2-split
// handled by the callers; here the scalar factor
// |F g(xi)|^2 = prod_j R_j^2 exp(-2 pi R_j^2 xi_j^2).
double gauss_transform_sq(const FieldSpec& u, const Vec& xi) {
    double v = 1.0;
    const Vec& R = u.radii();
    for (int j = 0; j < u.dim(); ++j) {
        double rj = R[j];
        v *= rj * rj * std::exp(-kTwoPi * rj * rj * xi[j] * xi[j]);
    }
    return v;
}

Box frequency_box(const FieldSpec& u, double cutoff) {
    const int d = u.dim();
    // Per-axis half width where exp(-pi R^2 L^2) = cutoff.
    Vec half(d);
    for (int j = 0; j < d; ++j)
        half[j] = std::sqrt(-std::log(cutoff) / kPi) / u.radii()[j];
    return {Vec(d) - half, Vec(d) + half};
}

// Nested adaptive tensor quadrature of f over box dims [0, d).
double tensor_integrate(const std::function<double(const Vec&)>& f, const Box& box, int level,
                        Vec& x, double rel_tol) {
    const int d = box.dim();
    if (level == d - 1) {
        auto g = [&](double t) {
            x[level] = t;
            return f(x);
        };
        return gk_adaptive(g, box.lo[level], box.hi[level], 1e-14, rel_tol).value;
    }
    auto g = [&](double t) {
        x[level] = t;
        return tensor_integrate(f, box, level + 1, x, rel_tol);
    };
    return gk_adaptive(g, box.lo[level], box.hi[level], 1e-13, rel_tol).value;
}

Estimate frequency_quadrature(const FieldSpec& u, const FracParams& pr,
                              const std::function<double(const Vec&)>& integrand,
                              const FreqConfig& cfg) {
    pr.require_p2("parseval");
    if (u.family() != Family::Gaussian)
        throw UnsupportedField("parseval: closed-form Fourier transform needed (Gaussian family)");
    const int d = u.dim();
    Box box = frequency_box(u, cfg.cutoff);
    // The integrand is even under xi -> -xi: integrate the upper half in
    // xi_d and double.
    box.lo[d - 1] = 0.0;
    Vec x(d);
    double v = 2.0 * tensor_integrate(integrand, box, 0, x, cfg.rel_tol);
    Estimate est;
    est.value = v;
    est.std_error = 0.0;
    est.n_samples = 0;
    est.method = EstMethod::Deterministic;
    est.seed = 0;
    return est;
}

} // namespace

Estimate parseval_seminorm_S(const FieldSpec& u, const FracParams& pr, const FreqConfig& cfg) {
    SpectralConstants sc = spectral_constants(pr);
    const double s = pr.s;
    const double l2 = sc.has_l2 ? sc.l2 : 0.0;
    const double l1 = sc.l1;
    const Vec a = u.amplitude();
    const double a2 = norm_sq(a);
    auto f = [&u, s, l1, l2, &a, a2](const Vec& xi) {
        double n2 = norm_sq(xi);
        if (n2 == 0.0) return 0.0;
        double proj = dot(xi, a);
        double quad = (l1 - l2) * proj * proj / n2 + l2 * a2;
        return 2.0 * std::pow(kTwoPi, 2.0 * s) * std::pow(n2, s) * quad * gauss_transform_sq(u, xi);
    };
    return frequency_quadrature(u, pr, f, cfg);
}

Estimate parseval_seminorm_W(const FieldSpec& u, const FracParams& pr, const FreqConfig& cfg) {
    SpectralConstants sc = spectral_constants(pr);
    const double s = pr.s;
    const double a2 = norm_sq(u.amplitude());
    const double kap = sc.kappa;
    auto f = [&u, s, a2, kap](const Vec& xi) {
        double n2 = norm_sq(xi);
        return 2.0 * kap * std::pow(kTwoPi, 2.0 * s) * std::pow(n2, s) * a2 *
               gauss_transform_sq(u, xi);
    };
    return frequency_quadrature(u, pr, f, cfg);
}

std::pair<double, double> korn_bounds(const FracParams& pr) {
    pr.require_p2("korn_bounds");
    SpectralConstants sc = spectral_constants(pr);
    if (!sc.has_l2) return {1.0, 1.0};
    return {sc.kappa / sc.lmax(), sc.kappa / sc.lmin()};
}

} // namespace nlk
