#include "nlk/constants.hpp"

#include <cmath>
#include <tuple>

#include "nlk/quadrature.hpp"
#include "nlk/special.hpp"

namespace nlk {

namespace {

// Weight exponent q = (d + ps + p)/2 of the ground-state kernel.
double kernel_q(const FracParams& pr) { return 0.5 * (pr.d + pr.ps() + pr.p); }

ConstantValue make(ConstName n, const FracParams& pr, double v, double err, ConstMethod m) {
    ConstantValue c;
    c.name = n;
    c.params = pr;
    c.value = v;
    c.abs_error = err;
    c.method = m;
    return c;
}

// eta_1 radial cross-check integrand: int_0^inf r^m (1+r^2)^{-q} dr.
QuadResult radial_weight_integral(int m, double q) {
    auto f = [m, q](double r) { return std::pow(r, m) * std::pow(1.0 + r * r, -q); };
    QuadResult out = gk_adaptive(f, 0.0, 1.0, 1e-13, 1e-13);
    out += integrate_halfline(f, 1.0, 2.0 * q - m, 1e-13, 1e-13);
    return out;
}

} // namespace

std::string to_string(ConstName n) {
    switch (n) {
        case ConstName::Sigma: return "sigma";
        case ConstName::Eta1: return "eta1";
        case ConstName::Eta2: return "eta2";
        case ConstName::FofV: return "f_of_v";
        case ConstName::Gamma1: return "gamma1";
        case ConstName::Gamma2: return "gamma2";
        case ConstName::Gamma: return "gamma";
        case ConstName::Cp: return "c_p";
    }
    return "?";
}

std::string to_string(ConstMethod m) {
    switch (m) {
        case ConstMethod::ClosedForm: return "closed_form";
        case ConstMethod::AdaptiveQuadrature: return "adaptive_quadrature";
        case ConstMethod::MonteCarlo: return "monte_carlo";
        case ConstMethod::Minimization: return "minimization";
    }
    return "?";
}

ConstantValue sigma_constant(const FracParams& pr) {
    pr.require_ps_not_one("sigma");
    const double p = pr.p;
    const double a = pr.alpha;
    const double ps = pr.ps();

    // Left half [0, 1/2]: integrand ~ t^{ps-1} at 0 when alpha < 0.
    auto left = [p, a, ps](double t) {
        double num = std::pow(std::fabs(std::pow(t, a) - 1.0), p);
        return num * std::pow(1.0 - t, -ps - 1.0);
    };
    double exp0 = a < 0.0 ? ps - 1.0 : 0.0;
    QuadResult ql = integrate_endpoint_singular(left, 0.0, 0.5, exp0, 0.0, 1e-11, 1e-11);

    // Right half in w = 1 - t; expm1/log1p keep t^alpha - 1 accurate at the
    // w -> 0 endpoint where the kernel w^{-ps-1} blows up.
    auto right = [p, a, ps](double w) {
        double num = std::pow(std::fabs(std::expm1(a * std::log1p(-w))), p);
        return num * std::pow(w, -ps - 1.0);
    };
    QuadResult qr = integrate_endpoint_singular(right, 0.0, 0.5, p - ps - 1.0, 0.0, 1e-11, 1e-11);

    double value = ql.value + qr.value;
    double err = ql.error + qr.error + 1e-14 * std::fabs(value);
    return make(ConstName::Sigma, pr, value, err, ConstMethod::AdaptiveQuadrature);
}

std::pair<ConstantValue, ConstantValue> eta_constants(const FracParams& pr) {
    if (pr.d == 1) {
        // Empty z'-integral convention.
        return {make(ConstName::Eta1, pr, 1.0, 0.0, ConstMethod::ClosedForm),
                make(ConstName::Eta2, pr, 1.0, 0.0, ConstMethod::ClosedForm)};
    }
    const int d = pr.d;
    const double p = pr.p;
    const double q = kernel_q(pr);

    double e1 = 0.5 * sphere_area(d - 1) * beta_fn(0.5 * (d - 1), 0.5 * (pr.ps() + p + 1.0));
    double e2 = 0.5 * sphere_pmoment(d - 1, p) * beta_fn(0.5 * (d - 1 + p), 0.5 * (pr.ps() + 1.0));
    double err1 = 2e-13 * e1;
    double err2 = 2e-13 * e2;

    if (d <= 3) {
        QuadResult r1 = radial_weight_integral(d - 2, q);
        double q1 = sphere_area(d - 1) * r1.value;
        auto f2 = [d, p, q](double r) {
            return std::pow(r, d - 2 + p) * std::pow(1.0 + r * r, -q);
        };
        QuadResult rr2 = gk_adaptive(f2, 0.0, 1.0, 1e-13, 1e-13);
        rr2 += integrate_halfline(f2, 1.0, 2.0 * q - (d - 2) - p, 1e-13, 1e-13);
        double q2 = sphere_pmoment(d - 1, p) * rr2.value;
        err1 = std::max(err1, std::fabs(q1 - e1));
        err2 = std::max(err2, std::fabs(q2 - e2));
    }
    return {make(ConstName::Eta1, pr, e1, err1, ConstMethod::ClosedForm),
            make(ConstName::Eta2, pr, e2, err2, ConstMethod::ClosedForm)};
}

ConstantValue f_of_v(const FracParams& pr, const Vec& v) {
    const int d = pr.d;
    const double p = pr.p;
    if (v.dim() != d) throw InvalidParameter("f_of_v: vector dimension mismatch");
    const double vd = v[d - 1];
    if (d == 1) {
        return make(ConstName::FofV, pr, std::pow(std::fabs(vd), p), 0.0, ConstMethod::ClosedForm);
    }
    double vt = 0.0;
    for (int i = 0; i + 1 < d; ++i) vt += v[i] * v[i];
    vt = std::sqrt(vt);

    auto [e1, e2] = eta_constants(pr);
    if (vt == 0.0) {
        double val = e1.value * std::pow(std::fabs(vd), p);
        return make(ConstName::FofV, pr, val, e1.abs_error * std::pow(std::fabs(vd), p),
                    ConstMethod::ClosedForm);
    }

    // Collapse the z'-integral to 1D along the v' direction:
    // f = C_{d-2,q} int_R |vt t + vd|^p (1+t^2)^{-Q} dt, Q = (ps + p + 2)/2.
    const double q = kernel_q(pr);
    const double Q = q - 0.5 * (d - 2);
    const double pref = cauchy_moment(d - 2, q);
    const double t0 = -vd / vt;

    auto g = [vt, vd, p, Q](double t) {
        return std::pow(std::fabs(vt * t + vd), p) * std::pow(1.0 + t * t, -Q);
    };
    const double tail = 2.0 * Q - p; // = ps + 2 > 1
    auto right = [&](double u) { return g(t0 + u); };
    auto leftf = [&](double u) { return g(t0 - u); };
    QuadResult qa = integrate_endpoint_singular(right, 0.0, 1.0, p, 0.0, 1e-11, 1e-11);
    qa += integrate_halfline(right, 1.0, tail, 1e-11, 1e-11);
    QuadResult qb = integrate_endpoint_singular(leftf, 0.0, 1.0, p, 0.0, 1e-11, 1e-11);
    qb += integrate_halfline(leftf, 1.0, tail, 1e-11, 1e-11);

    double value = pref * (qa.value + qb.value);
    double err = pref * (qa.error + qb.error) + 2e-13 * std::fabs(value);
    return make(ConstName::FofV, pr, value, err, ConstMethod::AdaptiveQuadrature);
}

std::tuple<ConstantValue, ConstantValue, ConstantValue> gamma_constants(const FracParams& pr) {
    const double p = pr.p;
    const double s = pr.s;
    double g1 = cauchy_moment(pr.d - 1, 0.5 * (pr.d + (s + 1.0) * p));
    double g2 = beta_fn(p + 1.0, p * s);
    double g = g1 * g2;
    double e1 = 2e-13 * g1;
    double e2 = 2e-13 * g2;
    double eg = 5e-13 * g;
    return {make(ConstName::Gamma1, pr, g1, e1, ConstMethod::ClosedForm),
            make(ConstName::Gamma2, pr, g2, e2, ConstMethod::ClosedForm),
            make(ConstName::Gamma, pr, g, eg, ConstMethod::ClosedForm)};
}

ConstantValue j_kernel(const FracParams& pr, double y_d) {
    if (!(y_d > 0.0)) throw InvalidParameter("j_kernel: y_d must be positive");
    auto [g1, g2, g] = gamma_constants(pr);
    double w = std::pow(y_d, -pr.ps());
    return make(ConstName::Gamma, pr, g.value * w, g.abs_error * w, ConstMethod::ClosedForm);
}

ConstantValue j_kernel_defining_integral(const FracParams& pr, double y_d) {
    if (!(y_d > 0.0)) throw InvalidParameter("j_kernel_defining_integral: y_d must be positive");
    if (pr.d > 3) throw InvalidParameter("j_kernel_defining_integral: diagnostic limited to d <= 3");
    const int d = pr.d;
    const double p = pr.p;
    const double D = d + (pr.s + 1.0) * p;

    Integrand outer;
    if (d == 1) {
        outer = [p, D, y_d](double x) { return std::pow(x, p) * std::pow(y_d + x, -D); };
    } else {
        const int m = d - 2;
        const double area = sphere_area(d - 1);
        outer = [p, D, y_d, m, area](double x) {
            double c = y_d + x;
            auto inner = [c, D, m](double rho) {
                return std::pow(rho, m) * std::pow(c * c + rho * rho, -0.5 * D);
            };
            QuadResult qi = gk_adaptive(inner, 0.0, c, 1e-12, 1e-10);
            qi += integrate_halfline(inner, c, D - m, 1e-12, 1e-10);
            return std::pow(x, p) * area * qi.value;
        };
    }
    // Outer tail ~ x^{-ps-1}.
    QuadResult qo = integrate_endpoint_singular(outer, 0.0, 4.0 * (1.0 + y_d), p, 0.0, 1e-10, 1e-8);
    qo += integrate_halfline(outer, 4.0 * (1.0 + y_d), pr.ps() + 1.0, 1e-10, 1e-8);
    return make(ConstName::Gamma, pr, qo.value, qo.error, ConstMethod::AdaptiveQuadrature);
}

ConstantValue c_p(double p) {
    if (!(p >= 2.0)) throw ExcludedParameter("c_p: requires p >= 2");
    auto g = [p](double t) { return std::pow(1.0 - t, p) - std::pow(t, p) + p * std::pow(t, p - 1.0); };

    // Coarse bracket, then golden section to tau-accuracy 1e-10.
    const int n = 2000;
    double best_t = 0.25, best = g(0.25);
    for (int i = 1; i < n; ++i) {
        double t = 0.5 * i / n;
        double v = g(t);
        if (v < best) {
            best = v;
            best_t = t;
        }
    }
    double lo = std::max(1e-12, best_t - 0.5 / n);
    double hi = std::min(0.5 - 1e-12, best_t + 0.5 / n);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = hi - gr * (hi - lo), dpt = lo + gr * (hi - lo);
    double fc = g(c), fd = g(dpt);
    while (hi - lo > 1e-10) {
        if (fc < fd) {
            hi = dpt;
            dpt = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = g(c);
        } else {
            lo = c;
            c = dpt;
            fc = fd;
            dpt = lo + gr * (hi - lo);
            fd = g(dpt);
        }
    }
    double v = std::min({best, fc, fd});
    FracParams tag(1, p, 0.5);
    return make(ConstName::Cp, tag, v, 1e-13 * std::max(1.0, std::fabs(v)),
                ConstMethod::Minimization);
}

} // namespace nlk
