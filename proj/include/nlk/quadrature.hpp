#pragma once

#include <functional>

namespace nlk {

using Integrand = std::function<double(double)>;

struct QuadResult {
    double value = 0.0;
    double error = 0.0; // estimated absolute error
    long n_eval = 0;

    QuadResult& operator+=(const QuadResult& o) {
        value += o.value;
        error += o.error;
        n_eval += o.n_eval;
        return *this;
    }
};

/// Adaptive Gauss-Kronrod (G7,K15) bisection on [a, b].
QuadResult gk_adaptive(const Integrand& f, double a, double b, double abs_tol = 1e-10,
                       double rel_tol = 1e-10, int max_intervals = 40000);

/// Same, for integrands with known algebraic endpoint behavior
/// f(t) ~ (t-a)^{exp_a} near a and ~ (b-t)^{exp_b} near b (exponents > -1;
/// pass 0 when regular). The interval is split at the midpoint and each half
/// is mapped by a power substitution that makes the transformed integrand
/// smooth before running gk_adaptive.
QuadResult integrate_endpoint_singular(const Integrand& f, double a, double b, double exp_a,
                                       double exp_b, double abs_tol = 1e-10,
                                       double rel_tol = 1e-10);

/// int_a^inf f, where |f(t)| ~ t^{-tail_exp} as t -> inf with tail_exp > 1.
/// Maps [a, inf) to (0, 1] and applies the endpoint-singular rule.
QuadResult integrate_halfline(const Integrand& f, double a, double tail_exp,
                              double abs_tol = 1e-10, double rel_tol = 1e-10);

/// int_0^inf (1 - cos t) t^{-1-beta} dt for beta in (0, 2). Splits at t = 1,
/// integrates the oscillatory part up to `radius`, and adds the power-law
/// tail analytically (two integrations by parts beyond the radius).
QuadResult osc_one_minus_cos(double beta, double radius = 1e3);

} // namespace nlk
