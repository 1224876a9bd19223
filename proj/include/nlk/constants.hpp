#pragma once

#include <string>
#include <utility>

#include "nlk/params.hpp"
#include "nlk/vec.hpp"

namespace nlk {

enum class ConstName { Sigma, Eta1, Eta2, FofV, Gamma1, Gamma2, Gamma, Cp };
enum class ConstMethod { ClosedForm, AdaptiveQuadrature, MonteCarlo, Minimization };

std::string to_string(ConstName n);
std::string to_string(ConstMethod m);

/// A numerical constant with a rigorous (or, for Monte Carlo, >= 3 standard
/// error) absolute error bound and the method that produced it.
struct ConstantValue {
    ConstName name;
    FracParams params;
    double value = 0.0;
    double abs_error = 0.0;
    ConstMethod method = ConstMethod::AdaptiveQuadrature;
};

/// sigma(d,p,s) = int_0^1 |t^alpha - 1|^p |t - 1|^{-ps-1} dt, ps != 1.
ConstantValue sigma_constant(const FracParams& params);

/// (eta_1, eta_2): the half-space Hardy weights
/// eta_1 = int_{R^{d-1}} (|z'|^2+1)^{-(d+ps+p)/2} dz',
/// eta_2 = int_{R^{d-1}} |z_1|^p (|z'|^2+1)^{-(d+ps+p)/2} dz'.
/// For d = 1 the empty integrals are set to 1 by convention.
std::pair<ConstantValue, ConstantValue> eta_constants(const FracParams& params);

/// f(v) = int_{R^{d-1}} |v'.z' + v_d|^p (|z'|^2+1)^{-(d+ps+p)/2} dz'.
/// Rotationally reduced to a 1D integral; f(v) = |v_d|^p when d = 1.
ConstantValue f_of_v(const FracParams& params, const Vec& v);

/// (gamma_1, gamma_2, gamma = gamma_1 gamma_2) from the extension proof:
/// gamma_1 = int_{R^{d-1}} (1+|z'|^2)^{-(d+(s+1)p)/2} dz',
/// gamma_2 = int_0^inf w^p (1+w)^{-(p(s+1)+1)} dw = B(p+1, ps).
std::tuple<ConstantValue, ConstantValue, ConstantValue> gamma_constants(const FracParams& params);

/// J(y_d) = gamma * y_d^{-ps}.
ConstantValue j_kernel(const FracParams& params, double y_d);

/// Quadrature of the defining d-dimensional integral behind J (diagnostic;
/// d <= 3). Agrees with j_kernel to ~1e-6 relative.
ConstantValue j_kernel_defining_integral(const FracParams& params, double y_d);

/// c_p = min over tau in (0, 1/2) of (1-tau)^p - tau^p + p tau^{p-1}; p >= 2.
ConstantValue c_p(double p);

} // namespace nlk
