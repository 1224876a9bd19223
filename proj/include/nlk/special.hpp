#pragma once

namespace nlk {

/// Gamma function via a Lanczos approximation (g = 7, 9 terms) with the
/// reflection formula for x < 0.5. Relative accuracy is better than 1e-13
/// over the range used here; see tests/test_special.cpp for the tabulated
/// reference sweep.
double gamma_fn(double x);

/// log |Gamma(x)| for x > 0.
double lgamma_fn(double x);

/// Beta function B(a, b), a, b > 0.
double beta_fn(double a, double b);

/// Surface measure of the unit sphere S^{m-1} in R^m; sphere_area(1) = 2
/// (two points), sphere_area(2) = 2*pi, sphere_area(3) = 4*pi.
double sphere_area(int m);

/// int_{S^{m-1}} |omega_1|^p domega. Reduces to sphere_area(m) at p = 0.
double sphere_pmoment(int m, double p);

/// int_{R^m} (1 + |z|^2)^{-q} dz for 2q > m; the empty product convention
/// returns 1 at m = 0.
double cauchy_moment(int m, double q);

} // namespace nlk
