#pragma once

#include <utility>

#include "nlk/field.hpp"
#include "nlk/params.hpp"
#include "nlk/quad.hpp"

namespace nlk {

/// The longitudinal and transverse symbol weights and the scalar kernel
/// constant (p = 2): l1 = int (1-cos z_1) z_1^2 |z|^{-d-2-2s} dz, l2 the
/// same with z_2^2, kappa = int (1-cos z_1) |z|^{-d-2s} dz. They satisfy
/// l1 + (d-1) l2 = kappa. l2 is absent for d = 1 (has_l2 = false).
struct SpectralConstants {
    FracParams params;
    double l1 = 0.0, l2 = 0.0, kappa = 0.0;
    double l1_err = 0.0, l2_err = 0.0, kappa_err = 0.0;
    bool has_l2 = false;

    double lmin() const { return has_l2 ? std::min(l1, l2) : l1; }
    double lmax() const { return has_l2 ? std::max(l1, l2) : l1; }
};

/// Numerical evaluation via the polar reduction in the complement of z_1:
/// a radial profile integral times the oscillatory 1D factor.
SpectralConstants spectral_constants(const FracParams& params);

/// The Fourier symbol M(xi) of the S-seminorm, closed form
/// (2 pi)^{2s} |xi|^{2s} [(l1 - l2) xi ox xi / |xi|^2 + l2 I].
struct SymbolMatrix {
    Vec xi;
    Mat matrix;
    FracParams params;

    /// Eigenvalue along xi/|xi|.
    double longitudinal() const;
    /// Eigenvalue on the orthogonal complement (multiplicity d-1).
    double transverse() const;
};

SymbolMatrix symbol(const FracParams& params, const Vec& xi);

/// Monte Carlo evaluation of the defining integral
/// int (1 - cos(2 pi xi.h)) |h|^{-d-2-2s} h ox h dh (diagnostic, d <= 3).
/// Entrywise estimates and standard errors.
void symbol_mc_diagnostic(const FracParams& params, const Vec& xi, const QuadConfig& cfg,
                          Mat& value, Mat& std_error);

struct FreqConfig {
    double rel_tol = 1e-8;
    double cutoff = 1e-16; // truncate where the Gaussian factor drops below
};

/// |u|^2_{S_{2,s}(R^d)} = 2 int <M(xi) Fu, Fu> dxi for Gaussian-family
/// fields (closed-form transform), by deterministic frequency quadrature.
Estimate parseval_seminorm_S(const FieldSpec& u, const FracParams& params,
                             const FreqConfig& cfg = {});

/// |u|^2_{W^{s,2}(R^d)} = 2 kappa (2 pi)^{2s} int |xi|^{2s} |Fu|^2 dxi.
Estimate parseval_seminorm_W(const FieldSpec& u, const FracParams& params,
                             const FreqConfig& cfg = {});

/// Analytic band [kappa/lmax, kappa/lmin] containing the ratio
/// |u|^2_{W^{s,2}} / |u|^2_{S_{2,s}} on the whole space; collapses to [1, 1]
/// when d = 1.
std::pair<double, double> korn_bounds(const FracParams& params);

} // namespace nlk
