#pragma once

#include <tuple>

#include "nlk/field.hpp"
#include "nlk/quad.hpp"

namespace nlk {

/// Generalized-reflection extension of a half-space field to the whole
/// space: values for x_d < 0 combine two reflected evaluation depths so the
/// trace is preserved and the projected-difference energy stays controlled.
/// The evaluator is lazy; nothing is sampled onto a grid.
class ExtendedField {
  public:
    explicit ExtendedField(FieldSpec u);

    const FieldSpec& original() const { return u_; }
    int dim() const { return u_.dim(); }

    /// u(x) for x_d >= 0; the reflection combination for x_d < 0.
    Vec evaluate(const Vec& x) const;

    /// The x_d < 0 combination evaluated at (x', x_d) without the sign
    /// branch; at x_d = 0 this is the limit from below.
    Vec from_below(const Vec& x) const;

    /// |from_below(x', 0) - u(x', 0)| componentwise max; zero up to roundoff.
    double trace_mismatch(const Vec& xprime) const;

    const Box& support() const { return support_; }

    /// Whole-space FieldSpec wrapper for the quadrature engines.
    FieldSpec as_field_spec() const;

  private:
    FieldSpec u_;
    Box support_;
};

/// E u per the two-depth reflection; rejects whole-space input.
ExtendedField extend(const FieldSpec& u);

/// (I+, I-, I+-): the S-seminorm of U split over the sign quadrants of
/// (x_d, y_d). I+ + I- + 2 I+- reproduces the whole-space seminorm.
std::tuple<Estimate, Estimate, Estimate> decompose_seminorm(const ExtendedField& U,
                                                            const FracParams& params,
                                                            const QuadConfig& cfg);

/// seminorm_S(E u, R^d) / seminorm_S(u, R^d_+).
double boundedness_ratio(const FieldSpec& u, const FracParams& params, const QuadConfig& cfg);

} // namespace nlk
