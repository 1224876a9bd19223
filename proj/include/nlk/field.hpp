#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlk/params.hpp"
#include "nlk/vec.hpp"

namespace nlk {

enum class Family { Bump, SeparableBump, Gaussian, SkewAffine, Custom };
enum class DomainTag { HalfSpace, WholeSpace, Ball };
enum class Smoothness { C1_compact, Schwartz, Affine };

std::string to_string(Family f);
std::string to_string(DomainTag t);
Family family_from_string(const std::string& s);
DomainTag domain_tag_from_string(const std::string& s);

/// Axis-aligned box.
struct Box {
    Vec lo, hi;

    int dim() const { return lo.dim(); }
    double volume() const {
        double v = 1.0;
        for (int i = 0; i < dim(); ++i) v *= std::max(0.0, hi[i] - lo[i]);
        return v;
    }
    double diameter() const {
        double s = 0.0;
        for (int i = 0; i < dim(); ++i) s += (hi[i] - lo[i]) * (hi[i] - lo[i]);
        return std::sqrt(s);
    }
    bool contains(const Vec& x) const {
        for (int i = 0; i < dim(); ++i)
            if (x[i] < lo[i] || x[i] > hi[i]) return false;
        return true;
    }
    Box padded(double pad) const {
        Box b = *this;
        for (int i = 0; i < dim(); ++i) {
            b.lo[i] -= pad;
            b.hi[i] += pad;
        }
        return b;
    }
    /// Clamp to the closed upper half-space {x_d >= floor}.
    Box clamped_below(double floor) const {
        Box b = *this;
        b.lo[dim() - 1] = std::max(b.lo[dim() - 1], floor);
        return b;
    }
    static Box hull(const Box& a, const Box& b) {
        Box h = a;
        for (int i = 0; i < a.dim(); ++i) {
            h.lo[i] = std::min(a.lo[i], b.lo[i]);
            h.hi[i] = std::max(a.hi[i], b.hi[i]);
        }
        return h;
    }
};

/// Immutable closed-form vector field with evaluator, optional analytic
/// gradient, and support metadata. Transformations return new specs.
class FieldSpec {
  public:
    using Evaluator = std::function<Vec(const Vec&)>;
    using GradientFn = std::function<Mat(const Vec&)>;

    static FieldSpec bump(DomainTag tag, const Vec& center, double radius, const Vec& amplitude,
                          std::string name = "bump");
    static FieldSpec separable_bump(DomainTag tag, const Vec& center, const Vec& radii,
                                    const Vec& amplitude, std::string name = "separable_bump");
    static FieldSpec gaussian(const Vec& center, const Vec& radii, const Vec& amplitude,
                              std::string name = "gaussian");
    static FieldSpec skew_affine(const Mat& a, const Vec& offset, std::string name = "skew_affine");

    /// Programmatic field. `gradient` may be empty; operations needing
    /// derivatives reject such fields. For half-space fields `boundary_gap`
    /// is the distance from the support to {x_d = 0}.
    static FieldSpec custom(DomainTag tag, Smoothness smooth, Evaluator eval, GradientFn gradient,
                            const Box& support, double boundary_gap, double sup_norm,
                            double lipschitz, std::string name = "custom");

    Family family() const { return family_; }
    DomainTag domain_tag() const { return domain_; }
    Smoothness smoothness() const { return smooth_; }
    int dim() const { return d_; }
    const std::string& name() const { return name_; }

    Vec evaluate(const Vec& x) const;

    bool has_gradient() const;
    /// gradient(x)(i, j) = d u_i / d x_j.
    Mat gradient(const Vec& x) const;

    /// u(y) - u(x). Affine families compute A(y-x) directly so the offset
    /// cancels exactly.
    Vec delta(const Vec& x, const Vec& y) const;

    /// (u(y) - u(x)) . (y - x). Affine families evaluate the quadratic form
    /// through symmetrized coefficients; a skew matrix yields an exact zero.
    double proj_diff_numerator(const Vec& x, const Vec& y) const;

    bool has_support_box() const { return has_support_; }
    /// Compact (or effective, for Schwartz fields) support box.
    const Box& support() const;
    /// Distance from the support to the hyperplane x_d = 0 (half-space
    /// fields only).
    double boundary_gap() const { return gap_; }
    double sup_norm() const { return sup_; }
    double lipschitz() const { return lip_; }
    bool compact_support() const { return smooth_ == Smoothness::C1_compact; }

    const Mat& affine_matrix() const { return mat_; }
    const Vec& center() const { return center_; }
    const Vec& radii() const { return radii_; }
    double radius() const { return radius_; }
    const Vec& amplitude() const { return amp_; }

    /// Bound for sup |u| over an arbitrary box (needed for affine fields on
    /// bounded domains).
    double sup_norm_on(const Box& b) const;

    nlohmann::json to_json() const;
    static FieldSpec from_json(const nlohmann::json& j);

  private:
    FieldSpec() = default;

    Family family_ = Family::Custom;
    DomainTag domain_ = DomainTag::WholeSpace;
    Smoothness smooth_ = Smoothness::C1_compact;
    int d_ = 0;
    std::string name_;

    Vec center_, radii_, amp_, offset_;
    double radius_ = 0.0;
    Mat mat_;
    Evaluator custom_eval_;
    GradientFn custom_grad_;

    Box support_{};
    bool has_support_ = false;
    double gap_ = 0.0;
    double sup_ = 0.0;
    double lip_ = 0.0;
};

/// The projected difference quotient D(u)(x, y) = (u(y)-u(x)) . (y-x)/|y-x|^2.
double projected_difference(const FieldSpec& u, const Vec& x, const Vec& y);

/// Anisotropic half-space rescaling F_lambda(u)(x) =
/// (u'(x', lambda x_d)/lambda, u_d(x', lambda x_d)).
FieldSpec scale_field(const FieldSpec& u, double lambda);

/// The canonical deterministic test suite for dimension d.
std::vector<FieldSpec> field_library(int d);

} // namespace nlk
