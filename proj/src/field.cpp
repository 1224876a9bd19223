#include "nlk/field.hpp"

#include <cmath>
#include <limits>

namespace nlk {

namespace {

// Mollifier profile exp(1 - 1/(1 - r^2)) on r < 1; value 1 at r = 0.
double mollifier(double r) {
    double r2 = r * r;
    if (r2 >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - r2));
}

double mollifier_slope(double r) {
    double r2 = r * r;
    if (r2 >= 1.0) return 0.0;
    double q = 1.0 - r2;
    return mollifier(r) * (-2.0 * r / (q * q));
}

// sup_r |mollifier'(r)| and sup_t |d/dt exp(-pi t^2)|.
constexpr double kMollifierMaxSlope = 2.170355948384171;
constexpr double kGaussMaxSlope = 1.5203469010662807; // sqrt(2 pi / e)

// Per-axis half-width at which exp(-pi t^2) = 1e-16.
constexpr double kGaussCutoff = 3.4277072566392013;

Vec axis_mix(int d, double first, double mid, double last) {
    Vec a(d);
    if (d == 1) {
        a[0] = last;
        return a;
    }
    a[0] = first;
    for (int i = 1; i + 1 < d; ++i) a[i] = mid;
    a[d - 1] = last;
    return a;
}

} // namespace

std::string to_string(Family f) {
    switch (f) {
        case Family::Bump: return "bump";
        case Family::SeparableBump: return "separable_bump";
        case Family::Gaussian: return "gaussian";
        case Family::SkewAffine: return "skew_affine";
        case Family::Custom: return "custom";
    }
    return "?";
}

std::string to_string(DomainTag t) {
    switch (t) {
        case DomainTag::HalfSpace: return "half_space";
        case DomainTag::WholeSpace: return "whole_space";
        case DomainTag::Ball: return "ball";
    }
    return "?";
}

Family family_from_string(const std::string& s) {
    if (s == "bump") return Family::Bump;
    if (s == "separable_bump") return Family::SeparableBump;
    if (s == "gaussian") return Family::Gaussian;
    if (s == "skew_affine") return Family::SkewAffine;
    if (s == "custom") return Family::Custom;
    throw InvalidParameter("unknown field family: " + s);
}

DomainTag domain_tag_from_string(const std::string& s) {
    if (s == "half_space") return DomainTag::HalfSpace;
    if (s == "whole_space") return DomainTag::WholeSpace;
    if (s == "ball") return DomainTag::Ball;
    throw InvalidParameter("unknown domain tag: " + s);
}

FieldSpec FieldSpec::bump(DomainTag tag, const Vec& center, double radius, const Vec& amplitude,
                          std::string name) {
    if (radius <= 0.0) throw InvalidParameter("bump: radius must be positive");
    FieldSpec f;
    f.family_ = Family::Bump;
    f.domain_ = tag;
    f.smooth_ = Smoothness::C1_compact;
    f.d_ = center.dim();
    f.name_ = std::move(name);
    f.center_ = center;
    f.radius_ = radius;
    f.amp_ = amplitude;
    f.support_ = {center - Vec(f.d_, radius), center + Vec(f.d_, radius)};
    f.has_support_ = true;
    f.gap_ = center[f.d_ - 1] - radius;
    if (tag == DomainTag::HalfSpace && f.gap_ <= 0.0)
        throw InvalidParameter("bump: half-space support must keep a positive distance to x_d = 0");
    f.sup_ = norm(amplitude);
    f.lip_ = norm(amplitude) * kMollifierMaxSlope / radius;
    return f;
}

FieldSpec FieldSpec::separable_bump(DomainTag tag, const Vec& center, const Vec& radii,
                                    const Vec& amplitude, std::string name) {
    FieldSpec f;
    f.family_ = Family::SeparableBump;
    f.domain_ = tag;
    f.smooth_ = Smoothness::C1_compact;
    f.d_ = center.dim();
    f.name_ = std::move(name);
    f.center_ = center;
    f.radii_ = radii;
    f.amp_ = amplitude;
    f.support_ = {center - radii, center + radii};
    f.has_support_ = true;
    f.gap_ = center[f.d_ - 1] - radii[f.d_ - 1];
    double min_r = radii[0];
    for (int i = 0; i < f.d_; ++i) {
        if (radii[i] <= 0.0) throw InvalidParameter("separable_bump: radii must be positive");
        min_r = std::min(min_r, radii[i]);
    }
    if (tag == DomainTag::HalfSpace && f.gap_ <= 0.0)
        throw InvalidParameter("separable_bump: support must keep a positive distance to x_d = 0");
    f.sup_ = norm(amplitude);
    f.lip_ = norm(amplitude) * kMollifierMaxSlope / min_r;
    return f;
}

FieldSpec FieldSpec::gaussian(const Vec& center, const Vec& radii, const Vec& amplitude,
                              std::string name) {
    FieldSpec f;
    f.family_ = Family::Gaussian;
    f.domain_ = DomainTag::WholeSpace;
    f.smooth_ = Smoothness::Schwartz;
    f.d_ = center.dim();
    f.name_ = std::move(name);
    f.center_ = center;
    f.radii_ = radii;
    f.amp_ = amplitude;
    Vec half(f.d_);
    double min_r = radii[0];
    for (int i = 0; i < f.d_; ++i) {
        if (radii[i] <= 0.0) throw InvalidParameter("gaussian: radii must be positive");
        half[i] = kGaussCutoff * radii[i];
        min_r = std::min(min_r, radii[i]);
    }
    f.support_ = {center - half, center + half}; // effective support, |u| < 1e-16 outside
    f.has_support_ = true;
    f.sup_ = norm(amplitude);
    f.lip_ = norm(amplitude) * kGaussMaxSlope / min_r;
    return f;
}

FieldSpec FieldSpec::skew_affine(const Mat& a, const Vec& offset, std::string name) {
    if (!a.is_skew()) throw InvalidParameter("skew_affine: matrix must satisfy A^T = -A exactly");
    FieldSpec f;
    f.family_ = Family::SkewAffine;
    f.domain_ = DomainTag::WholeSpace;
    f.smooth_ = Smoothness::Affine;
    f.d_ = a.dim();
    f.name_ = std::move(name);
    f.mat_ = a;
    f.offset_ = offset;
    f.has_support_ = false;
    double fro = 0.0;
    for (int i = 0; i < f.d_; ++i)
        for (int j = 0; j < f.d_; ++j) fro += a(i, j) * a(i, j);
    f.lip_ = std::sqrt(fro);
    f.sup_ = std::numeric_limits<double>::quiet_NaN();
    return f;
}

FieldSpec FieldSpec::custom(DomainTag tag, Smoothness smooth, Evaluator eval, GradientFn gradient,
                            const Box& support, double boundary_gap, double sup_norm,
                            double lipschitz, std::string name) {
    FieldSpec f;
    f.family_ = Family::Custom;
    f.domain_ = tag;
    f.smooth_ = smooth;
    f.d_ = support.dim();
    f.name_ = std::move(name);
    f.custom_eval_ = std::move(eval);
    f.custom_grad_ = std::move(gradient);
    f.support_ = support;
    f.has_support_ = true;
    f.gap_ = boundary_gap;
    f.sup_ = sup_norm;
    f.lip_ = lipschitz;
    return f;
}

Vec FieldSpec::evaluate(const Vec& x) const {
    switch (family_) {
        case Family::Bump: {
            double r = norm(x - center_) / radius_;
            return amp_ * mollifier(r);
        }
        case Family::SeparableBump: {
            double prod = 1.0;
            for (int i = 0; i < d_; ++i) {
                prod *= mollifier((x[i] - center_[i]) / radii_[i]);
                if (prod == 0.0) return Vec(d_);
            }
            return amp_ * prod;
        }
        case Family::Gaussian: {
            double e = 0.0;
            for (int i = 0; i < d_; ++i) {
                double t = (x[i] - center_[i]) / radii_[i];
                e += t * t;
            }
            return amp_ * std::exp(-3.141592653589793238462643 * e);
        }
        case Family::SkewAffine: return mat_.apply(x) + offset_;
        case Family::Custom: return custom_eval_(x);
    }
    return Vec(d_);
}

bool FieldSpec::has_gradient() const {
    if (family_ == Family::Custom) return static_cast<bool>(custom_grad_);
    return true;
}

Mat FieldSpec::gradient(const Vec& x) const {
    switch (family_) {
        case Family::Bump: {
            Mat g(d_);
            Vec r = x - center_;
            double rn = norm(r);
            if (rn == 0.0 || rn >= radius_) return g;
            double slope = mollifier_slope(rn / radius_) / (radius_ * rn);
            for (int i = 0; i < d_; ++i)
                for (int j = 0; j < d_; ++j) g(i, j) = amp_[i] * slope * r[j];
            return g;
        }
        case Family::SeparableBump: {
            Mat g(d_);
            Vec vals(d_), slopes(d_);
            for (int i = 0; i < d_; ++i) {
                double t = (x[i] - center_[i]) / radii_[i];
                vals[i] = mollifier(t);
                slopes[i] = mollifier_slope(t) / radii_[i];
            }
            for (int j = 0; j < d_; ++j) {
                double prod = slopes[j];
                for (int k = 0; k < d_; ++k)
                    if (k != j) prod *= vals[k];
                for (int i = 0; i < d_; ++i) g(i, j) = amp_[i] * prod;
            }
            return g;
        }
        case Family::Gaussian: {
            Mat g(d_);
            double e = 0.0;
            for (int i = 0; i < d_; ++i) {
                double t = (x[i] - center_[i]) / radii_[i];
                e += t * t;
            }
            double val = std::exp(-3.141592653589793238462643 * e);
            for (int j = 0; j < d_; ++j) {
                double t = (x[j] - center_[j]) / radii_[j];
                double slope = -2.0 * 3.141592653589793238462643 * t / radii_[j] * val;
                for (int i = 0; i < d_; ++i) g(i, j) = amp_[i] * slope;
            }
            return g;
        }
        case Family::SkewAffine: return mat_;
        case Family::Custom:
            if (!custom_grad_) throw UnsupportedField("custom field has no gradient");
            return custom_grad_(x);
    }
    return Mat(d_);
}

Vec FieldSpec::delta(const Vec& x, const Vec& y) const {
    if (family_ == Family::SkewAffine) return mat_.apply(y - x);
    return evaluate(y) - evaluate(x);
}

double FieldSpec::proj_diff_numerator(const Vec& x, const Vec& y) const {
    Vec dxy = y - x;
    if (family_ == Family::SkewAffine) return mat_.quadratic_form(dxy);
    return dot(evaluate(y) - evaluate(x), dxy);
}

const Box& FieldSpec::support() const {
    if (!has_support_) throw UnsupportedField("field '" + name_ + "' has no compact support box");
    return support_;
}

double FieldSpec::sup_norm_on(const Box& b) const {
    if (family_ != Family::SkewAffine) return sup_;
    double rad = 0.0;
    for (int i = 0; i < d_; ++i)
        rad = std::max({rad, std::fabs(b.lo[i]), std::fabs(b.hi[i])});
    return lip_ * rad * std::sqrt(static_cast<double>(d_)) + norm(offset_);
}

nlohmann::json FieldSpec::to_json() const {
    nlohmann::json p;
    p["d"] = d_;
    switch (family_) {
        case Family::Bump:
            p["center"] = center_.to_std();
            p["radius"] = radius_;
            p["amplitude"] = amp_.to_std();
            break;
        case Family::SeparableBump:
        case Family::Gaussian:
            p["center"] = center_.to_std();
            p["radii"] = radii_.to_std();
            p["amplitude"] = amp_.to_std();
            break;
        case Family::SkewAffine: {
            std::vector<std::vector<double>> rows(d_);
            for (int i = 0; i < d_; ++i) {
                rows[i].resize(d_);
                for (int j = 0; j < d_; ++j) rows[i][static_cast<std::size_t>(j)] = mat_(i, j);
            }
            p["matrix"] = rows;
            p["offset"] = offset_.to_std();
            break;
        }
        case Family::Custom:
            throw UnsupportedField("custom fields are programmatic only; no JSON form");
    }
    nlohmann::json j;
    j["family"] = to_string(family_);
    j["parameters"] = p;
    j["domain_tag"] = to_string(domain_);
    if (!name_.empty()) j["name"] = name_;
    return j;
}

FieldSpec FieldSpec::from_json(const nlohmann::json& j) {
    Family fam = family_from_string(j.at("family").get<std::string>());
    DomainTag tag = domain_tag_from_string(j.at("domain_tag").get<std::string>());
    const auto& p = j.at("parameters");
    std::string name = j.value("name", to_string(fam));
    switch (fam) {
        case Family::Bump:
            return bump(tag, Vec::from(p.at("center").get<std::vector<double>>()),
                        p.at("radius").get<double>(),
                        Vec::from(p.at("amplitude").get<std::vector<double>>()), name);
        case Family::SeparableBump:
            return separable_bump(tag, Vec::from(p.at("center").get<std::vector<double>>()),
                                  Vec::from(p.at("radii").get<std::vector<double>>()),
                                  Vec::from(p.at("amplitude").get<std::vector<double>>()), name);
        case Family::Gaussian:
            return gaussian(Vec::from(p.at("center").get<std::vector<double>>()),
                            Vec::from(p.at("radii").get<std::vector<double>>()),
                            Vec::from(p.at("amplitude").get<std::vector<double>>()), name);
        case Family::SkewAffine: {
            auto rows = p.at("matrix").get<std::vector<std::vector<double>>>();
            int d = static_cast<int>(rows.size());
            Mat a(d);
            for (int i = 0; i < d; ++i)
                for (int j2 = 0; j2 < d; ++j2) a(i, j2) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j2)];
            return skew_affine(a, Vec::from(p.at("offset").get<std::vector<double>>()), name);
        }
        case Family::Custom: break;
    }
    throw UnsupportedField("custom fields cannot be deserialized");
}

double projected_difference(const FieldSpec& u, const Vec& x, const Vec& y) {
    Vec dxy = y - x;
    double r2 = norm_sq(dxy);
    if (r2 == 0.0) throw DegeneratePair("projected_difference: coincident points");
    return u.proj_diff_numerator(x, y) / r2;
}

FieldSpec scale_field(const FieldSpec& u, double lambda) {
    if (u.domain_tag() != DomainTag::HalfSpace)
        throw DomainError("scale_field: field must live on the half-space");
    if (!(lambda > 0.0)) throw InvalidParameter("scale_field: lambda must be positive");
    const int d = u.dim();

    auto stretch = [lambda, d](const Vec& x) {
        Vec xs = x;
        xs[d - 1] = lambda * x[d - 1];
        return xs;
    };
    FieldSpec base = u;
    FieldSpec::Evaluator eval = [base, stretch, lambda, d](const Vec& x) {
        Vec v = base.evaluate(stretch(x));
        for (int i = 0; i + 1 < d; ++i) v[i] /= lambda;
        return v;
    };
    FieldSpec::GradientFn grad;
    if (u.has_gradient()) {
        grad = [base, stretch, lambda, d](const Vec& x) {
            Mat g = base.gradient(stretch(x));
            Mat out(d);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    double v = g(i, j);
                    if (j == d - 1) v *= lambda;
                    if (i != d - 1) v /= lambda;
                    out(i, j) = v;
                }
            return out;
        };
    }
    Box s = u.support();
    s.lo[d - 1] /= lambda;
    s.hi[d - 1] /= lambda;
    double scale_up = std::max(lambda, 1.0 / lambda);
    return FieldSpec::custom(DomainTag::HalfSpace, Smoothness::C1_compact, std::move(eval),
                             std::move(grad), s, u.boundary_gap() / lambda,
                             u.sup_norm() * std::max(1.0, 1.0 / lambda), u.lipschitz() * scale_up,
                             u.name() + "_scaled");
}

std::vector<FieldSpec> field_library(int d) {
    if (d < 1 || d > kMaxDim) throw InvalidParameter("field_library: dimension out of range");
    std::vector<FieldSpec> out;

    auto center_at = [d](double first, double last) {
        Vec c(d);
        if (d > 1) c[0] = first;
        c[d - 1] = last;
        return c;
    };

    // Half-space bumps at decreasing distance from the boundary.
    out.push_back(FieldSpec::bump(DomainTag::HalfSpace, center_at(0.0, 1.5), 0.8,
                                  Vec::unit(d, 0), "bump_far"));
    out.push_back(FieldSpec::bump(DomainTag::HalfSpace, center_at(0.4, 1.0), 0.6,
                                  Vec::unit(d, d - 1), "bump_mid"));
    out.push_back(FieldSpec::bump(DomainTag::HalfSpace, center_at(-0.3, 0.8), 0.5,
                                  axis_mix(d, 1.0, 0.3, -0.7), "bump_tilted"));

    // Separable g(x') h(x_d) profiles.
    {
        Vec r(d, 1.0);
        r[d - 1] = 0.5;
        out.push_back(FieldSpec::separable_bump(DomainTag::HalfSpace, center_at(0.0, 1.2), r,
                                                axis_mix(d, 1.0, 0.0, 0.8), "sep_wide"));
    }
    {
        Vec r(d, 0.6);
        r[d - 1] = 0.7;
        out.push_back(FieldSpec::separable_bump(DomainTag::HalfSpace, center_at(0.2, 0.9), r,
                                                axis_mix(d, -0.5, 0.2, 1.0), "sep_tall"));
    }

    // Support inside {0 < x_d <= 0.1}.
    out.push_back(FieldSpec::bump(DomainTag::HalfSpace, center_at(0.0, 0.055), 0.045,
                                  Vec(d, 1.0 / std::sqrt(static_cast<double>(d))),
                                  "near_boundary"));

    // Whole-space fields with analytic Fourier transforms.
    out.push_back(FieldSpec::gaussian(Vec(d), Vec(d, 1.0), Vec::unit(d, 0), "gauss_iso"));
    {
        Vec c(d);
        if (d > 1) c[0] = 0.3;
        Vec r(d, 0.8);
        r[d - 1] = 1.3;
        out.push_back(FieldSpec::gaussian(c, r, axis_mix(d, 0.5, 0.0, 1.0), "gauss_aniso"));
    }

    // Whole-space compactly supported fields for the Korn band checks.
    out.push_back(FieldSpec::bump(DomainTag::WholeSpace, Vec(d, 0.2), 1.0,
                                  axis_mix(d, 0.6, 0.0, 1.0), "bump_free"));
    {
        Vec r(d, 1.2);
        r[d - 1] = 0.7;
        out.push_back(FieldSpec::separable_bump(DomainTag::WholeSpace, Vec(d), r,
                                                axis_mix(d, 1.0, -0.3, 0.4), "sep_free"));
    }

    // Null field of the S-seminorm.
    {
        Mat a(d);
        const double coef[3] = {0.7, -0.4, 0.25};
        int k = 0;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) {
                a(i, j) = coef[k % 3];
                a(j, i) = -coef[k % 3];
                ++k;
            }
        Vec b = axis_mix(d, 0.1, 0.0, -0.2);
        out.push_back(FieldSpec::skew_affine(a, b, "skew"));
    }
    return out;
}

} // namespace nlk
