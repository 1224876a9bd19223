#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include <json.hpp>

#include "nlk/field.hpp"
#include "nlk/params.hpp"

namespace nlk {

enum class EstMethod { MonteCarlo, Stratified, Deterministic };

std::string to_string(EstMethod m);

/// Result of a (possibly stochastic) integral evaluation. Identical
/// (seed, config, inputs) produce a bit-identical Estimate regardless of the
/// number of worker threads.
struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    std::int64_t n_samples = 0;
    EstMethod method = EstMethod::MonteCarlo;
    std::uint64_t seed = 0;

    nlohmann::json to_json() const;
};

struct QuadConfig {
    std::int64_t n_samples = 1'000'000;
    double truncation_pad = 0.5;
    double diagonal_cutoff = 1e-4;
    std::uint64_t seed = 0x5EED;
    int n_strata = 32;
    int jobs = 1;

    void validate() const {
        if (n_samples < 1) throw InvalidParameter("QuadConfig: n_samples >= 1 required");
        if (!(truncation_pad > 0.0)) throw InvalidParameter("QuadConfig: truncation_pad > 0 required");
        if (!(diagonal_cutoff > 0.0 && diagonal_cutoff < 1.0))
            throw InvalidParameter("QuadConfig: diagonal_cutoff in (0,1) required");
        if (n_strata < 1) throw InvalidParameter("QuadConfig: n_strata >= 1 required");
    }

    QuadConfig with_seed(std::uint64_t s) const {
        QuadConfig c = *this;
        c.seed = s;
        return c;
    }
    QuadConfig with_samples(std::int64_t n) const {
        QuadConfig c = *this;
        c.n_samples = n;
        return c;
    }
};

/// Integration domain. Ball carries its geometry; the half space is
/// {x_d > 0}.
struct Domain {
    DomainTag tag = DomainTag::WholeSpace;
    Vec center;
    double radius = 0.0;

    static Domain half_space() { return {DomainTag::HalfSpace, Vec(), 0.0}; }
    static Domain whole_space() { return {DomainTag::WholeSpace, Vec(), 0.0}; }
    static Domain ball(const Vec& c, double r) {
        if (!(r > 0.0)) throw InvalidParameter("Domain::ball: radius must be positive");
        return {DomainTag::Ball, c, r};
    }

    bool bounded() const { return tag == DomainTag::Ball; }
    bool contains(const Vec& x) const {
        switch (tag) {
            case DomainTag::HalfSpace: return x[x.dim() - 1] > 0.0;
            case DomainTag::WholeSpace: return true;
            case DomainTag::Ball: return norm_sq(x - center) < radius * radius;
        }
        return false;
    }
    Box bounding_box(int d) const {
        if (tag != DomainTag::Ball) throw DomainError("bounding_box: unbounded domain");
        return {center - Vec(d, radius), center + Vec(d, radius)};
    }
};

/// Radial importance-sampling layout for the inner point y = x + r * omega.
/// Densities: ~ r^{near_exp-1} on the near shell [0, r_cut], ~ r^{-1-far_exp}
/// on the log-spaced shells of [max(r_cut, r_min), r_far] and on the
/// unbounded tail stratum. r_min > 0 skips radii that provably contribute
/// nothing when there is no near shell.
struct RadialPlan {
    bool near_shell = true;
    double r_cut = 0.0;
    double near_exp = 1.0;
    double r_min = 0.0;
    double far_exp = 1.0;
    double r_far = 1.0;
    bool infinite_tail = false;
};

/// Nonnegative pair integrand F(x, y, |y - x|).
using PairFn = std::function<double(const Vec&, const Vec&, double)>;

/// Stratified Monte Carlo estimate of
///   int_{x in xbox ∩ outer} int_{y in inner} F(x, y) dy dx,
/// with y sampled radially around x per `plan`. With `sym_double` set
/// (requires F symmetric, F = 0 when both points are outside xbox, and
/// outer == inner) pairs whose inner point leaves xbox count twice, which
/// makes the estimator unbiased for the full double integral over
/// inner x inner.
Estimate pair_integral(const Box& xbox, const Domain& outer, const Domain& inner, const PairFn& F,
                       const RadialPlan& plan, const QuadConfig& cfg, bool sym_double);

/// Restriction of the whole-space double integral to sign quadrants of
/// (x_d, y_d); used by the extension-operator decomposition.
enum class PairRegion { All, PosPos, NegNeg, PosNeg };

/// |u|^p_{S_{p,s}}: int int |(u(y)-u(x)) . (y-x)|^p / |y-x|^{d+ps+p}.
Estimate seminorm_S(const FieldSpec& u, const Domain& domain, const FracParams& params,
                    const QuadConfig& cfg, PairRegion region = PairRegion::All);

/// Gagliardo p-th power: int int |u(y)-u(x)|^p / |y-x|^{d+ps}.
Estimate seminorm_W(const FieldSpec& u, const Domain& domain, const FracParams& params,
                    const QuadConfig& cfg);

/// Boundary-weighted norm int_{R^d_+} |u(x)|^p x_d^{-ps} dx. Deterministic
/// tensor quadrature where the field structure allows it, Monte Carlo
/// otherwise.
Estimate hardy_norm(const FieldSpec& u, const FracParams& params, const QuadConfig& cfg);

/// int_{R^d_+} x_d^{-ps} (eta1 |u_d|^p + eta2 |u'|^p) dx, the componentwise
/// form appearing in the Hardy proof.
Estimate hardy_componentwise(const FieldSpec& u, const FracParams& params, const QuadConfig& cfg,
                             double eta1, double eta2);

/// int_{R^d_+} int_{R^d_-} |(u_d(y',-3y_d) - u_d(y',-y_d)) x_d|^p
///   / |y-x|^{d+(s+1)p} dy dx.
Estimate mixed_halfspace_integral(const FieldSpec& u, const FracParams& params,
                                  const QuadConfig& cfg);

} // namespace nlk
