#include "nlk/quad.hpp"

#include <cmath>
#include <vector>

#include "nlk/parallel.hpp"
#include "nlk/quadrature.hpp"
#include "nlk/rng.hpp"
#include "nlk/special.hpp"

namespace nlk {

namespace {

struct Stratum {
    double lo = 0.0, hi = 0.0; // hi unused for the tail stratum
    double exp = 1.0;          // near: density ~ r^{exp-1}; far/tail: ~ r^{-1-exp}
    bool near = false;
    bool tail = false;
};

std::vector<Stratum> build_strata(const RadialPlan& plan, int n_strata) {
    std::vector<Stratum> out;
    const bool has_near = plan.near_shell && plan.r_cut > 0.0;
    const bool has_tail = plan.infinite_tail;
    int far = std::max(1, n_strata - (has_near ? 1 : 0) - (has_tail ? 1 : 0));
    if (has_near) out.push_back({0.0, plan.r_cut, plan.near_exp, true, false});
    double lo = has_near ? plan.r_cut : std::max(plan.r_min, plan.r_far * 1e-12);
    double ratio = plan.r_far / lo;
    for (int i = 0; i < far; ++i) {
        double a = lo * std::pow(ratio, static_cast<double>(i) / far);
        double b = lo * std::pow(ratio, static_cast<double>(i + 1) / far);
        out.push_back({a, b, plan.far_exp, false, false});
    }
    if (has_tail) out.push_back({plan.r_far, 0.0, plan.far_exp, false, true});
    return out;
}

// Inverse-CDF draw of r together with the stratum density g(r).
double draw_radius(const Stratum& st, double u, double& g) {
    if (st.near) {
        double a = st.exp;
        double r = st.hi * std::pow(u, 1.0 / a);
        g = a * std::pow(r, a - 1.0) / std::pow(st.hi, a);
        return r;
    }
    double e = st.exp;
    if (st.tail) {
        double r = st.lo * std::pow(1.0 - u, -1.0 / e);
        g = e * std::pow(st.lo, e) * std::pow(r, -1.0 - e);
        return r;
    }
    double la = std::pow(st.lo, -e), lb = std::pow(st.hi, -e);
    double r = std::pow(la - u * (la - lb), -1.0 / e);
    g = e * std::pow(r, -1.0 - e) / (la - lb);
    return r;
}

struct StratumMoments {
    double mean = 0.0, var = 0.0;
    std::int64_t n = 0;
};

} // namespace

std::string to_string(EstMethod m) {
    switch (m) {
        case EstMethod::MonteCarlo: return "monte_carlo";
        case EstMethod::Stratified: return "stratified";
        case EstMethod::Deterministic: return "deterministic";
    }
    return "?";
}

nlohmann::json Estimate::to_json() const {
    return {{"value", value},
            {"std_error", std_error},
            {"n_samples", n_samples},
            {"method", to_string(method)},
            {"seed", seed}};
}

Estimate pair_integral(const Box& xbox, const Domain& outer, const Domain& inner, const PairFn& F,
                       const RadialPlan& plan, const QuadConfig& cfg, bool sym_double) {
    cfg.validate();
    const int d = xbox.dim();
    const double vol = xbox.volume();
    const double area = sphere_area(d);
    const std::vector<Stratum> strata = build_strata(plan, cfg.n_strata);
    const int K = static_cast<int>(strata.size());

    std::vector<StratumMoments> mom(static_cast<std::size_t>(K));
    const std::int64_t base = cfg.n_samples / K;
    const std::int64_t rem = cfg.n_samples % K;

    parallel_for_indexed(K, cfg.jobs, [&](int k) {
        const Stratum st = strata[static_cast<std::size_t>(k)];
        const std::int64_t m = base + (k < rem ? 1 : 0);
        Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(k)));
        double sum = 0.0, sum2 = 0.0;
        Vec x(d);
        for (std::int64_t i = 0; i < m; ++i) {
            for (int j = 0; j < d; ++j) x[j] = rng.uniform(xbox.lo[j], xbox.hi[j]);
            Vec w = rng.unit_sphere(d);
            double g = 0.0;
            double r = draw_radius(st, rng.uniform01(), g);
            double val = 0.0;
            if (r > 0.0 && outer.contains(x)) {
                Vec y = x + w * r;
                if (inner.contains(y)) {
                    val = F(x, y, r) * std::pow(r, d - 1) / g;
                    if (sym_double && !xbox.contains(y)) val *= 2.0;
                }
            }
            sum += val;
            sum2 += val * val;
        }
        StratumMoments sm;
        sm.n = m;
        sm.mean = m > 0 ? sum / static_cast<double>(m) : 0.0;
        if (m > 1)
            sm.var = std::max(0.0, (sum2 / static_cast<double>(m) - sm.mean * sm.mean) *
                                       static_cast<double>(m) / static_cast<double>(m - 1));
        mom[static_cast<std::size_t>(k)] = sm;
    });

    Estimate est;
    double value = 0.0, var_tot = 0.0;
    for (const StratumMoments& sm : mom) {
        value += vol * area * sm.mean;
        if (sm.n > 0) var_tot += vol * vol * area * area * sm.var / static_cast<double>(sm.n);
    }
    est.value = value;
    est.std_error = std::sqrt(var_tot);
    est.n_samples = cfg.n_samples;
    est.method = (K > 1) ? EstMethod::Stratified : EstMethod::MonteCarlo;
    est.seed = cfg.seed;
    return est;
}

namespace {

void check_field_domain(const FieldSpec& u, const Domain& domain, const char* who) {
    if (!domain.bounded()) {
        if (u.smoothness() == Smoothness::Affine)
            throw UnsupportedField(std::string(who) + ": affine field on an unbounded domain");
        if (!u.compact_support() && u.smoothness() != Smoothness::Schwartz)
            throw UnsupportedField(std::string(who) +
                                   ": unbounded domain needs compact support or a Schwartz tag");
    }
    if (domain.tag == DomainTag::WholeSpace && u.domain_tag() == DomainTag::HalfSpace)
        throw DomainError(std::string(who) + ": half-space field on the whole space");
}

struct SamplingGeometry {
    Box xbox;
    RadialPlan plan;
    bool sym_double = false;
    double tail_bound = 0.0;
};

SamplingGeometry seminorm_geometry(const FieldSpec& u, const Domain& domain, const FracParams& pr,
                                   const QuadConfig& cfg) {
    SamplingGeometry geo;
    const int d = u.dim();
    if (domain.bounded()) {
        // Bounded domain: sample all of it, every admissible pair is seen.
        geo.xbox = domain.bounding_box(d);
        geo.plan.r_far = geo.xbox.diameter();
        geo.plan.infinite_tail = false;
        geo.sym_double = false;
    } else {
        // x covers the support; pairs whose inner point leaves the box are
        // folded in by symmetry, so nothing is truncated for compactly
        // supported fields.
        Box s = u.support();
        double pad = std::min(cfg.truncation_pad, s.diameter());
        Box b = s.padded(pad);
        if (domain.tag == DomainTag::HalfSpace) b = b.clamped_below(0.0);
        geo.xbox = b;
        geo.plan.r_far = b.diameter();
        geo.plan.infinite_tail = true;
        geo.sym_double = true;
    }
    geo.plan.near_shell = true;
    geo.plan.r_cut = cfg.diagonal_cutoff * geo.plan.r_far;
    geo.plan.near_exp = pr.p * (1.0 - pr.s);
    geo.plan.far_exp = pr.ps();
    if (u.smoothness() == Smoothness::Schwartz) {
        // Effective-support remainder of Schwartz fields; the evaluator is
        // below 1e-16 * sup outside the box.
        double eps = 2e-16 * u.sup_norm();
        geo.tail_bound = std::pow(eps, pr.p) * (geo.xbox.volume() + 1.0) * sphere_area(d) *
                         (1.0 / geo.plan.near_exp + 2.0 / geo.plan.far_exp);
    }
    return geo;
}

bool region_keep(PairRegion region, const Vec& x, const Vec& y) {
    if (region == PairRegion::All) return true;
    const int d = x.dim();
    const bool xp = x[d - 1] >= 0.0, yp = y[d - 1] >= 0.0;
    switch (region) {
        case PairRegion::PosPos: return xp && yp;
        case PairRegion::NegNeg: return !xp && !yp;
        case PairRegion::PosNeg: return xp && !yp;
        default: return true;
    }
}

Estimate deterministic_estimate(double value, std::uint64_t seed) {
    Estimate e;
    e.value = value;
    e.std_error = 0.0;
    e.n_samples = 0;
    e.method = EstMethod::Deterministic;
    e.seed = seed;
    return e;
}

} // namespace

Estimate seminorm_S(const FieldSpec& u, const Domain& domain, const FracParams& pr,
                    const QuadConfig& cfg, PairRegion region) {
    check_field_domain(u, domain, "seminorm_S");
    SamplingGeometry geo = seminorm_geometry(u, domain, pr, cfg);
    const double kernel_pow = pr.d + pr.ps() + pr.p;
    const double p = pr.p;
    PairFn F = [&u, kernel_pow, p, region](const Vec& x, const Vec& y, double r) {
        if (!region_keep(region, x, y)) return 0.0;
        double num = u.proj_diff_numerator(x, y);
        if (num == 0.0) return 0.0;
        return std::pow(std::fabs(num), p) * std::pow(r, -kernel_pow);
    };
    Estimate est = pair_integral(geo.xbox, domain, domain, F, geo.plan, cfg, geo.sym_double);
    est.std_error += geo.tail_bound;
    return est;
}

Estimate seminorm_W(const FieldSpec& u, const Domain& domain, const FracParams& pr,
                    const QuadConfig& cfg) {
    check_field_domain(u, domain, "seminorm_W");
    SamplingGeometry geo = seminorm_geometry(u, domain, pr, cfg);
    const double kernel_pow = pr.d + pr.ps();
    const double p = pr.p;
    PairFn F = [&u, kernel_pow, p](const Vec& x, const Vec& y, double r) {
        double num = norm(u.delta(x, y));
        if (num == 0.0) return 0.0;
        return std::pow(num, p) * std::pow(r, -kernel_pow);
    };
    Estimate est = pair_integral(geo.xbox, domain, domain, F, geo.plan, cfg, geo.sym_double);
    est.std_error += geo.tail_bound;
    return est;
}

namespace {

// Shared engine for boundary-weighted integrals
//   int_{R^d_+} x_d^{-ps} comp(u(x)) dx
// with comp p-homogeneous (comp(c v) = c^p comp(v)). Bump and separable
// fields reduce to profile integrals times comp(amplitude); d <= 2 uses
// tensor quadrature; the remaining d >= 3 customs fall back to Monte Carlo.
Estimate hardy_weighted(const FieldSpec& u, const FracParams& pr, const QuadConfig& cfg,
                        const std::function<double(const Vec&)>& comp, const char* who) {
    cfg.validate();
    if (u.domain_tag() != DomainTag::HalfSpace)
        throw DomainError(std::string(who) + ": field must live on the half-space");
    if (!u.compact_support()) throw UnsupportedField(std::string(who) + ": compact support required");
    if (!(u.boundary_gap() > 0.0))
        throw BoundaryContact(std::string(who) + ": support touches the hyperplane x_d = 0");
    const int d = pr.d;
    const double p = pr.p;
    const double w = -pr.ps();
    const Box s = u.support();

    if (d == 1) {
        auto f = [&](double t) { return comp(u.evaluate(Vec{t})) * std::pow(t, w); };
        QuadResult q = gk_adaptive(f, s.lo[0], s.hi[0], 1e-12, 1e-10);
        return deterministic_estimate(q.value, cfg.seed);
    }
    if (d == 2) {
        auto f = [&](double xd) {
            auto inner = [&](double x1) { return comp(u.evaluate(Vec{x1, xd})); };
            QuadResult qi = gk_adaptive(inner, s.lo[0], s.hi[0], 1e-13, 1e-10);
            return qi.value * std::pow(xd, w);
        };
        QuadResult q = gk_adaptive(f, s.lo[1], s.hi[1], 1e-12, 1e-9);
        return deterministic_estimate(q.value, cfg.seed);
    }
    if (u.family() == Family::SeparableBump) {
        // comp(u(x)) = comp(amp) prod_i profile_i(x_i)^p.
        const Vec c = u.center();
        const Vec rr = u.radii();
        const double amp_norm = norm(u.amplitude());
        double value = comp(u.amplitude());
        for (int i = 0; i < d; ++i) {
            const bool weighted = (i == d - 1);
            auto prof = [&](double t) {
                Vec x = c;
                x[i] = t;
                double phi = norm(u.evaluate(x)) / amp_norm;
                double f = std::pow(phi, p);
                return weighted ? f * std::pow(t, w) : f;
            };
            QuadResult q = gk_adaptive(prof, c[i] - rr[i], c[i] + rr[i], 1e-13, 1e-10);
            value *= q.value;
        }
        return deterministic_estimate(value, cfg.seed);
    }
    if (u.family() == Family::Bump) {
        // Cylindrical reduction around the vertical axis through the center.
        const Vec c = u.center();
        const double radius = u.radius();
        const double amp_norm = norm(u.amplitude());
        const double ring = sphere_area(d - 1);
        auto outer = [&](double xd) {
            double dz = xd - c[d - 1];
            double rho_max = std::sqrt(std::max(0.0, radius * radius - dz * dz));
            if (rho_max <= 0.0) return 0.0;
            auto inner = [&](double rho) {
                Vec x = c;
                x[0] += rho;
                x[d - 1] = xd;
                double phi = norm(u.evaluate(x)) / amp_norm;
                return std::pow(rho, d - 2) * std::pow(phi, p);
            };
            QuadResult qi = gk_adaptive(inner, 0.0, rho_max, 1e-13, 1e-10);
            return ring * qi.value * std::pow(xd, w);
        };
        QuadResult q = gk_adaptive(outer, s.lo[d - 1], s.hi[d - 1], 1e-12, 1e-9);
        return deterministic_estimate(comp(u.amplitude()) * q.value, cfg.seed);
    }

    // General d >= 3 field: plain Monte Carlo over the support box.
    const double vol = s.volume();
    const int K = cfg.n_strata;
    std::vector<StratumMoments> mom(static_cast<std::size_t>(K));
    const std::int64_t base = cfg.n_samples / K, rem = cfg.n_samples % K;
    parallel_for_indexed(K, cfg.jobs, [&](int k) {
        const std::int64_t m = base + (k < rem ? 1 : 0);
        Rng rng(derive_seed(cfg.seed ^ 0x4a5dULL, static_cast<std::uint64_t>(k)));
        double sum = 0.0, sum2 = 0.0;
        Vec x(d);
        for (std::int64_t i = 0; i < m; ++i) {
            for (int j = 0; j < d; ++j) x[j] = rng.uniform(s.lo[j], s.hi[j]);
            double val = comp(u.evaluate(x)) * std::pow(x[d - 1], w);
            sum += val;
            sum2 += val * val;
        }
        StratumMoments sm;
        sm.n = m;
        sm.mean = m > 0 ? sum / static_cast<double>(m) : 0.0;
        if (m > 1)
            sm.var = std::max(0.0, (sum2 / static_cast<double>(m) - sm.mean * sm.mean) *
                                       static_cast<double>(m) / static_cast<double>(m - 1));
        mom[static_cast<std::size_t>(k)] = sm;
    });
    Estimate est;
    double mean = 0.0, var_tot = 0.0;
    for (const StratumMoments& sm : mom) {
        mean += sm.mean / K;
        if (sm.n > 0) var_tot += sm.var / (static_cast<double>(K) * K * static_cast<double>(sm.n));
    }
    est.value = vol * mean;
    est.std_error = vol * std::sqrt(var_tot);
    est.n_samples = cfg.n_samples;
    est.method = EstMethod::MonteCarlo;
    est.seed = cfg.seed;
    return est;
}

} // namespace

Estimate hardy_norm(const FieldSpec& u, const FracParams& pr, const QuadConfig& cfg) {
    const double p = pr.p;
    return hardy_weighted(
        u, pr, cfg, [p](const Vec& v) { return std::pow(norm(v), p); }, "hardy_norm");
}

Estimate hardy_componentwise(const FieldSpec& u, const FracParams& pr, const QuadConfig& cfg,
                             double eta1, double eta2) {
    const double p = pr.p;
    const int d = pr.d;
    auto comp = [p, d, eta1, eta2](const Vec& v) {
        double tang = 0.0;
        for (int i = 0; i + 1 < d; ++i) tang += v[i] * v[i];
        return eta1 * std::pow(std::fabs(v[d - 1]), p) + eta2 * std::pow(std::sqrt(tang), p);
    };
    return hardy_weighted(u, pr, cfg, comp, "hardy_componentwise");
}

Estimate mixed_halfspace_integral(const FieldSpec& u, const FracParams& pr, const QuadConfig& cfg) {
    cfg.validate();
    if (u.domain_tag() != DomainTag::HalfSpace)
        throw DomainError("mixed_halfspace_integral: field must live on the half-space");
    if (!u.compact_support())
        throw UnsupportedField("mixed_halfspace_integral: compact support required");
    const int d = pr.d;
    const double p = pr.p;
    const double kernel_pow = d + (pr.s + 1.0) * pr.p;
    const Box s = u.support();
    const double gap = u.boundary_gap();

    // g(y) = u_d(y',-3y_d) - u_d(y',-y_d) vanishes outside
    // {y' in supp', y_d in [-hi_d, -gap/3]}.
    Box ybox = s;
    ybox.lo[d - 1] = -s.hi[d - 1];
    ybox.hi[d - 1] = -gap / 3.0;

    RadialPlan plan;
    plan.near_shell = false;
    plan.r_min = gap / 3.0; // |y - x| > gap/3 whenever x_d > 0
    plan.far_exp = pr.ps();
    plan.r_far = 4.0 * (ybox.diameter() + s.hi[d - 1] + 1.0);
    plan.infinite_tail = true;

    PairFn F = [&u, p, kernel_pow, d](const Vec& y, const Vec& x, double r) {
        double xd = x[d - 1];
        Vec y3 = y, y1 = y;
        y3[d - 1] = -3.0 * y[d - 1];
        y1[d - 1] = -y[d - 1];
        double gval = u.evaluate(y3)[d - 1] - u.evaluate(y1)[d - 1];
        if (gval == 0.0 || xd == 0.0) return 0.0;
        return std::pow(std::fabs(gval * xd), p) * std::pow(r, -kernel_pow);
    };
    // Outer variable is y (compact), inner is x in the upper half-space.
    return pair_integral(ybox, Domain::whole_space(), Domain::half_space(), F, plan, cfg,
                         /*sym_double=*/false);
}

} // namespace nlk
