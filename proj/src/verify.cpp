#include "nlk/verify.hpp"

#include <cmath>
#include <sstream>

#include "nlk/quadrature.hpp"
#include "nlk/rng.hpp"
#include "nlk/spectral.hpp"

namespace nlk {

namespace {

double combined_error(const VerificationReport& r) {
    double a = r.lhs.std_error;
    double b = r.constant_used * r.rhs.std_error;
    return std::sqrt(a * a + b * b);
}

Estimate plain_estimate(double v, EstMethod m = EstMethod::Deterministic) {
    Estimate e;
    e.value = v;
    e.std_error = 0.0;
    e.method = m;
    return e;
}

// Seminorm-scale transform of a p-th power estimate (delta method).
Estimate root_scale(const Estimate& e, double p) {
    Estimate out = e;
    if (e.value > 0.0) {
        out.value = std::pow(e.value, 1.0 / p);
        out.std_error = e.std_error * out.value / (p * e.value);
    } else {
        out.value = 0.0;
        out.std_error = std::pow(e.std_error, 1.0 / p);
    }
    return out;
}

} // namespace

void finalize_report(VerificationReport& rep) {
    double comb = combined_error(rep);
    double diff = rep.constant_used * rep.rhs.value - rep.lhs.value;
    rep.margin = diff / std::max(comb, 1e-300);
    rep.passed = rep.lhs.value <= rep.constant_used * rep.rhs.value + 3.0 * comb;
}

nlohmann::json VerificationReport::to_json() const {
    nlohmann::json j;
    j["check"] = check_name;
    j["params"] = {{"d", params.d}, {"p", params.p}, {"s", params.s}};
    j["field"] = field_id;
    j["lhs"] = lhs.to_json();
    j["rhs"] = rhs.to_json();
    j["constant"] = constant_used;
    j["margin"] = margin;
    j["passed"] = passed;
    j["details"] = details;
    return j;
}

std::string reports_to_jsonl(const std::vector<VerificationReport>& reports) {
    std::string out;
    for (const auto& r : reports) {
        out += r.to_json().dump();
        out += '\n';
    }
    return out;
}

std::string reports_to_csv(const std::vector<VerificationReport>& reports) {
    std::ostringstream os;
    os << "check,d,p,s,field,lhs,rhs,constant,margin,passed\n";
    os.precision(17);
    for (const auto& r : reports) {
        os << r.check_name << ',' << r.params.d << ',' << r.params.p << ',' << r.params.s << ','
           << r.field_id << ',' << r.lhs.value << ',' << r.rhs.value << ',' << r.constant_used
           << ',' << r.margin << ',' << (r.passed ? 1 : 0) << '\n';
    }
    return os.str();
}

VerificationReport hardy_check(const FieldSpec& u, const FracParams& pr, const QuadConfig& cfg) {
    pr.require_ps_not_one("hardy_check");
    VerificationReport rep;
    rep.check_name = "hardy";
    rep.params = pr;
    rep.field_id = u.name();

    ConstantValue sig = sigma_constant(pr);
    auto [e1, e2] = eta_constants(pr);
    double emin = std::min(e1.value, e2.value);
    // The proof bounds sigma * min(eta) * int x^{-ps} (|u_d|^p + |u'|^p);
    // passing to |u|^p costs 2^{p/2-1} when p > 2.
    double lp_factor = pr.p > 2.0 ? std::pow(2.0, 0.5 * pr.p - 1.0) : 1.0;
    rep.constant_used = lp_factor / (sig.value * emin);

    rep.lhs = hardy_norm(u, pr, cfg);
    rep.rhs = seminorm_S(u, Domain::half_space(), pr,
                         cfg.with_seed(derive_seed(cfg.seed, hash_str("hardy_rhs"))));
    finalize_report(rep);

    // Componentwise form straight from the proof's final display.
    Estimate split = hardy_componentwise(u, pr, cfg.with_seed(derive_seed(cfg.seed, 0xC3)),
                                         e1.value, e2.value);
    double split_comb = std::sqrt(split.std_error * split.std_error +
                                  rep.rhs.std_error * rep.rhs.std_error / (sig.value * sig.value));
    bool split_ok = split.value <= rep.rhs.value / sig.value + 3.0 * split_comb;
    rep.passed = rep.passed && split_ok;
    rep.details["sigma"] = sig.value;
    rep.details["eta1"] = e1.value;
    rep.details["eta2"] = e2.value;
    rep.details["kappa"] = rep.constant_used;
    rep.details["lhs_split"] = split.value;
    rep.details["rhs_split_bound"] = rep.rhs.value / sig.value;
    rep.details["split_passed"] = split_ok ? 1.0 : 0.0;
    return rep;
}

VerificationReport hardy_remainder_check(const FieldSpec& u, const FracParams& pr,
                                         const QuadConfig& cfg, double kappa_rem_override) {
    if (pr.p < 2.0) throw ExcludedParameter("hardy_remainder_check: requires p >= 2");
    pr.require_ps_not_one("hardy_remainder_check");
    VerificationReport rep;
    rep.check_name = "hardy_remainder";
    rep.params = pr;
    rep.field_id = u.name();

    ConstantValue sig = sigma_constant(pr);
    auto [e1, e2] = eta_constants(pr);
    double emin = std::min(e1.value, e2.value);
    double kappa_rem = kappa_rem_override > 0.0
                           ? kappa_rem_override
                           : (pr.p == 2.0 ? 2.0 * sig.value * emin
                                          : std::pow(2.0, 1.0 - 0.5 * pr.p) * sig.value * emin);
    ConstantValue cp = c_p(pr.p);

    Estimate S = seminorm_S(u, Domain::half_space(), pr, cfg);
    Estimate H = hardy_norm(u, pr, cfg.with_seed(derive_seed(cfg.seed, 0xAA)));

    // Remainder double integral with the ground-state weights.
    const double beta = (1.0 - pr.ps()) / pr.p;
    const double wexp = -(1.0 - pr.ps()) / 2.0;
    const double kernel_pow = pr.d + pr.ps() + pr.p;
    const int d = pr.d;
    const double p = pr.p;
    PairFn F = [&u, beta, wexp, kernel_pow, d, p](const Vec& x, const Vec& y, double r) {
        double wx = std::pow(x[d - 1], beta), wy = std::pow(y[d - 1], beta);
        Vec ux = u.evaluate(x), uy = u.evaluate(y);
        Vec diff = ux * wx - uy * wy;
        if (norm_sq(diff) == 0.0) return 0.0;
        double num = dot(diff, y - x);
        if (num == 0.0) return 0.0;
        return std::pow(std::fabs(num), p) * std::pow(x[d - 1] * y[d - 1], wexp) *
               std::pow(r, -kernel_pow);
    };
    Box s = u.support();
    double pad = std::min(cfg.truncation_pad, s.diameter());
    Box b = s.padded(pad).clamped_below(0.0);
    RadialPlan plan;
    plan.near_shell = true;
    plan.r_cut = cfg.diagonal_cutoff * b.diameter();
    plan.near_exp = p * (1.0 - pr.s);
    plan.far_exp = pr.ps();
    plan.r_far = b.diameter();
    plan.infinite_tail = true;
    Estimate R = pair_integral(b, Domain::half_space(), Domain::half_space(), F, plan,
                               cfg.with_seed(derive_seed(cfg.seed, 0xBB)), true);

    rep.lhs.value = kappa_rem * H.value + cp.value * R.value;
    rep.lhs.std_error = std::sqrt(std::pow(kappa_rem * H.std_error, 2) +
                                  std::pow(cp.value * R.std_error, 2));
    rep.lhs.n_samples = R.n_samples;
    rep.lhs.method = R.method;
    rep.lhs.seed = cfg.seed;
    rep.rhs = S;
    rep.constant_used = 1.0;
    finalize_report(rep);

    rep.details["kappa_rem"] = kappa_rem;
    rep.details["c_p"] = cp.value;
    rep.details["seminorm_S"] = S.value;
    rep.details["hardy_norm"] = H.value;
    rep.details["remainder"] = R.value;
    // Alternate readings of the ambiguous remainder constant.
    double lp_factor = pr.p > 2.0 ? std::pow(2.0, 0.5 * pr.p - 1.0) : 1.0;
    double kappa_thm = lp_factor / (sig.value * emin);
    rep.details["margin_kappa_rem_sigma_eta"] =
        S.value - sig.value * emin * H.value - cp.value * R.value;
    rep.details["margin_kappa_rem_2sigma_eta"] =
        S.value - 2.0 * sig.value * emin * H.value - cp.value * R.value;
    rep.details["margin_kappa_rem_kappa_thm"] = S.value - kappa_thm * H.value - cp.value * R.value;
    rep.details["margin_kappa_rem_inv_kappa_thm"] =
        S.value - (1.0 / kappa_thm) * H.value - cp.value * R.value;
    return rep;
}

VerificationReport korn_halfspace_check(const FieldSpec& u, const FracParams& pr,
                                        const QuadConfig& cfg) {
    pr.require_korn("korn_halfspace_check");
    VerificationReport rep;
    rep.check_name = "korn_halfspace";
    rep.params = pr;
    rep.field_id = u.name();
    rep.lhs = seminorm_W(u, Domain::half_space(), pr, cfg);
    rep.rhs = seminorm_S(u, Domain::half_space(), pr,
                         cfg.with_seed(derive_seed(cfg.seed, hash_str("korn_rhs"))));
    if (rep.rhs.value == 0.0) throw NullSeminorm("korn_halfspace_check: null S-seminorm");
    double ratio = rep.lhs.value / rep.rhs.value;
    rep.constant_used = ratio;
    finalize_report(rep);
    rep.passed = std::isfinite(ratio);
    rep.details["ratio"] = ratio;
    return rep;
}

VerificationReport korn_wholespace_check(const FieldSpec& u, const FracParams& pr,
                                         const QuadConfig& cfg) {
    pr.require_p2("korn_wholespace_check");
    VerificationReport rep;
    rep.check_name = "korn_wholespace";
    rep.params = pr;
    rep.field_id = u.name();
    auto [lo, hi] = korn_bounds(pr);
    rep.lhs = seminorm_W(u, Domain::whole_space(), pr, cfg);
    rep.rhs = seminorm_S(u, Domain::whole_space(), pr,
                         cfg.with_seed(derive_seed(cfg.seed, hash_str("korn_ws_rhs"))));
    if (rep.rhs.value == 0.0) throw NullSeminorm("korn_wholespace_check: null S-seminorm");
    double ratio = rep.lhs.value / rep.rhs.value;
    double rel_err = std::sqrt(std::pow(rep.lhs.std_error / std::max(rep.lhs.value, 1e-300), 2) +
                               std::pow(rep.rhs.std_error / rep.rhs.value, 2));
    double tol = 3.0 * ratio * rel_err;
    rep.constant_used = hi;
    rep.margin = std::min(hi + tol - ratio, ratio - (lo - tol)) /
                 std::max(ratio * rel_err, 1e-300);
    rep.passed = (ratio <= hi + tol) && (ratio >= lo - tol);
    rep.details["ratio"] = ratio;
    rep.details["band_lower"] = lo;
    rep.details["band_upper"] = hi;
    rep.details["ratio_rel_err"] = rel_err;
    return rep;
}

VerificationReport scaling_check(const FieldSpec& u, double lambda, const FracParams& pr,
                                 const QuadConfig& cfg) {
    if (!(lambda > 0.0)) throw InvalidParameter("scaling_check: lambda must be positive");
    VerificationReport rep;
    rep.check_name = "scaling";
    rep.params = pr;
    rep.field_id = u.name();

    FieldSpec ul = scale_field(u, lambda);
    Estimate Sl = seminorm_S(ul, Domain::half_space(), pr, cfg);
    Estimate S = seminorm_S(u, Domain::half_space(), pr,
                            cfg.with_seed(derive_seed(cfg.seed, hash_str("scaling_rhs"))));
    // Assert on the seminorm scale: |F_l u|_S <= l^{(d+ps-2)/p} |u|_S.
    rep.lhs = root_scale(Sl, pr.p);
    rep.rhs = root_scale(S, pr.p);
    rep.constant_used = std::pow(lambda, (pr.d + pr.ps() - 2.0) / pr.p);
    finalize_report(rep);
    rep.details["lambda"] = lambda;
    rep.details["S_scaled_p"] = Sl.value;
    rep.details["S_p"] = S.value;

    // Companion Hardy bound on F_lambda(u) - u; constant recorded only.
    if (!pr.ps_is_one()) {
        FieldSpec base = u;
        FieldSpec scaled = ul;
        FieldSpec::Evaluator eval = [base, scaled](const Vec& x) {
            return scaled.evaluate(x) - base.evaluate(x);
        };
        Box s = Box::hull(u.support(), ul.support());
        double gap = std::min(u.boundary_gap(), ul.boundary_gap());
        FieldSpec diff = FieldSpec::custom(DomainTag::HalfSpace, Smoothness::C1_compact,
                                           std::move(eval), {}, s, gap,
                                           u.sup_norm() + ul.sup_norm(),
                                           u.lipschitz() + ul.lipschitz(), u.name() + "_Fdiff");
        Estimate Hd = hardy_norm(diff, pr, cfg.with_seed(derive_seed(cfg.seed, 0xDD)));
        rep.details["hardy_of_difference"] = Hd.value;
        if (S.value > 0.0) rep.details["companion_C"] = Hd.value / S.value;
    }
    return rep;
}

std::vector<double> default_eps_sequence(const FracParams& pr) {
    double q = pr.p * (1.0 - pr.s); // excision error ~ eps^q
    int K = static_cast<int>(std::ceil(18.0 / q));
    K = std::max(12, std::min(K, 40));
    std::vector<double> eps;
    eps.reserve(static_cast<std::size_t>(K));
    for (int k = 1; k <= K; ++k) eps.push_back(std::pow(2.0, -k));
    return eps;
}

namespace {

// Signed power t |t|^{p-2}.
double signed_pow(double t, double pm1) { return t >= 0.0 ? std::pow(t, pm1) : -std::pow(-t, pm1); }

// The 1D excised kernel integral
//   G(eps) = int_{y>0, |y-x|>eps} (y^a - x^a)|y^a - x^a|^{p-2} |y-x|^{-1-ps} dy
// evaluated with the symmetric pairing that cancels the odd singular part
// pointwise.
double excised_kernel_1d(const FracParams& pr, double x, double eps) {
    const double a = pr.alpha;
    const double p = pr.p;
    const double ps = pr.ps();
    const double pm1 = p - 1.0;

    auto dw_plus = [a, x](double h) { return std::pow(x, a) * std::expm1(a * std::log1p(h / x)); };
    auto dw_minus = [a, x](double h) { return std::pow(x, a) * std::expm1(a * std::log1p(-h / x)); };
    auto paired = [&](double h) {
        return (signed_pow(dw_plus(h), pm1) + signed_pow(dw_minus(h), pm1)) *
               std::pow(h, -1.0 - ps);
    };
    auto right_only = [&](double h) {
        return signed_pow(dw_plus(h), pm1) * std::pow(h, -1.0 - ps);
    };
    auto left_only = [&](double h) {
        double y = x - h; // y in (0, 0.1x]: direct form, no cancellation
        return signed_pow(std::pow(y, a) - std::pow(x, a), pm1) * std::pow(h, -1.0 - ps);
    };

    const double split = 0.9 * x;
    double total = 0.0;
    if (eps < split) {
        // Paired region in log coordinates.
        auto g = [&](double w) {
            double h = std::exp(w);
            return paired(h) * h;
        };
        total += gk_adaptive(g, std::log(eps), std::log(split), 1e-12, 1e-11, 200000).value;
        // Left remainder h in [split, x): y -> 0 endpoint.
        double exp_b = a < 0.0 ? a * pm1 : 0.0;
        auto lf = [&](double h) { return left_only(h); };
        total += integrate_endpoint_singular(lf, split, x, 0.0, exp_b, 1e-12, 1e-11).value;
        // Right remainder h in [split, inf).
        double tail_exp = a > 0.0 ? 2.0 + a : 1.0 + ps;
        total += gk_adaptive(right_only, split, 8.0 * x, 1e-12, 1e-11).value;
        total += integrate_halfline(right_only, 8.0 * x, tail_exp, 1e-12, 1e-11).value;
    } else {
        if (eps < x) {
            double exp_b = a < 0.0 ? a * pm1 : 0.0;
            total += integrate_endpoint_singular(left_only, eps, x, 0.0, exp_b, 1e-12, 1e-11).value;
        }
        double tail_exp = a > 0.0 ? 2.0 + a : 1.0 + ps;
        total += gk_adaptive(right_only, eps, eps + 8.0 * x, 1e-12, 1e-11).value;
        total += integrate_halfline(right_only, eps + 8.0 * x, tail_exp, 1e-12, 1e-11).value;
    }
    return total;
}

} // namespace

VerificationReport ground_state_limit_check(const FracParams& pr, double x_d, const Vec& v,
                                            const std::vector<double>& eps_sequence) {
    pr.require_ps_not_one("ground_state_limit_check");
    if (!(x_d > 0.0)) throw InvalidParameter("ground_state_limit_check: x_d must be positive");
    if (eps_sequence.size() < 3)
        throw InvalidParameter("ground_state_limit_check: need at least 3 epsilon values");

    VerificationReport rep;
    rep.check_name = "ground_state_limit";
    rep.params = pr;

    ConstantValue fv = f_of_v(pr, v);
    ConstantValue sig = sigma_constant(pr);
    // Limit = -sigma x^{-ps} w(x)^{p-1} f(v), w(x) = x^alpha.
    double target = -sig.value * std::pow(x_d, -pr.ps()) *
                    std::pow(x_d, pr.alpha * (pr.p - 1.0)) * fv.value;

    std::vector<double> values;
    values.reserve(eps_sequence.size());
    for (double eps : eps_sequence)
        values.push_back(fv.value * excised_kernel_1d(pr, x_d, eps));

    double final_val = values.back();
    std::vector<double> cauchy;
    for (std::size_t i = 1; i < values.size(); ++i)
        cauchy.push_back(std::fabs(values[i] - values[i - 1]));
    bool monotone_tail = true;
    std::size_t nm = std::min<std::size_t>(6, cauchy.size());
    for (std::size_t i = cauchy.size() - nm + 1; i < cauchy.size(); ++i)
        if (cauchy[i] > cauchy[i - 1] * 1.0000001) monotone_tail = false;

    rep.lhs = plain_estimate(std::fabs(final_val - target));
    rep.rhs = plain_estimate(std::fabs(target));
    rep.constant_used = 1e-3;
    finalize_report(rep);
    rep.details["target"] = target;
    rep.details["final_value"] = final_val;
    rep.details["final_cauchy"] = cauchy.back();
    rep.details["final_cauchy_rel"] = cauchy.back() / std::fabs(target);
    rep.details["monotone_tail"] = monotone_tail ? 1.0 : 0.0;
    rep.details["f_of_v"] = fv.value;
    rep.details["sigma"] = sig.value;
    rep.details["x_d"] = x_d;
    rep.details["n_eps"] = static_cast<double>(eps_sequence.size());
    return rep;
}

namespace {

long double basic_gap(long double a, long double t, long double p) {
    long double lhs = powl(fabsl(a - t), p);
    long double rhs = powl(1.0L - t, p - 1.0L) * (powl(fabsl(a), p) - t);
    return lhs - rhs;
}

long double refined_gap(long double a, long double t, long double p, long double cp) {
    return basic_gap(a, t, p) - cp * powl(t, 0.5L * p) * powl(fabsl(a - 1.0L), p);
}

// Phi[u](x, y) evaluated from its definition in extended precision, after
// swapping so that w(x) >= w(y).
long double phi_functional(const FieldSpec& u, const FracParams& pr, Vec x, Vec y) {
    const int d = pr.d;
    const long double p = pr.p;
    long double wx = powl(x[d - 1], pr.alpha), wy = powl(y[d - 1], pr.alpha);
    if (wx < wy) {
        std::swap(x, y);
        std::swap(wx, wy);
    }
    Vec dxy = y - x;
    Vec ux = u.evaluate(x), uy = u.evaluate(y);
    long double full = powl(fabsl(static_cast<long double>(dot(ux - uy, dxy))), p);
    long double ax = powl(fabsl(static_cast<long double>(dot(ux, dxy))), p) / powl(wx, p - 1.0L);
    long double ay = powl(fabsl(static_cast<long double>(dot(uy, dxy))), p) / powl(wy, p - 1.0L);
    long double dw = wx - wy;
    long double phi = full - (ax - ay) * dw * powl(fabsl(dw), p - 2.0L);
    return phi;
}

} // namespace

VerificationReport pointwise_inequalities(double p, std::int64_t n_samples, std::uint64_t seed) {
    if (!(p >= 1.0)) throw InvalidParameter("pointwise_inequalities: requires p >= 1");
    VerificationReport rep;
    rep.check_name = "pointwise";
    rep.params = FracParams(2, p, 0.25);
    rep.field_id = "";

    const int grid = 1000;
    long long violations = 0;
    long double worst = 0.0L;
    for (int i = 0; i <= grid; ++i) {
        long double a = -10.0L + 20.0L * i / grid;
        for (int j = 0; j <= grid; ++j) {
            long double t = static_cast<long double>(j) / grid;
            long double gap = basic_gap(a, t, p);
            long double scale = 1.0L + powl(fabsl(a), static_cast<long double>(p));
            if (gap < -1e-12L * scale) ++violations;
            if (gap / scale < worst) worst = gap / scale;
        }
    }
    long long refined_violations = 0;
    double cp_val = 0.0;
    if (p >= 2.0) {
        cp_val = c_p(p).value;
        for (int i = 0; i <= grid; ++i) {
            long double a = -10.0L + 20.0L * i / grid;
            for (int j = 0; j <= grid; ++j) {
                long double t = static_cast<long double>(j) / grid;
                long double gap = refined_gap(a, t, p, cp_val);
                long double scale = 1.0L + powl(fabsl(a), static_cast<long double>(p));
                if (gap < -1e-12L * scale) ++refined_violations;
            }
        }
    }

    // Phi[u] >= 0 on random suite fields and half-space point pairs.
    long double phi_min = 0.0L;
    long long phi_violations = 0;
    {
        Rng rng(derive_seed(seed, hash_str("phi")));
        double s_choices[3] = {0.25, 0.6, 0.75};
        for (int d = 1; d <= 3; ++d) {
            auto fields = field_library(d);
            std::vector<FieldSpec> half;
            for (auto& f : fields)
                if (f.domain_tag() == DomainTag::HalfSpace) half.push_back(f);
            FracParams local(d, p, s_choices[d - 1]);
            std::int64_t per = n_samples / (3 * static_cast<std::int64_t>(half.size()));
            for (const auto& f : half) {
                for (std::int64_t i = 0; i < per; ++i) {
                    Vec x(d), y(d);
                    for (int j = 0; j + 1 < d; ++j) {
                        x[j] = rng.uniform(-2.0, 2.0);
                        y[j] = rng.uniform(-2.0, 2.0);
                    }
                    x[d - 1] = rng.uniform(0.02, 3.0);
                    y[d - 1] = rng.uniform(0.02, 3.0);
                    long double phi = phi_functional(f, local, x, y);
                    if (phi < phi_min) phi_min = phi;
                    if (phi < -1e-12L) ++phi_violations;
                }
            }
        }
    }

    rep.lhs = plain_estimate(static_cast<double>(violations + refined_violations + phi_violations));
    rep.rhs = plain_estimate(0.0);
    rep.constant_used = 1.0;
    finalize_report(rep);
    rep.details["basic_violations"] = static_cast<double>(violations);
    rep.details["refined_violations"] = static_cast<double>(refined_violations);
    rep.details["phi_violations"] = static_cast<double>(phi_violations);
    rep.details["phi_min"] = static_cast<double>(phi_min);
    rep.details["worst_basic_gap"] = static_cast<double>(worst);
    rep.details["c_p"] = cp_val;
    return rep;
}

} // namespace nlk
