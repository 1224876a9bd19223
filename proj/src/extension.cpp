#include "nlk/extension.hpp"

#include <cmath>

#include "nlk/rng.hpp"

namespace nlk {

ExtendedField::ExtendedField(FieldSpec u) : u_(std::move(u)) {
    if (u_.domain_tag() != DomainTag::HalfSpace)
        throw DomainError("extend: input must be a half-space field");
    Box s = u_.support();
    const int d = u_.dim();
    support_ = s;
    support_.lo[d - 1] = -s.hi[d - 1];
}

Vec ExtendedField::from_below(const Vec& x) const {
    const int d = u_.dim();
    Vec xm = x, x3 = x;
    xm[d - 1] = -x[d - 1];
    x3[d - 1] = -3.0 * x[d - 1];
    Vec a = u_.evaluate(xm);
    Vec b = u_.evaluate(x3);
    Vec out(d);
    for (int i = 0; i + 1 < d; ++i) out[i] = 2.0 * a[i] - b[i];
    out[d - 1] = -2.0 * a[d - 1] + 3.0 * b[d - 1];
    return out;
}

Vec ExtendedField::evaluate(const Vec& x) const {
    if (x[u_.dim() - 1] >= 0.0) return u_.evaluate(x);
    return from_below(x);
}

double ExtendedField::trace_mismatch(const Vec& xprime) const {
    const int d = u_.dim();
    Vec x0(d);
    for (int i = 0; i + 1 < d; ++i) x0[i] = xprime[i];
    x0[d - 1] = 0.0;
    Vec below = from_below(x0);
    Vec above = u_.evaluate(x0);
    double m = 0.0;
    for (int i = 0; i < d; ++i) m = std::max(m, std::fabs(below[i] - above[i]));
    return m;
}

FieldSpec ExtendedField::as_field_spec() const {
    ExtendedField copy = *this;
    FieldSpec::Evaluator eval = [copy](const Vec& x) { return copy.evaluate(x); };
    // sup |U| <= 5 sup |u|; Lipschitz amplification <= 12 through the
    // reflection weights.
    return FieldSpec::custom(DomainTag::WholeSpace, Smoothness::C1_compact, std::move(eval), {},
                             support_, 0.0, 5.0 * u_.sup_norm(), 12.0 * u_.lipschitz(),
                             u_.name() + "_ext");
}

ExtendedField extend(const FieldSpec& u) { return ExtendedField(u); }

std::tuple<Estimate, Estimate, Estimate> decompose_seminorm(const ExtendedField& U,
                                                            const FracParams& params,
                                                            const QuadConfig& cfg) {
    FieldSpec f = U.as_field_spec();
    Domain whole = Domain::whole_space();
    Estimate ipp = seminorm_S(f, whole, params, cfg.with_seed(derive_seed(cfg.seed, hash_str("I+"))),
                              PairRegion::PosPos);
    Estimate imm = seminorm_S(f, whole, params, cfg.with_seed(derive_seed(cfg.seed, hash_str("I-"))),
                              PairRegion::NegNeg);
    Estimate ipm = seminorm_S(f, whole, params,
                              cfg.with_seed(derive_seed(cfg.seed, hash_str("I+-"))),
                              PairRegion::PosNeg);
    return {ipp, imm, ipm};
}

double boundedness_ratio(const FieldSpec& u, const FracParams& params, const QuadConfig& cfg) {
    Estimate denom = seminorm_S(u, Domain::half_space(), params, cfg);
    if (denom.value == 0.0) throw NullSeminorm("boundedness_ratio: seminorm of u is zero");
    FieldSpec ext = extend(u).as_field_spec();
    Estimate numer = seminorm_S(ext, Domain::whole_space(), params,
                                cfg.with_seed(derive_seed(cfg.seed, hash_str("ext"))));
    return numer.value / denom.value;
}

} // namespace nlk
