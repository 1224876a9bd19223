#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlk/constants.hpp"
#include "nlk/field.hpp"
#include "nlk/quad.hpp"

namespace nlk {

/// Structured pass/fail record of one inequality check. The pass rule is
/// lhs.value <= constant_used * rhs.value + 3 * combined_std_error, with
/// margin reported in combined-sigma units.
struct VerificationReport {
    std::string check_name;
    FracParams params;
    std::string field_id;
    Estimate lhs, rhs;
    double constant_used = 1.0;
    double margin = 0.0;
    bool passed = false;
    std::map<std::string, double> details;

    nlohmann::json to_json() const;
};

/// Applies the 3-sigma pass rule and fills margin/passed.
void finalize_report(VerificationReport& rep);

std::string reports_to_jsonl(const std::vector<VerificationReport>& reports);
std::string reports_to_csv(const std::vector<VerificationReport>& reports);

/// Hardy: int |u|^p x_d^{-ps} <= kappa * |u|^p_S with
/// kappa = max(1, 2^{p/2-1}) / (sigma * min(eta1, eta2)); also runs the
/// sharper componentwise form
/// int x_d^{-ps} (eta1 |u_d|^p + eta2 |u'|^p) <= (1/sigma) |u|^p_S.
VerificationReport hardy_check(const FieldSpec& u, const FracParams& params,
                               const QuadConfig& cfg);

/// Remainder form for p >= 2:
/// |u|^p_S - kappa_rem * int |u|^p x_d^{-ps} >= c_p * R[u], where R is the
/// ground-state-weighted double integral. kappa_rem defaults to
/// 2 sigma min(eta) for p = 2 and 2^{1-p/2} sigma min(eta) for p > 2;
/// pass an explicit override to probe other readings.
VerificationReport hardy_remainder_check(const FieldSpec& u, const FracParams& params,
                                         const QuadConfig& cfg, double kappa_rem_override = 0.0);

/// Half-space Korn: records the ratio |u|^p_W / |u|^p_S and asserts it is
/// finite (p = 2, s != 1/2).
VerificationReport korn_halfspace_check(const FieldSpec& u, const FracParams& params,
                                        const QuadConfig& cfg);

/// Whole-space Korn: the measured W/S ratio must lie inside the spectral
/// band [kappa/lmax, kappa/lmin].
VerificationReport korn_wholespace_check(const FieldSpec& u, const FracParams& params,
                                         const QuadConfig& cfg);

/// Scaling: |F_lambda(u)|_S <= lambda^{(d+ps-2)/p} |u|_S on the seminorm
/// scale, plus the companion Hardy bound on F_lambda(u) - u (constant
/// recorded, not asserted).
VerificationReport scaling_check(const FieldSpec& u, double lambda, const FracParams& params,
                                 const QuadConfig& cfg);

/// Ground-state lemma: the epsilon-excised kernel integral converges to
/// -sigma x_d^{-ps} w(x)^{p-1} f(v). The epsilon sequence should decrease;
/// see default_eps_sequence.
VerificationReport ground_state_limit_check(const FracParams& params, double x_d, const Vec& v,
                                            const std::vector<double>& eps_sequence);

/// 2^{-k} sequence deep enough that the excision error (~ eps^{p(1-s)})
/// drops below ~1e-5 of the limit.
std::vector<double> default_eps_sequence(const FracParams& params);

/// Grid + random verification of the elementary inequalities behind the
/// Hardy proof: |a-t|^p >= (1-t)^{p-1}(|a|^p - t) on [0,1], the refined
/// c_p form for p >= 2, and nonnegativity of the ground-state functional
/// Phi[u](x, y) on random suite fields and point pairs.
VerificationReport pointwise_inequalities(double p, std::int64_t n_samples, std::uint64_t seed);

} // namespace nlk
