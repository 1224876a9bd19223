#pragma once

#include <cmath>
#include <string>

#include "nlk/errors.hpp"

namespace nlk {

/// The parameter triple (d, p, s) with the derived ground-state exponent
/// alpha = (p*s - 1)/p. Every operation in the toolkit is gated on one of
/// these.
struct FracParams {
    int d = 1;
    double p = 2.0;
    double s = 0.5;
    double alpha = 0.0;

    FracParams() : alpha((p * s - 1.0) / p) {}
    FracParams(int d_, double p_, double s_) : d(d_), p(p_), s(s_), alpha((p_ * s_ - 1.0) / p_) {
        if (d < 1) throw InvalidParameter("dimension d must be >= 1");
        if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidParameter("exponent p must be in [1, inf)");
        if (!(s > 0.0 && s < 1.0)) throw InvalidParameter("order s must be in (0, 1)");
    }

    double ps() const { return p * s; }

    bool ps_is_one() const { return p * s == 1.0; }

    /// Hardy inequality and the extension operator need p*s != 1.
    void require_ps_not_one(const std::string& who) const {
        if (ps_is_one()) throw ExcludedParameter(who + ": ps = 1 excluded");
    }

    /// The Fourier-side machinery is p = 2 only.
    void require_p2(const std::string& who) const {
        if (p != 2.0) throw ExcludedParameter(who + ": requires p = 2");
    }

    /// The half-space Korn statement additionally needs s != 1/2.
    void require_korn(const std::string& who) const {
        require_p2(who);
        if (s == 0.5) throw ExcludedParameter(who + ": s = 1/2 excluded");
    }
};

} // namespace nlk
