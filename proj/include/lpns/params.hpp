#pragma once

#include <sstream>
#include <stdexcept>

namespace lpns {

/// s_p = 2/p - 1/2, the vertical-regularity budget of the anisotropic
/// criterion spaces.
inline double s_index(double p) { return 2.0 / p - 0.5; }

/// Exponent of the negative-regularity Besov criterion space: 3/q + 2/p - 2.
inline double qp_exponent(double q, double p) { return 3.0 / q + 2.0 / p - 2.0; }

struct PAlphaParams {
    double p;
    double alpha;
    double s_p;    // 2/p - 1/2
    double s_val;  // s_p - alpha, the vertical index of the criterion space
};

/// Admissible (p, alpha) for the anisotropic criterion: p in [2,4],
/// alpha in [0, 2/p - 1/2]. Violations name the constraint.
inline PAlphaParams validate_p_alpha(double p, double alpha) {
    if (!(p >= 2.0 && p <= 4.0)) {
        std::ostringstream msg;
        msg << "p = " << p << " outside the admissible range [2, 4]";
        throw std::invalid_argument(msg.str());
    }
    const double sp = s_index(p);
    if (!(alpha >= 0.0 && alpha <= sp)) {
        std::ostringstream msg;
        msg << "alpha = " << alpha << " outside the admissible range [0, 2/p - 1/2] = [0, " << sp
            << "] for p = " << p;
        throw std::invalid_argument(msg.str());
    }
    return {p, alpha, sp, sp - alpha};
}

struct QpParams {
    double q;
    double p;
    double exponent; // 3/q + 2/p - 2, in (-1, 0)
};

/// Admissible (q, p) for the isotropic criterion: q in [3, inf),
/// 3/q + 2/p in (1, 2). Violations name the constraint.
inline QpParams validate_qp(double q, double p) {
    if (!(q >= 3.0)) {
        std::ostringstream msg;
        msg << "q = " << q << " outside the admissible range [3, inf)";
        throw std::invalid_argument(msg.str());
    }
    const double sum = 3.0 / q + 2.0 / p;
    if (!(sum > 1.0 && sum < 2.0)) {
        std::ostringstream msg;
        msg << "3/q + 2/p = " << sum << " outside the admissible open interval (1, 2) for (q, p) = ("
            << q << ", " << p << ")";
        throw std::invalid_argument(msg.str());
    }
    return {q, p, qp_exponent(q, p)};
}

/// E > 0 for the log-weighted norms.
inline double validate_log_weight(double E) {
    if (!(E > 0.0)) {
        std::ostringstream msg;
        msg << "E = " << E << " must be positive";
        throw std::invalid_argument(msg.str());
    }
    return E;
}

} // namespace lpns
