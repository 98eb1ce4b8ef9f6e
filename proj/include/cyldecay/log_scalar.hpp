#pragma once

#include <cmath>
#include <limits>

namespace cyldecay {

/// Signed scalar stored as (sign, log of magnitude).
///
/// Amplitudes in the constructions range over e^{±10^9} and beyond, far
/// outside native double range; every amplitude in the library lives here.
/// Zero is canonically sign = 0 with logmag = -inf.
struct LogScalar {
    int sign = 0;
    double logmag = -std::numeric_limits<double>::infinity();

    static LogScalar zero() { return {}; }
    static LogScalar one() { return {1, 0.0}; }

    static LogScalar from_native(double v) {
        if (v == 0.0) return zero();
        return {v > 0 ? 1 : -1, std::log(std::abs(v))};
    }
    /// Signed magnitude from an explicit exponent.
    static LogScalar from_log(int sign, double logmag) {
        if (sign == 0 || logmag == -std::numeric_limits<double>::infinity()) return zero();
        return {sign, logmag};
    }

    double to_native() const {
        if (sign == 0) return 0.0;
        return static_cast<double>(sign) * std::exp(logmag);
    }

    bool is_zero() const { return sign == 0; }
    LogScalar negated() const { return {-sign, logmag}; }
    LogScalar abs() const { return {sign == 0 ? 0 : 1, logmag}; }
};

/// Product in log domain: exponents add, signs multiply.
inline LogScalar log_mul(const LogScalar& a, const LogScalar& b) {
    if (a.sign == 0 || b.sign == 0) return LogScalar::zero();
    return {a.sign * b.sign, a.logmag + b.logmag};
}

inline LogScalar log_mul(const LogScalar& a, double native) {
    return log_mul(a, LogScalar::from_native(native));
}

/// Sum in log domain via the max-shift formula.
///
/// Exact cancellation is returned as zero only when the magnitudes are
/// bit-equal; otherwise the stable difference log(-expm1(d)) applies.
inline LogScalar log_add(const LogScalar& a, const LogScalar& b) {
    if (a.sign == 0) return b;
    if (b.sign == 0) return a;
    const LogScalar& big = (a.logmag >= b.logmag) ? a : b;
    const LogScalar& small = (a.logmag >= b.logmag) ? b : a;
    const double d = small.logmag - big.logmag; // <= 0
    if (a.sign == b.sign) return {a.sign, big.logmag + std::log1p(std::exp(d))};
    if (a.logmag == b.logmag) return LogScalar::zero();
    return {big.sign, big.logmag + std::log(-std::expm1(d))};
}

inline LogScalar log_sub(const LogScalar& a, const LogScalar& b) { return log_add(a, b.negated()); }

/// Compare |a| < |b|.
inline bool log_abs_less(const LogScalar& a, const LogScalar& b) {
    if (b.sign == 0) return false;
    if (a.sign == 0) return true;
    return a.logmag < b.logmag;
}

} // namespace cyldecay
