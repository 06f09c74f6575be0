#ifndef SUBMATROID_NUMERIC_HPP_
#define SUBMATROID_NUMERIC_HPP_

#include <cmath>
#include <cstdint>
#include <string>

#include "submatroid/errors.hpp"

namespace submatroid {

/// Instance-level comparison tolerance. Relative comparison with an absolute
/// fallback for values near zero, so geometric instance values at small
/// magnitudes still register as ties.
struct Tolerance {
    double relative = 1e-9;
    double absolute = 1e-12;

    double margin(double a, double b) const {
        const double scale = std::max(std::fabs(a), std::fabs(b));
        return std::max(absolute, relative * scale);
    }

    /// a and b are indistinguishable at this tolerance.
    bool close(double a, double b) const { return std::fabs(a - b) <= margin(a, b); }

    /// a >= b up to tolerance.
    bool ge(double a, double b) const { return a >= b - margin(a, b); }

    bool is_zero(double a) const { return std::fabs(a) <= absolute; }
};

/// Nonnegative real extended with a dedicated infinity, used for
/// discriminants where an empty or all-zero rival set yields an infinite
/// ratio. Deliberately not an IEEE sentinel so that 1/inf == 0 holds exactly
/// in the guarantee formulas.
class ExtReal {
public:
    constexpr ExtReal() = default;
    constexpr explicit ExtReal(double v) : finite_(true), value_(v) {}

    static constexpr ExtReal infinity() { return ExtReal(Inf{}); }

    constexpr bool is_finite() const { return finite_; }
    constexpr bool is_infinite() const { return !finite_; }

    /// Finite value; calling this on infinity is a precondition violation.
    double value() const {
        if (!finite_) throw InputError("ExtReal: value() called on infinity");
        return value_;
    }

    /// 1/x with the convention 1/inf == 0.
    constexpr double reciprocal_or_zero() const { return finite_ ? 1.0 / value_ : 0.0; }

    friend constexpr bool operator==(const ExtReal& a, const ExtReal& b) {
        return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
    }
    friend constexpr bool operator<(const ExtReal& a, const ExtReal& b) {
        if (a.finite_ && b.finite_) return a.value_ < b.value_;
        return a.finite_ && !b.finite_;
    }

    std::string str() const { return finite_ ? std::to_string(value_) : "inf"; }

private:
    struct Inf {};
    constexpr explicit ExtReal(Inf) : finite_(false) {}

    bool finite_ = true;
    double value_ = 0.0;
};

} // namespace submatroid

#endif
