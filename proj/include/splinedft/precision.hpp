#ifndef SPLINEDFT_PRECISION_HPP
#define SPLINEDFT_PRECISION_HPP

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <type_traits>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace splinedft {

/// Software high-precision real. Its working precision is the MPFR default
/// precision, which PrecisionScope sets for the duration of a computation.
using HighReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                               boost::multiprecision::et_off>;

using BigInt = boost::multiprecision::cpp_int;

/// Working precision of a computation.
///
/// 15 significant digits selects the native binary64 backend; anything above
/// selects HighReal with that many decimal digits. The equality tolerance used
/// by solvers and invariant checks is 10^(4 - digits).
class PrecisionContext {
public:
    static constexpr int kBinary64Digits = 15;

    explicit PrecisionContext(int digits = kBinary64Digits);

    int digits() const { return digits_; }
    double tolerance() const { return tolerance_; }
    bool high_precision() const { return digits_ > kBinary64Digits; }

    friend bool operator==(const PrecisionContext&, const PrecisionContext&) = default;

private:
    int digits_;
    double tolerance_;
};

/// Sets the HighReal default precision for its lifetime and restores the
/// previous value on exit. The MPFR default precision is process-wide, so
/// concurrent computations must agree on the number of digits.
class PrecisionScope {
public:
    explicit PrecisionScope(const PrecisionContext& ctx);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned previous_;
};

template <class R>
inline constexpr bool is_high_real_v = std::is_same_v<R, HighReal>;

template <class R>
R pi_value() {
    if constexpr (is_high_real_v<R>) {
        return boost::math::constants::pi<HighReal>();
    } else {
        return std::numbers::pi_v<R>;
    }
}

template <class R>
double to_double(const R& x) {
    if constexpr (is_high_real_v<R>) {
        return x.template convert_to<double>();
    } else {
        return static_cast<double>(x);
    }
}

template <class R>
R from_bigint(const BigInt& v) {
    if constexpr (is_high_real_v<R>) {
        return HighReal(v.str());
    } else {
        return v.template convert_to<R>();
    }
}

/// Exact ratio num/den evaluated at the working precision.
template <class R>
R rational(long long num, long long den) {
    return R(num) / R(den);
}

/// Shortest decimal that reads back to the same value at the active precision.
template <class R>
std::string to_decimal(const R& x) {
    if constexpr (is_high_real_v<R>) {
        return x.str(0, std::ios_base::scientific);
    } else {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", static_cast<double>(x));
        return buf;
    }
}

template <class R>
R from_decimal(const std::string& s) {
    if constexpr (is_high_real_v<R>) {
        return HighReal(s);
    } else {
        return std::stod(s);
    }
}

template <class R>
bool is_finite(const R& x) {
    using std::isfinite;
    using boost::multiprecision::isfinite;
    return isfinite(x);
}

/// (dt^p) / p! without forming either factor separately.
template <class R>
R taylor_weight(const R& dt, int p) {
    R w(1);
    for (int i = 1; i <= p; ++i) {
        w *= dt;
        w /= R(i);
    }
    return w;
}

}  // namespace splinedft

#endif  // SPLINEDFT_PRECISION_HPP
