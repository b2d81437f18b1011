#ifndef SPLINEDFT_COMPLEX_HPP
#define SPLINEDFT_COMPLEX_HPP

#include <cmath>

#include "splinedft/precision.hpp"

namespace splinedft {

/// Complex number as an explicit (re, im) pair in the working precision.
/// std::complex is unspecified for non-arithmetic value types, so the
/// high-precision backend cannot use it.
template <class R>
struct Complex {
    R re{0};
    R im{0};

    Complex() = default;
    Complex(R real) : re(std::move(real)) {}  // NOLINT(google-explicit-constructor)
    Complex(R real, R imag) : re(std::move(real)), im(std::move(imag)) {}

    Complex& operator+=(const Complex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Complex& operator*=(const Complex& o) {
        R r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    Complex& operator*=(const R& s) {
        re *= s;
        im *= s;
        return *this;
    }
    Complex& operator/=(const R& s) {
        re /= s;
        im /= s;
        return *this;
    }
    Complex& operator/=(const Complex& o) {
        // Smith's algorithm keeps intermediate magnitudes bounded.
        using std::abs;
        if (abs(o.re) >= abs(o.im)) {
            R ratio = o.im / o.re;
            R den = o.re + o.im * ratio;
            R r = (re + im * ratio) / den;
            im = (im - re * ratio) / den;
            re = std::move(r);
        } else {
            R ratio = o.re / o.im;
            R den = o.re * ratio + o.im;
            R r = (re * ratio + im) / den;
            im = (im * ratio - re) / den;
            re = std::move(r);
        }
        return *this;
    }

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator*(Complex a, const R& s) { return a *= s; }
    friend Complex operator*(const R& s, Complex a) { return a *= s; }
    friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
    friend Complex operator/(Complex a, const R& s) { return a /= s; }
    friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
};

template <class R>
Complex<R> conj(const Complex<R>& z) {
    return {z.re, -z.im};
}

/// Squared modulus.
template <class R>
R norm(const Complex<R>& z) {
    return z.re * z.re + z.im * z.im;
}

template <class R>
R abs(const Complex<R>& z) {
    using std::abs;
    using std::sqrt;
    R a = abs(z.re);
    R b = abs(z.im);
    if (a < b) std::swap(a, b);
    if (a == R(0)) return a;
    R q = b / a;
    return a * sqrt(R(1) + q * q);
}

/// exp(i * angle).
template <class R>
Complex<R> unit_phase(const R& angle) {
    using std::cos;
    using std::sin;
    return {cos(angle), sin(angle)};
}

template <class R>
Complex<R> exp(const Complex<R>& z) {
    using std::exp;
    R m = exp(z.re);
    Complex<R> p = unit_phase(z.im);
    return {m * p.re, m * p.im};
}

/// z^n for n >= 0 by repeated squaring.
template <class R>
Complex<R> ipow(Complex<R> z, unsigned n) {
    Complex<R> r(R(1), R(0));
    while (n != 0) {
        if (n & 1U) r *= z;
        z *= z;
        n >>= 1U;
    }
    return r;
}

}  // namespace splinedft

#endif  // SPLINEDFT_COMPLEX_HPP
