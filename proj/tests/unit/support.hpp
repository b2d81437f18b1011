#ifndef SPLINEDFT_TEST_SUPPORT_HPP
#define SPLINEDFT_TEST_SUPPORT_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "splinedft/complex.hpp"
#include "splinedft/numerics.hpp"

namespace testing {

using splinedft::Complex;
using splinedft::ComplexSequence;

inline std::mt19937_64& rng() {
    static std::mt19937_64 g(20240611);
    return g;
}

inline double uniform(double a = -1, double b = 1) { return std::uniform_real_distribution<double>(a, b)(rng()); }

inline ComplexSequence<double> random_sequence(std::size_t n) {
    ComplexSequence<double> x;
    for (std::size_t i = 0; i < n; ++i) x.emplace_back(uniform(), uniform());
    return x;
}

inline std::vector<double> random_reals(std::size_t n, double a = -1, double b = 1) {
    std::vector<double> x;
    for (std::size_t i = 0; i < n; ++i) x.push_back(uniform(a, b));
    return x;
}

// Literal double loop in long double with std::complex, sign -1 forward.
inline std::vector<std::complex<long double>> direct_dft(const ComplexSequence<double>& x, int sign) {
    const std::size_t n = x.size();
    const long double pi = 3.141592653589793238462643383279502884L;
    std::vector<std::complex<long double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<long double> acc = 0;
        for (std::size_t j = 0; j < n; ++j) {
            const long double ang = sign * 2 * pi * static_cast<long double>((k * j) % n) / static_cast<long double>(n);
            acc += std::complex<long double>(x[j].re, x[j].im) * std::polar(1.0L, ang);
        }
        out[k] = acc;
    }
    return out;
}

inline double max_diff(const ComplexSequence<double>& a, const std::vector<std::complex<long double>>& b) {
    double e = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        e = std::max(e, static_cast<double>(std::abs(std::complex<long double>(a[i].re, a[i].im) - b[i])));
    return e;
}

inline double max_abs(const ComplexSequence<double>& a) {
    double m = 0;
    for (const auto& z : a) m = std::max(m, splinedft::abs(z));
    return m;
}

// Composite Simpson with an even number of intervals.
template <class F>
auto simpson(F&& f, double a, double b, long intervals) {
    const double h = (b - a) / static_cast<double>(intervals);
    auto sum = f(a) + f(b);
    for (long i = 1; i < intervals; ++i) sum = sum + f(a + h * static_cast<double>(i)) * (i % 2 ? 4.0 : 2.0);
    return sum * (h / 3.0);
}

}  // namespace testing

#endif  // SPLINEDFT_TEST_SUPPORT_HPP
