#ifndef SPLINEDFT_FOURIER_HPP
#define SPLINEDFT_FOURIER_HPP

#include <span>
#include <string>
#include <vector>

#include "splinedft/complex.hpp"
#include "splinedft/numerics.hpp"
#include "splinedft/spline.hpp"

namespace splinedft {

/// int_{t_0}^{t_N} s(t) exp(-i omega t) dt, exact for the piecewise polynomial.
template <class R>
ComplexSequence<R> spline_fourier_transform(const SplineFunction<R>& s, std::span<const R> omegas);

/// Closed-form transform of cos(60t) e^{-2t} truncated to [0, 81.92].
template <class R>
Complex<R> analytic_ft_demo(const R& omega);

struct FtDemoConfig {
    int n = 8192;
    std::vector<int> thetas{3, 5, 7, 9, 11};
    std::vector<std::string> bcs{"zero", "method1", "exact"};
    /// Angular frequencies; the default is 0..700 in steps of 0.5, which
    /// covers the signal frequency and the sampling frequency 2 pi N / T.
    std::vector<double> omegas;
    int lambda = 8;
    int digits = PrecisionContext::kBinary64Digits;

    static std::vector<double> default_omegas();
};

struct FtDemoResult {
    int theta = 0;
    std::string bc;
    std::string status;               // "ok" or the reason the case was not run
    double ft_max_error = 0;          // max over the omega grid of |FT_s - FT_f|
    double time_max_error = 0;        // max |f - s| on the lambda refinement
    std::vector<double> omega;
    std::vector<double> ft_error;     // |FT_s - FT_f| per omega
    std::vector<double> t;
    std::vector<double> difference;   // f - s on the refinement

    bool ok() const { return status == "ok"; }
};

/// Every (theta, bc) pair in config order. Even theta is rejected because
/// N = 8192 is even.
std::vector<FtDemoResult> run_ft_demo(const FtDemoConfig& cfg);

}  // namespace splinedft

#endif  // SPLINEDFT_FOURIER_HPP
