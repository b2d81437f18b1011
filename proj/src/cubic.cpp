#include "splinedft/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "splinedft/errors.hpp"
#include "splinedft/numerics.hpp"

namespace splinedft {

template <class R>
CubicSpline<R>::CubicSpline(const SampleGrid<R>& samples, CubicBoundary kind, double tolerance)
    : grid_(samples), kind_(kind) {
    const int n = grid_.n();
    if (kind == CubicBoundary::natural && n < 2)
        throw TooFewPoints("natural cubic spline needs N >= 2, got " + std::to_string(n));
    if (kind == CubicBoundary::not_a_knot && n < 3)
        throw TooFewPoints("not-a-knot cubic spline needs N >= 3, got " + std::to_string(n));
    const R h = grid_.delta_t();
    const auto y = grid_.values();

    // Interior rows: M_{i-1} + 4 M_i + M_{i+1} = 6 (y_{i+1} - 2 y_i + y_{i-1}) / h^2.
    const std::size_t m = static_cast<std::size_t>(n - 1);
    std::vector<R> sub(m - 1, R(1)), diag(m, R(4)), sup(m - 1, R(1)), rhs(m);
    for (std::size_t i = 0; i < m; ++i) rhs[i] = R(6) * (y[i + 2] - R(2) * y[i + 1] + y[i]) / (h * h);
    if (kind == CubicBoundary::not_a_knot) {
        // M_0 = 2 M_1 - M_2 and M_N = 2 M_{N-1} - M_{N-2}.
        diag.front() = R(6);
        diag.back() = R(6);
        if (m > 1) {
            sup.front() = R(0);
            sub.back() = R(0);
        }
    }
    const std::vector<R> inner = tridiag_solve<R>(sub, diag, sup, rhs, tolerance);

    m_.assign(static_cast<std::size_t>(n) + 1, R(0));
    for (std::size_t i = 0; i < m; ++i) m_[i + 1] = inner[i];
    if (kind == CubicBoundary::not_a_knot) {
        m_[0] = R(2) * m_[1] - m_[2];
        m_[n] = R(2) * m_[n - 1] - m_[n - 2];
    }

    coeff_.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const R slope = (y[j + 1] - y[j]) / h - h * (R(2) * m_[j] + m_[j + 1]) / R(6);
        coeff_[j] = {y[j], slope, m_[j], (m_[j + 1] - m_[j]) / h};
    }
}

template <class R>
R CubicSpline<R>::evaluate_piece(int j, const R& dx, int beta) const {
    if (beta < 0 || beta > 3) throw BadOrder("cubic spline: derivative order must be in [0, 3]");
    if (j < 0 || j >= n()) throw OutOfDomain("cubic spline: piece index out of range");
    const auto& c = coeff_[j];
    R s = c[3];
    for (int mu = 2 - beta; mu >= 0; --mu) s = c[mu + beta] + dx / R(mu + 1) * s;
    return s;
}

template <class R>
R CubicSpline<R>::eval(const R& t, int beta) const {
    using std::floor;
    const R lo = grid_.t_start();
    const R hi = lo + grid_.period();
    if (!(t >= lo) || !(t <= hi)) throw OutOfDomain("cubic spline: t outside the sample interval");
    if (beta < 0 || beta > 3) throw BadOrder("cubic spline: derivative order must be in [0, 3]");
    const R idx = floor((t - lo) / grid_.delta_t());
    long long j = 0;
    if constexpr (is_high_real_v<R>) {
        j = idx.template convert_to<long long>();
    } else {
        j = static_cast<long long>(idx);
    }
    j = std::clamp<long long>(j, 0, n() - 1);
    return evaluate_piece(static_cast<int>(j), t - grid_.node(static_cast<int>(j)), beta);
}

template <class R>
CubicSpline<R> cubic_natural(const SampleGrid<R>& samples) {
    return CubicSpline<R>(samples, CubicBoundary::natural);
}

template <class R>
CubicSpline<R> cubic_not_a_knot(const SampleGrid<R>& samples) {
    return CubicSpline<R>(samples, CubicBoundary::not_a_knot);
}

template class CubicSpline<double>;
template class CubicSpline<HighReal>;
template CubicSpline<double> cubic_natural<double>(const SampleGrid<double>&);
template CubicSpline<HighReal> cubic_natural<HighReal>(const SampleGrid<HighReal>&);
template CubicSpline<double> cubic_not_a_knot<double>(const SampleGrid<double>&);
template CubicSpline<HighReal> cubic_not_a_knot<HighReal>(const SampleGrid<HighReal>&);

}  // namespace splinedft
