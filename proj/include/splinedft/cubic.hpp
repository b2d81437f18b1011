#ifndef SPLINEDFT_CUBIC_HPP
#define SPLINEDFT_CUBIC_HPP

#include <array>
#include <vector>

#include "splinedft/grid.hpp"
#include "splinedft/precision.hpp"

namespace splinedft {

enum class CubicBoundary { natural, not_a_knot };

/// Classical C^2 cubic spline on the sample grid. Each piece is stored by its
/// derivatives at the left node, like SplineFunction.
template <class R>
class CubicSpline {
public:
    CubicSpline(const SampleGrid<R>& samples, CubicBoundary kind, double tolerance = 1e-11);

    CubicBoundary kind() const { return kind_; }
    const SampleGrid<R>& grid() const { return grid_; }
    int n() const { return grid_.n(); }
    static constexpr int theta() { return 3; }

    /// Second derivatives at the nodes t_0..t_N.
    const std::vector<R>& second_derivatives() const { return m_; }

    R eval(const R& t, int beta = 0) const;
    R evaluate_piece(int j, const R& dx, int beta = 0) const;

private:
    SampleGrid<R> grid_;
    CubicBoundary kind_;
    std::vector<R> m_;
    std::vector<std::array<R, 4>> coeff_;  // derivatives 0..3 at t_j
};

template <class R>
CubicSpline<R> cubic_natural(const SampleGrid<R>& samples);

template <class R>
CubicSpline<R> cubic_not_a_knot(const SampleGrid<R>& samples);

}  // namespace splinedft

#endif  // SPLINEDFT_CUBIC_HPP
