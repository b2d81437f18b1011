#ifndef SPLINEDFT_SPLINE_HPP
#define SPLINEDFT_SPLINE_HPP

#include <span>
#include <string>
#include <vector>

#include "splinedft/boundary.hpp"
#include "splinedft/grid.hpp"
#include "splinedft/precision.hpp"

namespace splinedft {

/// Piecewise Taylor spline
///   [g_theta]_j(t) = sum_{mu=0}^{theta} (t - t_j)^mu / mu! * deriv[mu][j]
/// on [t_j, t_{j+1}], j = 0..N-1. The last piece is also used at t = T.
template <class R>
class SplineFunction {
public:
    SplineFunction(int theta, SampleGrid<R> grid, std::vector<std::vector<R>> deriv);

    int theta() const { return theta_; }
    const SampleGrid<R>& grid() const { return grid_; }
    int n() const { return grid_.n(); }
    const std::vector<std::vector<R>>& deriv() const { return deriv_; }
    const R& deriv(int mu, int j) const { return deriv_[mu][j]; }

    R t_start() const { return grid_.t_start(); }
    R t_end() const { return grid_.t_start() + grid_.period(); }

    /// beta-th derivative at t. Throws OutOfDomain outside [0, T] and BadOrder
    /// when beta > theta.
    R eval(const R& t, int beta = 0) const;
    /// beta-th derivative of piece j at offset dx from t_j.
    R evaluate_piece(int j, const R& dx, int beta = 0) const;
    /// Exact integral over [a, b].
    R integrate(const R& a, const R& b) const;

private:
    int locate(const R& t) const;
    R piece_antiderivative(int j, const R& dx) const;

    int theta_;
    SampleGrid<R> grid_;
    std::vector<std::vector<R>> deriv_;
};

/// Solves M_{theta,k} F_{theta,k} = B + C_k for every k and recovers the node
/// derivatives by inverse DFT. Row 0 is copied from the samples.
template <class R>
SplineFunction<R> build_spline(const SampleGrid<R>& samples, int theta, const BoundaryVector<R>& b,
                               const PrecisionContext& ctx);

/// Versioned JSON document {format, version, theta, T, N, t_start, digits,
/// deriv}. Reals are decimal strings that read back exactly at the precision
/// they were written with.
template <class R>
std::string spline_to_json(const SplineFunction<R>& s, const PrecisionContext& ctx);

template <class R>
SplineFunction<R> spline_from_json(const std::string& text);

/// Digits recorded in a serialized spline (15 for binary64 documents).
int spline_json_digits(const std::string& text);

}  // namespace splinedft

#endif  // SPLINEDFT_SPLINE_HPP
