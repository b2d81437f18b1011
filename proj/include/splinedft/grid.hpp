#ifndef SPLINEDFT_GRID_HPP
#define SPLINEDFT_GRID_HPP

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "splinedft/errors.hpp"
#include "splinedft/precision.hpp"

namespace splinedft {

/// N+1 equispaced samples g_0..g_N of a function on [t_start, t_start + T].
template <class R>
class SampleGrid {
public:
    SampleGrid(R period, std::vector<R> values, R t_start = R(0))
        : t_start_(std::move(t_start)), period_(std::move(period)), values_(std::move(values)) {
        if (values_.size() < 2) throw TooFewPoints("sample grid needs at least 2 samples");
        if (!(period_ > R(0)) || !is_finite(period_)) throw DomainError("sample grid: T must be positive");
        if (!is_finite(t_start_)) throw DomainError("sample grid: t_start must be finite");
        for (std::size_t j = 0; j < values_.size(); ++j)
            if (!is_finite(values_[j])) throw DomainError("sample grid: value " + std::to_string(j) + " is not finite");
    }

    /// Samples f at t_j = t_start + j T / N, j = 0..N.
    static SampleGrid sample(const std::function<R(const R&)>& f, R period, int n, R t_start = R(0)) {
        if (n < 1) throw TooFewPoints("sample grid: N must be >= 1");
        std::vector<R> v;
        v.reserve(static_cast<std::size_t>(n) + 1);
        for (int j = 0; j <= n; ++j) v.push_back(f(t_start + period * R(j) / R(n)));
        return SampleGrid(std::move(period), std::move(v), std::move(t_start));
    }

    const R& t_start() const { return t_start_; }
    const R& period() const { return period_; }
    int n() const { return static_cast<int>(values_.size()) - 1; }
    R delta_t() const { return period_ / R(n()); }
    R node(int j) const { return t_start_ + period_ * R(j) / R(n()); }
    std::span<const R> values() const { return values_; }
    const R& operator[](std::size_t j) const { return values_[j]; }
    /// b_0 = g_N - g_0.
    R b0() const { return values_.back() - values_.front(); }

private:
    R t_start_;
    R period_;
    std::vector<R> values_;
};

}  // namespace splinedft

#endif  // SPLINEDFT_GRID_HPP
