#ifndef SPLINEDFT_KERNEL_HPP
#define SPLINEDFT_KERNEL_HPP

#include <cstddef>
#include <vector>

#include "splinedft/numerics.hpp"
#include "splinedft/precision.hpp"

namespace splinedft {

/// Eulerian number A_{theta,q} from its alternating binomial sum, exact.
/// Rows are cached per theta; the cache is internally synchronised.
BigInt eulerian(int theta, int q);

/// A_{theta,0..theta-1}; for theta = 0 the single entry 1.
const std::vector<BigInt>& eulerian_row(int theta);

/// Degree, number of subintervals and step of one spectral kernel. theta and
/// n may not both be even.
template <class R>
class KernelConfig {
public:
    KernelConfig(int theta, int n, R delta_t);

    int theta() const { return theta_; }
    int n() const { return n_; }
    const R& delta_t() const { return delta_t_; }

private:
    int theta_;
    int n_;
    R delta_t_;
};

/// Per-frequency machinery for the system M_{theta,k} F_{theta,k} = B + C_k.
///
/// (M_{theta,k})_{mu,nu} = J_{nu-mu+1,k} for nu - mu + 1 >= 0, else 0, with
/// J_{0,k} = w_k - 1 and J_{p,k} = dt^p / p! * w_k, w_k = exp(-i 2 pi k / N).
/// The determinant table det(M_{t,k}) for t = 0..theta uses the Eulerian
/// closed form. Indices below are zero-based: row a and column v of an
/// order-t matrix correspond to mu = a + 1, nu = v + 1.
template <class R>
class SpectralKernel {
public:
    SpectralKernel(KernelConfig<R> config, const PrecisionContext& ctx);

    const KernelConfig<R>& config() const { return config_; }
    int theta() const { return config_.theta(); }
    int n() const { return config_.n(); }
    double tolerance() const { return tolerance_; }

    /// w_k^m = exp(-i 2 pi k m / N), exact index reduction.
    const Complex<R>& unit(std::size_t k, std::size_t m = 1) const;

    Complex<R> j_coeff(int p, std::size_t k) const;
    /// det(M_{order,k}) for 0 <= order <= theta.
    const Complex<R>& det(int order, std::size_t k) const;

    DenseMatrix<R> assemble(int order, std::size_t k) const;

    /// Closed-form entry (a, v) of M_{order,k}^{-1}, valid for v <= a.
    Complex<R> inverse_closed_form(int order, std::size_t k, int a, int v) const;
    /// M_{order,k}^{-1}: entries with v <= a from the closed form, entries
    /// above the diagonal from an LU inverse of the equilibrated matrix.
    DenseMatrix<R> inverse(int order, std::size_t k) const;
    /// Entire inverse by LU of the equilibrated matrix.
    DenseMatrix<R> inverse_by_lu(int order, std::size_t k) const;
    std::vector<Complex<R>> inverse_row(int order, std::size_t k, int a) const;

    /// Solves M_{order,k} f = rhs by LU of the equilibrated system
    /// (row mu scaled by dt^(mu-1), unknown nu by dt^nu).
    ComplexSequence<R> solve(int order, std::size_t k, std::span<const Complex<R>> rhs) const;

private:
    DenseMatrix<R> equilibrated(int order, std::size_t k) const;
    void check_order(int order) const;
    void check_nonsingular(int order, std::size_t k) const;

    KernelConfig<R> config_;
    double tolerance_;
    TwiddleTable<R> twiddle_;
    std::vector<R> weight_;                       // dt^p / p!, p = 0..theta+1
    std::vector<R> inverse_factorial_;            // 1 / p!
    std::vector<std::vector<Complex<R>>> det_;    // det_[order][k]
    std::vector<R> dt_power_;                     // dt^p, p = 0..theta
};

template <class R>
Complex<R> j_coeff(int p, int k, const KernelConfig<R>& cfg);

template <class R>
Complex<R> det_m(int theta_prime, int k, const KernelConfig<R>& cfg);

template <class R>
DenseMatrix<R> assemble_m(int theta, int k, const KernelConfig<R>& cfg);

/// Row alpha (one-based, as in the closed form) of M_{theta,k}^{-1}.
template <class R>
std::vector<Complex<R>> inv_m_row(int theta, int k, int alpha, const KernelConfig<R>& cfg,
                                  const PrecisionContext& ctx = PrecisionContext());

}  // namespace splinedft

#endif  // SPLINEDFT_KERNEL_HPP
