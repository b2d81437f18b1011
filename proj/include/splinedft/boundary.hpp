#ifndef SPLINEDFT_BOUNDARY_HPP
#define SPLINEDFT_BOUNDARY_HPP

#include <span>
#include <vector>

#include "splinedft/grid.hpp"
#include "splinedft/kernel.hpp"
#include "splinedft/numerics.hpp"
#include "splinedft/precision.hpp"

namespace splinedft {

/// B = (b_0, ..., b_{theta-1}) with b_mu = g^(mu)(T) - g^(mu)(0).
template <class R>
class BoundaryVector {
public:
    explicit BoundaryVector(std::vector<R> b) : b_(std::move(b)) {
        if (b_.empty()) throw LengthMismatch("boundary vector needs at least b_0");
        for (const auto& v : b_)
            if (!is_finite(v)) throw DomainError("boundary vector: non-finite entry");
    }

    int theta() const { return static_cast<int>(b_.size()); }
    std::span<const R> b() const { return b_; }
    const R& operator[](std::size_t i) const { return b_[i]; }
    /// The estimated part X = (b_1, ..., b_{theta-1}).
    std::span<const R> x() const { return std::span<const R>(b_).subspan(1); }

private:
    std::vector<R> b_;
};

/// Highest-derivative tables: g^(theta)_j = delta_j . B - sigma_j.
template <class R>
struct Method1Tables {
    std::vector<ComplexSequence<R>> delta;  // delta[nu][j], nu = 0..theta-1
    ComplexSequence<R> sigma;               // sigma[j]
    DenseMatrix<R> gamma;                   // (theta-1) x (theta-1)
    ComplexSequence<R> rhs;                 // Sigma, length theta-1
};

/// Consecutive-degree tables. Index a = alpha - 1 is the derivative order
/// minus one; G^(alpha)_j = psi[a][.][j] . B - phi[a][j].
template <class R>
struct Method2Tables {
    std::vector<std::vector<R>> zeta;                   // zeta[a][b] = zeta(a+1, b+1)
    std::vector<std::vector<ComplexSequence<R>>> delta;  // rows of M_theta^{-1}: delta[a][nu][j]
    std::vector<std::vector<ComplexSequence<R>>> omega;  // rows of M_{theta-1}^{-1}, zero padded
    std::vector<ComplexSequence<R>> sigma;              // sigma[a][j]
    std::vector<ComplexSequence<R>> eta;                // eta[a][j]
    std::vector<std::vector<ComplexSequence<R>>> psi;   // delta - omega
    std::vector<ComplexSequence<R>> phi;                // sigma - eta
    std::vector<std::vector<ComplexSequence<R>>> rho;   // rho[n-1][j][a], n = 1..theta-1
    DenseMatrix<R> lambda;                              // (theta-1) x (theta-1)
    ComplexSequence<R> pi;                              // length theta-1
};

template <class R>
Method1Tables<R> method1_tables(const SampleGrid<R>& samples, int theta, const PrecisionContext& ctx);

template <class R>
Method2Tables<R> method2_tables(const SampleGrid<R>& samples, int theta, const PrecisionContext& ctx);

/// Minimises sum_j (g^(theta)_{j,theta})^2 over X.
template <class R>
BoundaryVector<R> method1_boundary(const SampleGrid<R>& samples, int theta, const PrecisionContext& ctx);

/// Minimises ||g_theta - g_{theta-1}||^2_{L2} over X. N must be odd.
template <class R>
BoundaryVector<R> method2_boundary(const SampleGrid<R>& samples, int theta, const PrecisionContext& ctx);

template <class R>
R objective_theta_energy(const SampleGrid<R>& samples, int theta, const BoundaryVector<R>& b,
                         const PrecisionContext& ctx);

template <class R>
R objective_consecutive(const SampleGrid<R>& samples, int theta, const BoundaryVector<R>& b,
                        const PrecisionContext& ctx);

/// (b_0, 0, ..., 0).
template <class R>
BoundaryVector<R> zero_boundary(const SampleGrid<R>& samples, int theta);

/// (b_0, differences...); differences holds b_1..b_{theta-1}.
template <class R>
BoundaryVector<R> exact_boundary(const SampleGrid<R>& samples, int theta, std::span<const R> differences);

/// zeta(alpha, beta) = dt^(alpha+beta+1) / ((alpha+beta+1) alpha! beta!), one-based.
template <class R>
R zeta(int alpha, int beta, const R& dt);

}  // namespace splinedft

#endif  // SPLINEDFT_BOUNDARY_HPP
