#ifndef SPLINEDFT_NUMERICS_HPP
#define SPLINEDFT_NUMERICS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "splinedft/complex.hpp"
#include "splinedft/errors.hpp"
#include "splinedft/precision.hpp"

namespace splinedft {

template <class R>
using ComplexSequence = std::vector<Complex<R>>;

/// Row-major complex matrix.
template <class R>
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Complex<R>(R(1));
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex<R>& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex<R>& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Complex<R>> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<const Complex<R>> data() const { return data_; }

    ComplexSequence<R> operator*(std::span<const Complex<R>> x) const;
    DenseMatrix operator*(const DenseMatrix& o) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex<R>> data_;
};

/// exp(-i 2 pi m / n), with the angle reduced to the first octant using
/// integer arithmetic so that quarter-period points are exact.
template <class R>
Complex<R> root_of_unity(std::size_t m, std::size_t n);

template <class R>
class TwiddleTable {
public:
    explicit TwiddleTable(std::size_t n);

    std::size_t size() const { return w_.size(); }
    /// exp(-i 2 pi m / n), m taken modulo n.
    const Complex<R>& operator[](std::size_t m) const { return w_[m % w_.size()]; }

private:
    std::vector<Complex<R>> w_;
};

enum class DftAlgorithm {
    automatic,  ///< radix-2 for powers of two, Bluestein for long odd sizes, else direct
    direct,     ///< O(N^2) summation over the twiddle table
    radix2,     ///< requires N a power of two
    bluestein,  ///< chirp-z convolution through a power-of-two FFT
};

/// Reusable transform for one length. Immutable after construction; one plan
/// may be shared by concurrent callers.
template <class R>
class DftPlan {
public:
    explicit DftPlan(std::size_t n, DftAlgorithm algorithm = DftAlgorithm::automatic);

    std::size_t size() const { return n_; }
    DftAlgorithm algorithm() const { return algorithm_; }

    /// X[k] = sum_j x[j] exp(-i 2 pi k j / N)
    ComplexSequence<R> forward(std::span<const Complex<R>> x) const;
    /// x[j] = (1/N) sum_k X[k] exp(+i 2 pi k j / N)
    ComplexSequence<R> inverse(std::span<const Complex<R>> x) const;

private:
    ComplexSequence<R> direct(std::span<const Complex<R>> x) const;
    void radix2_in_place(ComplexSequence<R>& a, const TwiddleTable<R>& w) const;
    ComplexSequence<R> bluestein(std::span<const Complex<R>> x) const;

    std::size_t n_;
    DftAlgorithm algorithm_;
    TwiddleTable<R> twiddle_;
    // Bluestein state: chirp exp(-i pi j^2 / N), padded length, FFT of the
    // conjugate chirp kernel and the padded-length twiddles.
    std::size_t padded_ = 0;
    ComplexSequence<R> chirp_;
    ComplexSequence<R> kernel_hat_;
    std::optional<TwiddleTable<R>> padded_twiddle_;
};

template <class R>
ComplexSequence<R> dft(std::span<const Complex<R>> x, DftAlgorithm algorithm = DftAlgorithm::automatic);

template <class R>
ComplexSequence<R> idft(std::span<const Complex<R>> x, DftAlgorithm algorithm = DftAlgorithm::automatic);

bool is_power_of_two(std::size_t n);

/// Real part of a sequence that must be real. Throws ImaginaryResidue when
/// some |im| exceeds 100 * tolerance * max|z|.
template <class R>
std::vector<R> real_part_checked(std::span<const Complex<R>> z, double tolerance, const char* what);

// Same, with the limit relative to max(input_scale, max |z|) so that results
// which cancel to zero are judged against the size of what produced them.
template <class R>
std::vector<R> real_part_checked(std::span<const Complex<R>> z, const R& input_scale, double tolerance,
                                 const char* what);

template <class R>
R real_part_checked(const Complex<R>& z, const R& scale, double tolerance, const char* what);

/// LU factorisation with partial pivoting. A pivot whose magnitude is at or
/// below tolerance * max|A_ij| raises SingularMatrix.
template <class R>
class LuDecomposition {
public:
    LuDecomposition(DenseMatrix<R> a, double tolerance);

    std::size_t size() const { return lu_.rows(); }
    ComplexSequence<R> solve(std::span<const Complex<R>> b) const;
    Complex<R> determinant() const;
    DenseMatrix<R> inverse() const;
    /// Diagonal of U in elimination order.
    ComplexSequence<R> pivots() const;

private:
    DenseMatrix<R> lu_;
    std::vector<std::size_t> perm_;
    int sign_ = 1;
};

template <class R>
ComplexSequence<R> lu_solve(const DenseMatrix<R>& a, std::span<const Complex<R>> b, double tolerance);

/// Thomas algorithm for a tridiagonal system. sub and sup have n-1 entries.
template <class R>
std::vector<R> tridiag_solve(std::span<const R> sub, std::span<const R> diag, std::span<const R> sup,
                             std::span<const R> b, double tolerance);

}  // namespace splinedft

#endif  // SPLINEDFT_NUMERICS_HPP
