#include "splinedft/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace splinedft {

template <class R>
ComplexSequence<R> DenseMatrix<R>::operator*(std::span<const Complex<R>> x) const {
    if (x.size() != cols_) throw LengthMismatch("matrix-vector product: length mismatch");
    ComplexSequence<R> y(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        Complex<R> acc;
        for (std::size_t c = 0; c < cols_; ++c) acc += (*this)(r, c) * x[c];
        y[r] = acc;
    }
    return y;
}

template <class R>
DenseMatrix<R> DenseMatrix<R>::operator*(const DenseMatrix& o) const {
    if (o.rows_ != cols_) throw LengthMismatch("matrix product: inner dimensions differ");
    DenseMatrix p(rows_, o.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < o.cols_; ++c) {
            Complex<R> acc;
            for (std::size_t i = 0; i < cols_; ++i) acc += (*this)(r, i) * o(i, c);
            p(r, c) = acc;
        }
    return p;
}

namespace {

// cos and sin of 2*pi*m/n.
template <class R>
std::pair<R, R> cis_turns(std::size_t m, std::size_t n) {
    using std::cos;
    using std::sin;
    // Work in units of 1/(8n) of a turn: a = 8m, octant o = a / n.
    const std::size_t a = 8 * (m % n);
    const std::size_t octant = a / n;
    const std::size_t rem = a - octant * n;
    std::size_t quadrant;
    R delta;
    const R turn = R(2) * pi_value<R>();
    if (octant % 2 == 0) {
        quadrant = octant / 2;
        delta = rem == 0 ? R(0) : turn * R(static_cast<long long>(rem)) / R(static_cast<long long>(8 * n));
    } else {
        quadrant = (octant + 1) / 2;
        delta = -(turn * R(static_cast<long long>(n - rem)) / R(static_cast<long long>(8 * n)));
    }
    R c = delta == R(0) ? R(1) : R(cos(delta));
    R s = delta == R(0) ? R(0) : R(sin(delta));
    switch (quadrant % 4) {
        case 0: return {c, s};
        case 1: return {-s, c};
        case 2: return {-c, -s};
        default: return {s, -c};
    }
}

std::size_t next_power_of_two(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1U;
    return p;
}

}  // namespace

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

template <class R>
Complex<R> root_of_unity(std::size_t m, std::size_t n) {
    if (n == 0) throw LengthMismatch("root_of_unity: n must be >= 1");
    auto [c, s] = cis_turns<R>(m, n);
    return {std::move(c), -s};
}

template <class R>
TwiddleTable<R>::TwiddleTable(std::size_t n) {
    if (n == 0) throw LengthMismatch("twiddle table: length must be >= 1");
    w_.reserve(n);
    for (std::size_t m = 0; m < n; ++m) w_.push_back(root_of_unity<R>(m, n));
}

template <class R>
DftPlan<R>::DftPlan(std::size_t n, DftAlgorithm algorithm) : n_(n), algorithm_(algorithm), twiddle_(n) {
    if (algorithm_ == DftAlgorithm::automatic) {
        if (is_power_of_two(n))
            algorithm_ = DftAlgorithm::radix2;
        else if (n > 128)
            algorithm_ = DftAlgorithm::bluestein;
        else
            algorithm_ = DftAlgorithm::direct;
    }
    if (algorithm_ == DftAlgorithm::radix2 && !is_power_of_two(n))
        throw LengthMismatch("radix-2 transform needs a power-of-two length, got " + std::to_string(n));
    if (algorithm_ == DftAlgorithm::bluestein) {
        padded_ = next_power_of_two(2 * n - 1);
        padded_twiddle_.emplace(padded_);
        const TwiddleTable<R> half_turn(2 * n);
        chirp_.resize(n);
        for (std::size_t j = 0; j < n; ++j) chirp_[j] = half_turn[(j * j) % (2 * n)];
        ComplexSequence<R> kernel(padded_);
        kernel[0] = conj(chirp_[0]);
        for (std::size_t j = 1; j < n; ++j) {
            kernel[j] = conj(chirp_[j]);
            kernel[padded_ - j] = conj(chirp_[j]);
        }
        radix2_in_place(kernel, *padded_twiddle_);
        kernel_hat_ = std::move(kernel);
    }
}

template <class R>
ComplexSequence<R> DftPlan<R>::direct(std::span<const Complex<R>> x) const {
    ComplexSequence<R> out(n_);
    for (std::size_t k = 0; k < n_; ++k) {
        Complex<R> acc;
        std::size_t idx = 0;
        for (std::size_t j = 0; j < n_; ++j) {
            acc += x[j] * twiddle_[idx];
            idx += k;
            if (idx >= n_) idx -= n_;
        }
        out[k] = acc;
    }
    return out;
}

template <class R>
void DftPlan<R>::radix2_in_place(ComplexSequence<R>& a, const TwiddleTable<R>& w) const {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1U;
        for (; j & bit; bit >>= 1U) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1U) {
        const std::size_t stride = n / len;
        const std::size_t half = len / 2;
        for (std::size_t start = 0; start < n; start += len)
            for (std::size_t k = 0; k < half; ++k) {
                Complex<R> t = a[start + k + half] * w[k * stride];
                a[start + k + half] = a[start + k] - t;
                a[start + k] += t;
            }
    }
}

template <class R>
ComplexSequence<R> DftPlan<R>::bluestein(std::span<const Complex<R>> x) const {
    ComplexSequence<R> a(padded_);
    for (std::size_t j = 0; j < n_; ++j) a[j] = x[j] * chirp_[j];
    radix2_in_place(a, *padded_twiddle_);
    for (std::size_t i = 0; i < padded_; ++i) a[i] *= kernel_hat_[i];
    // Inverse FFT via conjugation.
    for (auto& z : a) z = conj(z);
    radix2_in_place(a, *padded_twiddle_);
    const R scale = R(1) / R(static_cast<long long>(padded_));
    ComplexSequence<R> out(n_);
    for (std::size_t k = 0; k < n_; ++k) out[k] = conj(a[k]) * scale * chirp_[k];
    return out;
}

template <class R>
ComplexSequence<R> DftPlan<R>::forward(std::span<const Complex<R>> x) const {
    if (x.size() != n_) throw LengthMismatch("dft: expected length " + std::to_string(n_));
    switch (algorithm_) {
        case DftAlgorithm::radix2: {
            ComplexSequence<R> a(x.begin(), x.end());
            radix2_in_place(a, twiddle_);
            return a;
        }
        case DftAlgorithm::bluestein: return bluestein(x);
        default: return direct(x);
    }
}

template <class R>
ComplexSequence<R> DftPlan<R>::inverse(std::span<const Complex<R>> x) const {
    ComplexSequence<R> c(x.size());
    std::transform(x.begin(), x.end(), c.begin(), [](const Complex<R>& z) { return conj(z); });
    ComplexSequence<R> y = forward(c);
    const R scale = R(1) / R(static_cast<long long>(n_));
    for (auto& z : y) z = conj(z) * scale;
    return y;
}

template <class R>
ComplexSequence<R> dft(std::span<const Complex<R>> x, DftAlgorithm algorithm) {
    if (x.empty()) throw LengthMismatch("dft: empty input");
    return DftPlan<R>(x.size(), algorithm).forward(x);
}

template <class R>
ComplexSequence<R> idft(std::span<const Complex<R>> x, DftAlgorithm algorithm) {
    if (x.empty()) throw LengthMismatch("idft: empty input");
    return DftPlan<R>(x.size(), algorithm).inverse(x);
}

template <class R>
std::vector<R> real_part_checked(std::span<const Complex<R>> z, double tolerance, const char* what) {
    return real_part_checked<R>(z, R(0), tolerance, what);
}

template <class R>
std::vector<R> real_part_checked(std::span<const Complex<R>> z, const R& input_scale, double tolerance,
                                 const char* what) {
    using std::abs;
    R scale = input_scale;
    for (const auto& v : z) scale = std::max(scale, splinedft::abs(v));
    const R limit = R(100) * R(tolerance) * scale;
    std::vector<R> out;
    out.reserve(z.size());
    for (const auto& v : z) {
        if (abs(v.im) > limit)
            throw ImaginaryResidue(std::string(what) + ": imaginary residue " + to_decimal(R(abs(v.im))) +
                                   " exceeds limit " + to_decimal(limit));
        out.push_back(v.re);
    }
    return out;
}

template <class R>
R real_part_checked(const Complex<R>& z, const R& scale, double tolerance, const char* what) {
    using std::abs;
    const R limit = R(100) * R(tolerance) * std::max(scale, splinedft::abs(z));
    if (abs(z.im) > limit)
        throw ImaginaryResidue(std::string(what) + ": imaginary residue " + to_decimal(R(abs(z.im))));
    return z.re;
}

template <class R>
LuDecomposition<R>::LuDecomposition(DenseMatrix<R> a, double tolerance) : lu_(std::move(a)) {
    const std::size_t n = lu_.rows();
    if (n != lu_.cols()) throw LengthMismatch("lu: matrix is not square");
    perm_.resize(n);
    for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
    R scale(0);
    for (const auto& z : lu_.data()) scale = std::max(scale, splinedft::abs(z));
    const R threshold = R(tolerance) * scale;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        R best = norm(lu_(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            R m = norm(lu_(r, col));
            if (m > best) {
                best = std::move(m);
                piv = r;
            }
        }
        if (scale == R(0) || splinedft::abs(lu_(piv, col)) <= threshold)
            throw SingularMatrix("lu: pivot " + std::to_string(col) + " is below tolerance");
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(lu_(piv, c), lu_(col, c));
            std::swap(perm_[piv], perm_[col]);
            sign_ = -sign_;
        }
        const Complex<R> inv_pivot = Complex<R>(R(1)) / lu_(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            Complex<R> f = lu_(r, col) * inv_pivot;
            lu_(r, col) = f;
            for (std::size_t c = col + 1; c < n; ++c) lu_(r, c) -= f * lu_(col, c);
        }
    }
}

template <class R>
ComplexSequence<R> LuDecomposition<R>::solve(std::span<const Complex<R>> b) const {
    const std::size_t n = size();
    if (b.size() != n) throw LengthMismatch("lu solve: rhs length mismatch");
    ComplexSequence<R> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        Complex<R> acc = b[perm_[i]];
        for (std::size_t c = 0; c < i; ++c) acc -= lu_(i, c) * x[c];
        x[i] = acc;
    }
    for (std::size_t i = n; i-- > 0;) {
        Complex<R> acc = x[i];
        for (std::size_t c = i + 1; c < n; ++c) acc -= lu_(i, c) * x[c];
        x[i] = acc / lu_(i, i);
    }
    return x;
}

template <class R>
Complex<R> LuDecomposition<R>::determinant() const {
    Complex<R> d{R(sign_)};
    for (std::size_t i = 0; i < size(); ++i) d *= lu_(i, i);
    return d;
}

template <class R>
DenseMatrix<R> LuDecomposition<R>::inverse() const {
    const std::size_t n = size();
    DenseMatrix<R> inv(n, n);
    ComplexSequence<R> e(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::fill(e.begin(), e.end(), Complex<R>());
        e[c] = Complex<R>(R(1));
        ComplexSequence<R> col = solve(e);
        for (std::size_t r = 0; r < n; ++r) inv(r, c) = col[r];
    }
    return inv;
}

template <class R>
ComplexSequence<R> LuDecomposition<R>::pivots() const {
    ComplexSequence<R> p(size());
    for (std::size_t i = 0; i < size(); ++i) p[i] = lu_(i, i);
    return p;
}

template <class R>
ComplexSequence<R> lu_solve(const DenseMatrix<R>& a, std::span<const Complex<R>> b, double tolerance) {
    if (b.size() != a.rows()) throw LengthMismatch("lu_solve: rhs length mismatch");
    return LuDecomposition<R>(a, tolerance).solve(b);
}

template <class R>
std::vector<R> tridiag_solve(std::span<const R> sub, std::span<const R> diag, std::span<const R> sup,
                             std::span<const R> b, double tolerance) {
    using std::abs;
    const std::size_t n = diag.size();
    if (n == 0 || b.size() != n || sub.size() + 1 != n || sup.size() + 1 != n)
        throw LengthMismatch("tridiag_solve: inconsistent band lengths");
    R scale(0);
    for (const auto& v : diag) scale = std::max(scale, R(abs(v)));
    for (const auto& v : sub) scale = std::max(scale, R(abs(v)));
    for (const auto& v : sup) scale = std::max(scale, R(abs(v)));
    const R threshold = R(tolerance) * scale;
    std::vector<R> c(n), d(n);
    R pivot = diag[0];
    if (scale == R(0) || abs(pivot) <= threshold) throw SingularMatrix("tridiag_solve: zero pivot at row 0");
    c[0] = n > 1 ? R(sup[0] / pivot) : R(0);
    d[0] = b[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = diag[i] - sub[i - 1] * c[i - 1];
        if (abs(pivot) <= threshold)
            throw SingularMatrix("tridiag_solve: zero pivot at row " + std::to_string(i));
        c[i] = i + 1 < n ? R(sup[i] / pivot) : R(0);
        d[i] = (b[i] - sub[i - 1] * d[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) d[i] -= c[i] * d[i + 1];
    return d;
}

#define SPLINEDFT_INSTANTIATE(R)                                                                         \
    template Complex<R> root_of_unity<R>(std::size_t, std::size_t);                                     \
    template class DenseMatrix<R>;                                                                       \
    template class TwiddleTable<R>;                                                                      \
    template class DftPlan<R>;                                                                           \
    template class LuDecomposition<R>;                                                                   \
    template ComplexSequence<R> dft<R>(std::span<const Complex<R>>, DftAlgorithm);                       \
    template ComplexSequence<R> idft<R>(std::span<const Complex<R>>, DftAlgorithm);                      \
    template std::vector<R> real_part_checked<R>(std::span<const Complex<R>>, double, const char*);      \
    template std::vector<R> real_part_checked<R>(std::span<const Complex<R>>, const R&, double, const char*); \
    template R real_part_checked<R>(const Complex<R>&, const R&, double, const char*);                   \
    template ComplexSequence<R> lu_solve<R>(const DenseMatrix<R>&, std::span<const Complex<R>>, double); \
    template std::vector<R> tridiag_solve<R>(std::span<const R>, std::span<const R>, std::span<const R>, \
                                             std::span<const R>, double);

SPLINEDFT_INSTANTIATE(double)
SPLINEDFT_INSTANTIATE(HighReal)

#undef SPLINEDFT_INSTANTIATE

}  // namespace splinedft
