#include "splinedft/kernel.hpp"

#include <map>
#include <mutex>
#include <string>

#include "splinedft/errors.hpp"

namespace splinedft {

namespace {

std::mutex eulerian_mutex;
std::map<int, std::vector<BigInt>> eulerian_cache;

std::vector<BigInt> compute_eulerian_row(int theta) {
    if (theta == 0) return {BigInt(1)};
    // Binomials C(theta+1, k) by the multiplicative recurrence.
    std::vector<BigInt> binom(theta + 2);
    binom[0] = 1;
    for (int k = 1; k <= theta + 1; ++k) binom[k] = binom[k - 1] * (theta + 2 - k) / k;
    std::vector<BigInt> row(theta);
    for (int q = 0; q < theta; ++q) {
        BigInt acc = 0;
        for (int k = 0; k <= q; ++k) {
            BigInt term = binom[k] * boost::multiprecision::pow(BigInt(q + 1 - k), static_cast<unsigned>(theta));
            if (k % 2 == 0)
                acc += term;
            else
                acc -= term;
        }
        row[q] = acc;
    }
    return row;
}

}  // namespace

const std::vector<BigInt>& eulerian_row(int theta) {
    if (theta < 0) throw DomainError("eulerian: theta must be >= 0");
    std::lock_guard<std::mutex> lock(eulerian_mutex);
    auto it = eulerian_cache.find(theta);
    if (it == eulerian_cache.end()) it = eulerian_cache.emplace(theta, compute_eulerian_row(theta)).first;
    return it->second;
}

BigInt eulerian(int theta, int q) {
    if (theta < 0 || q < 0 || q >= std::max(theta, 1))
        throw DomainError("eulerian: q=" + std::to_string(q) + " outside [0, " +
                          std::to_string(std::max(theta, 1) - 1) + "] for theta=" + std::to_string(theta));
    return eulerian_row(theta)[q];
}

template <class R>
KernelConfig<R>::KernelConfig(int theta, int n, R delta_t) : theta_(theta), n_(n), delta_t_(std::move(delta_t)) {
    if (theta < 1) throw DomainError("kernel: theta must be >= 1, got " + std::to_string(theta));
    if (n < 1) throw DomainError("kernel: N must be >= 1, got " + std::to_string(n));
    if (!(delta_t_ > R(0)) || !is_finite(delta_t_)) throw DomainError("kernel: delta_t must be positive");
    if (theta % 2 == 0 && n % 2 == 0) throw ParityViolation(theta, n);
}

template <class R>
SpectralKernel<R>::SpectralKernel(KernelConfig<R> config, const PrecisionContext& ctx)
    : config_(std::move(config)), tolerance_(ctx.tolerance()), twiddle_(static_cast<std::size_t>(config_.n())) {
    const int theta = config_.theta();
    const std::size_t n = static_cast<std::size_t>(config_.n());
    const R& dt = config_.delta_t();
    weight_.resize(theta + 2);
    inverse_factorial_.resize(theta + 2);
    dt_power_.resize(theta + 2);
    inverse_factorial_[0] = R(1);
    dt_power_[0] = R(1);
    for (int p = 1; p <= theta + 1; ++p) {
        inverse_factorial_[p] = inverse_factorial_[p - 1] / R(p);
        dt_power_[p] = dt_power_[p - 1] * dt;
    }
    for (int p = 0; p <= theta + 1; ++p) weight_[p] = taylor_weight(dt, p);

    det_.assign(theta + 1, std::vector<Complex<R>>(n));
    for (std::size_t k = 0; k < n; ++k) det_[0][k] = Complex<R>(R(1));
    for (int t = 1; t <= theta; ++t) {
        const auto& row = eulerian_row(t);
        std::vector<R> coeff;
        coeff.reserve(row.size());
        for (const auto& a : row) coeff.push_back(from_bigint<R>(a));
        for (std::size_t k = 0; k < n; ++k) {
            Complex<R> acc;
            for (int q = 0; q < t; ++q) acc += coeff[q] * unit(k, static_cast<std::size_t>(t - q));
            det_[t][k] = acc * weight_[t];
        }
    }
}

template <class R>
const Complex<R>& SpectralKernel<R>::unit(std::size_t k, std::size_t m) const {
    return twiddle_[(k % twiddle_.size()) * (m % twiddle_.size())];
}

template <class R>
Complex<R> SpectralKernel<R>::j_coeff(int p, std::size_t k) const {
    if (p < 0 || p > theta() + 1) throw DomainError("j_coeff: p out of range");
    if (p == 0) return unit(k) - Complex<R>(R(1));
    return unit(k) * weight_[p];
}

template <class R>
void SpectralKernel<R>::check_order(int order) const {
    if (order < 0 || order > theta())
        throw DomainError("kernel: order " + std::to_string(order) + " outside [0, " + std::to_string(theta()) + "]");
}

template <class R>
const Complex<R>& SpectralKernel<R>::det(int order, std::size_t k) const {
    check_order(order);
    if (k >= static_cast<std::size_t>(n())) throw DomainError("kernel: k out of range");
    return det_[order][k];
}

template <class R>
void SpectralKernel<R>::check_nonsingular(int order, std::size_t k) const {
    if (splinedft::abs(det(order, k)) <= R(tolerance_) * dt_power_[order])
        throw SingularMatrix("det(M_{" + std::to_string(order) + "," + std::to_string(k) +
                             "}) vanishes; theta and N parity not admissible");
}

template <class R>
DenseMatrix<R> SpectralKernel<R>::assemble(int order, std::size_t k) const {
    check_order(order);
    const std::size_t t = static_cast<std::size_t>(order);
    DenseMatrix<R> m(t, t);
    for (std::size_t a = 0; a < t; ++a)
        for (std::size_t v = a == 0 ? 0 : a - 1; v < t; ++v) m(a, v) = j_coeff(static_cast<int>(v + 1 - a), k);
    return m;
}

template <class R>
DenseMatrix<R> SpectralKernel<R>::equilibrated(int order, std::size_t k) const {
    const std::size_t t = static_cast<std::size_t>(order);
    DenseMatrix<R> m(t, t);
    const Complex<R> j0 = j_coeff(0, k);
    for (std::size_t a = 0; a < t; ++a)
        for (std::size_t v = a == 0 ? 0 : a - 1; v < t; ++v) {
            const std::size_t p = v + 1 - a;
            m(a, v) = p == 0 ? j0 : unit(k) * inverse_factorial_[p];
        }
    return m;
}

template <class R>
Complex<R> SpectralKernel<R>::inverse_closed_form(int order, std::size_t k, int a, int v) const {
    check_order(order);
    if (v < 0 || a >= order || v > a) throw DomainError("inverse_closed_form: needs 0 <= v <= a < order");
    check_nonsingular(order, k);
    const Complex<R> minus_j0 = -j_coeff(0, k);
    return ipow(minus_j0, static_cast<unsigned>(a - v)) * det(v, k) * det(order - 1 - a, k) / det(order, k);
}

template <class R>
DenseMatrix<R> SpectralKernel<R>::inverse_by_lu(int order, std::size_t k) const {
    check_order(order);
    check_nonsingular(order, k);
    DenseMatrix<R> ainv = LuDecomposition<R>(equilibrated(order, k), tolerance_).inverse();
    const std::size_t t = static_cast<std::size_t>(order);
    for (std::size_t a = 0; a < t; ++a)
        for (std::size_t v = 0; v < t; ++v) ainv(a, v) *= dt_power_[v] / dt_power_[a + 1];
    return ainv;
}

template <class R>
DenseMatrix<R> SpectralKernel<R>::inverse(int order, std::size_t k) const {
    DenseMatrix<R> inv = inverse_by_lu(order, k);
    for (int a = 0; a < order; ++a)
        for (int v = 0; v <= a; ++v) inv(a, v) = inverse_closed_form(order, k, a, v);
    return inv;
}

template <class R>
std::vector<Complex<R>> SpectralKernel<R>::inverse_row(int order, std::size_t k, int a) const {
    if (a < 0 || a >= order) throw DomainError("inverse_row: row index out of range");
    DenseMatrix<R> inv = inverse(order, k);
    auto r = inv.row(static_cast<std::size_t>(a));
    return {r.begin(), r.end()};
}

template <class R>
ComplexSequence<R> SpectralKernel<R>::solve(int order, std::size_t k, std::span<const Complex<R>> rhs) const {
    check_order(order);
    if (rhs.size() != static_cast<std::size_t>(order)) throw LengthMismatch("kernel solve: rhs length mismatch");
    check_nonsingular(order, k);
    ComplexSequence<R> scaled(rhs.begin(), rhs.end());
    for (int a = 0; a < order; ++a) scaled[a] *= dt_power_[a];
    ComplexSequence<R> y = LuDecomposition<R>(equilibrated(order, k), tolerance_).solve(scaled);
    for (int v = 0; v < order; ++v) y[v] /= dt_power_[v + 1];
    return y;
}

template <class R>
Complex<R> j_coeff(int p, int k, const KernelConfig<R>& cfg) {
    if (p < 0) throw DomainError("j_coeff: p must be >= 0");
    if (k < 0 || k >= cfg.n()) throw DomainError("j_coeff: k out of range");
    const Complex<R> w = root_of_unity<R>(static_cast<std::size_t>(k), static_cast<std::size_t>(cfg.n()));
    if (p == 0) return w - Complex<R>(R(1));
    return w * taylor_weight(cfg.delta_t(), p);
}

template <class R>
Complex<R> det_m(int theta_prime, int k, const KernelConfig<R>& cfg) {
    if (theta_prime < 0 || theta_prime > cfg.theta()) throw DomainError("det_m: theta' out of range");
    if (k < 0 || k >= cfg.n()) throw DomainError("det_m: k out of range");
    if (theta_prime == 0) return Complex<R>(R(1));
    const auto& row = eulerian_row(theta_prime);
    const std::size_t n = static_cast<std::size_t>(cfg.n());
    Complex<R> acc;
    for (int q = 0; q < theta_prime; ++q)
        acc += from_bigint<R>(row[q]) *
               root_of_unity<R>((static_cast<std::size_t>(k) * static_cast<std::size_t>(theta_prime - q)) % n, n);
    return acc * taylor_weight(cfg.delta_t(), theta_prime);
}

template <class R>
DenseMatrix<R> assemble_m(int theta, int k, const KernelConfig<R>& cfg) {
    if (theta < 1) throw DomainError("assemble_m: theta must be >= 1");
    if (k < 0 || k >= cfg.n()) throw DomainError("assemble_m: k out of range");
    const std::size_t t = static_cast<std::size_t>(theta);
    DenseMatrix<R> m(t, t);
    for (std::size_t a = 0; a < t; ++a)
        for (std::size_t v = a == 0 ? 0 : a - 1; v < t; ++v) m(a, v) = j_coeff(static_cast<int>(v + 1 - a), k, cfg);
    return m;
}

template <class R>
std::vector<Complex<R>> inv_m_row(int theta, int k, int alpha, const KernelConfig<R>& cfg,
                                  const PrecisionContext& ctx) {
    if (theta < 1 || theta > cfg.theta()) throw DomainError("inv_m_row: theta out of range");
    if (alpha < 1 || alpha > theta) throw DomainError("inv_m_row: alpha must be in [1, theta]");
    if (k < 0 || k >= cfg.n()) throw DomainError("inv_m_row: k out of range");
    const SpectralKernel<R> kernel(KernelConfig<R>(theta, cfg.n(), cfg.delta_t()), ctx);
    return kernel.inverse_row(theta, static_cast<std::size_t>(k), alpha - 1);
}

#define SPLINEDFT_INSTANTIATE(R)                                                                        \
    template class KernelConfig<R>;                                                                     \
    template class SpectralKernel<R>;                                                                   \
    template Complex<R> j_coeff<R>(int, int, const KernelConfig<R>&);                                   \
    template Complex<R> det_m<R>(int, int, const KernelConfig<R>&);                                     \
    template DenseMatrix<R> assemble_m<R>(int, int, const KernelConfig<R>&);                            \
    template std::vector<Complex<R>> inv_m_row<R>(int, int, int, const KernelConfig<R>&,                \
                                                  const PrecisionContext&);

SPLINEDFT_INSTANTIATE(double)
SPLINEDFT_INSTANTIATE(HighReal)

#undef SPLINEDFT_INSTANTIATE

}  // namespace splinedft
