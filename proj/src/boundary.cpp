#include "splinedft/boundary.hpp"

#include <string>

#include "splinedft/errors.hpp"

namespace splinedft {

namespace {

template <class R>
ComplexSequence<R> sample_spectrum(const SampleGrid<R>& samples, const DftPlan<R>& plan) {
    const auto v = samples.values();
    ComplexSequence<R> x;
    x.reserve(plan.size());
    for (std::size_t j = 0; j < plan.size(); ++j) x.emplace_back(v[j]);
    return plan.forward(x);
}

template <class R>
ComplexSequence<R> spectral_inverse(const DftPlan<R>& plan, const ComplexSequence<R>& x) {
    return plan.inverse(x);
}

// Solves the real normal system stored as complex after asserting that the
// imaginary parts are negligible.
template <class R>
std::vector<R> solve_normal_system(const DenseMatrix<R>& a, const ComplexSequence<R>& rhs, int theta, int n,
                                   const PrecisionContext& ctx, const char* what) {
    const std::vector<R> a_re = real_part_checked<R>(a.data(), ctx.tolerance(), what);
    const std::vector<R> b_re = real_part_checked<R>(std::span<const Complex<R>>(rhs), ctx.tolerance(), what);
    const std::size_t m = rhs.size();
    // Symmetric diagonal scaling: the unknowns are derivative differences of
    // increasing order, so the raw entries span many decades.
    std::vector<R> d(m, R(1));
    for (std::size_t i = 0; i < m; ++i) {
        using std::sqrt;
        const R diag = a_re[i * m + i];
        if (diag > R(0)) d[i] = R(1) / sqrt(diag);
    }
    DenseMatrix<R> ar(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) ar(i, j) = Complex<R>(d[i] * a_re[i * m + j] * d[j]);
    ComplexSequence<R> br;
    br.reserve(m);
    for (std::size_t i = 0; i < m; ++i) br.emplace_back(d[i] * b_re[i]);
    ComplexSequence<R> x;
    try {
        x = LuDecomposition<R>(ar, ctx.tolerance()).solve(br);
    } catch (const SingularMatrix& e) {
        throw SingularSystem(theta, n, std::string(what) + ": " + e.what());
    }
    std::vector<R> out;
    out.reserve(m);
    for (std::size_t i = 0; i < m; ++i) out.push_back(d[i] * x[i].re);
    return out;
}

template <class R>
DenseMatrix<R> conjugate(const DenseMatrix<R>& a) {
    DenseMatrix<R> c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = conj(a(i, j));
    return c;
}

template <class R>
BoundaryVector<R> assemble_boundary(const R& b0, const std::vector<R>& x) {
    std::vector<R> b;
    b.reserve(x.size() + 1);
    b.push_back(b0);
    b.insert(b.end(), x.begin(), x.end());
    return BoundaryVector<R>(std::move(b));
}

void check_theta(int theta) {
    if (theta < 1) throw DomainError("boundary: theta must be >= 1, got " + std::to_string(theta));
}

template <class R>
void check_length(const BoundaryVector<R>& b, int theta) {
    if (b.theta() != theta)
        throw LengthMismatch("boundary vector has length " + std::to_string(b.theta()) + ", expected " +
                             std::to_string(theta));
}

}  // namespace

template <class R>
R zeta(int alpha, int beta, const R& dt) {
    if (alpha < 1 || beta < 1) throw DomainError("zeta: indices are one-based");
    const int s = alpha + beta + 1;
    R v = taylor_weight(R(1), alpha) * taylor_weight(R(1), beta) / R(s);
    for (int i = 0; i < s; ++i) v *= dt;
    return v;
}

template <class R>
Method1Tables<R> method1_tables(const SampleGrid<R>& samples, int theta, const PrecisionContext& ctx) {
    check_theta(theta);
    const int n = samples.n();
    const SpectralKernel<R> kernel(KernelConfig<R>(theta, n, samples.delta_t()), ctx);
    const DftPlan<R> plan(static_cast<std::size_t>(n));
    const ComplexSequence<R> f0 = sample_spectrum(samples, plan);
    const std::size_t nn = static_cast<std::size_t>(n);

    Method1Tables<R> t;
    // Last row of M_theta^{-1}: (-J0)^(theta-nu) det(M_{nu-1}) / det(M_theta).
    t.delta.resize(theta);
    for (int v = 0; v < theta; ++v) {
        ComplexSequence<R> spec(nn);
        for (std::size_t k = 0; k < nn; ++k) spec[k] = kernel.inverse_closed_form(theta, k, theta - 1, v);
        t.delta[v] = spectral_inverse(plan, spec);
    }
    ComplexSequence<R> spec(nn);
    const R sign = theta % 2 == 1 ? R(1) : R(-1);
    for (std::size_t k = 0; k < nn; ++k) {
        const Complex<R> j0 = kernel.j_coeff(0, k);
        spec[k] = ipow(j0, static_cast<unsigned>(theta)) * f0[k] / kernel.det(theta, k) * sign;
    }
    t.sigma = spectral_inverse(plan, spec);

    const std::size_t m = static_cast<std::size_t>(theta - 1);
    const R b0 = samples.b0();
    t.gamma = DenseMatrix<R>(m, m);
    t.rhs.assign(m, Complex<R>());
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t c = 0; c < m; ++c) {
            Complex<R> acc;
            for (std::size_t j = 0; j < nn; ++j) acc += t.delta[a + 1][j] * t.delta[c + 1][j];
            t.gamma(a, c) = acc;
        }
        Complex<R> acc;
        for (std::size_t j = 0; j < nn; ++j) acc += t.delta[a + 1][j] * (t.sigma[j] - t.delta[0][j] * b0);
        t.rhs[a] = acc;
    }
    return t;
}

template <class R>
Method2Tables<R> method2_tables(const SampleGrid<R>& samples, int theta, const PrecisionContext& ctx) {
    check_theta(theta);
    const int n = samples.n();
    if (n % 2 == 0) throw EvenNNotSupported(n);
    if (theta < 2) throw DomainError("consecutive-degree tables need theta >= 2");
    const R dt = samples.delta_t();
    const SpectralKernel<R> kernel(KernelConfig<R>(theta, n, dt), ctx);
    const DftPlan<R> plan(static_cast<std::size_t>(n));
    const ComplexSequence<R> f0 = sample_spectrum(samples, plan);
    const std::size_t nn = static_cast<std::size_t>(n);
    const std::size_t th = static_cast<std::size_t>(theta);

    Method2Tables<R> t;
    t.zeta.assign(th, std::vector<R>(th));
    for (int a = 0; a < theta; ++a)
        for (int b = 0; b < theta; ++b) t.zeta[a][b] = zeta(a + 1, b + 1, dt);

    // Per-k inverses of M_theta and M_{theta-1}; M_{N-k} = conj(M_k), so the
    // upper half of the spectrum is mirrored.
    std::vector<DenseMatrix<R>> inv_hi(nn), inv_lo(nn);
    for (std::size_t k = 0; k <= nn / 2; ++k) {
        inv_hi[k] = kernel.inverse(theta, k);
        inv_lo[k] = kernel.inverse(theta - 1, k);
        if (k != 0) {
            inv_hi[nn - k] = conjugate(inv_hi[k]);
            inv_lo[nn - k] = conjugate(inv_lo[k]);
        }
    }

    const ComplexSequence<R> zeros(nn);
    t.delta.assign(th, std::vector<ComplexSequence<R>>(th));
    t.omega.assign(th, std::vector<ComplexSequence<R>>(th, zeros));
    t.sigma.assign(th, zeros);
    t.eta.assign(th, zeros);
    ComplexSequence<R> spec(nn);
    for (std::size_t a = 0; a < th; ++a) {
        for (std::size_t v = 0; v < th; ++v) {
            for (std::size_t k = 0; k < nn; ++k) spec[k] = inv_hi[k](a, v);
            t.delta[a][v] = spectral_inverse(plan, spec);
        }
        // (-1)^(alpha-1) J0^alpha det(M_{theta-alpha}) / det(M_theta) f0 = (M^{-1})_{alpha,1} J0 f0.
        for (std::size_t k = 0; k < nn; ++k) spec[k] = inv_hi[k](a, 0) * kernel.j_coeff(0, k) * f0[k];
        t.sigma[a] = spectral_inverse(plan, spec);
        if (a + 1 < th) {
            for (std::size_t v = 0; v + 1 < th; ++v) {
                for (std::size_t k = 0; k < nn; ++k) spec[k] = inv_lo[k](a, v);
                t.omega[a][v] = spectral_inverse(plan, spec);
            }
            for (std::size_t k = 0; k < nn; ++k) spec[k] = inv_lo[k](a, 0) * kernel.j_coeff(0, k) * f0[k];
            t.eta[a] = spectral_inverse(plan, spec);
        }
    }

    t.psi.assign(th, std::vector<ComplexSequence<R>>(th, zeros));
    t.phi.assign(th, zeros);
    for (std::size_t a = 0; a < th; ++a) {
        for (std::size_t v = 0; v < th; ++v)
            for (std::size_t j = 0; j < nn; ++j) t.psi[a][v][j] = t.delta[a][v][j] - t.omega[a][v][j];
        for (std::size_t j = 0; j < nn; ++j) t.phi[a][j] = t.sigma[a][j] - t.eta[a][j];
    }

    // Symmetric bilinear form of zeta over the derivative index:
    // form(x, y) = sum_a { zeta(a,a) x_a y_a + sum_{b<a} zeta(a,b) (x_a y_b + x_b y_a) }.
    auto form = [&](auto&& x, auto&& y) {
        Complex<R> acc;
        for (std::size_t a = 0; a < th; ++a) {
            acc += x(a) * y(a) * t.zeta[a][a];
            for (std::size_t b = 0; b < a; ++b) acc += (x(a) * y(b) + x(b) * y(a)) * t.zeta[a][b];
        }
        return acc;
    };

    const R b0 = samples.b0();
    const std::size_t m = th - 1;
    t.rho.assign(m, std::vector<ComplexSequence<R>>(nn, ComplexSequence<R>(th)));
    t.lambda = DenseMatrix<R>(m, m);
    t.pi.assign(m, Complex<R>());
    for (std::size_t j = 0; j < nn; ++j) {
        auto psi_col = [&](std::size_t v) { return [&, v](std::size_t a) { return t.psi[a][v][j]; }; };
        auto phi_col = [&](std::size_t a) { return t.phi[a][j]; };
        for (std::size_t mu = 1; mu < th; ++mu) {
            for (std::size_t nu = 1; nu < th; ++nu) t.lambda(mu - 1, nu - 1) += form(psi_col(mu), psi_col(nu));
            for (std::size_t a = 0; a < th; ++a) {
                Complex<R> r = t.psi[a][mu][j] * t.psi[a][0][j] * t.zeta[a][a];
                for (std::size_t b = 0; b < a; ++b)
                    r += (t.psi[a][0][j] * t.psi[b][mu][j] + t.psi[a][mu][j] * t.psi[b][0][j]) * t.zeta[a][b];
                t.rho[mu - 1][j][a] = r * b0;
            }
            Complex<R> p = form(psi_col(mu), phi_col);
            for (std::size_t a = 0; a < th; ++a) p -= t.rho[mu - 1][j][a];
            t.pi[mu - 1] += p;
        }
    }
    return t;
}

template <class R>
BoundaryVector<R> method1_boundary(const SampleGrid<R>& samples, int theta, const PrecisionContext& ctx) {
    check_theta(theta);
    if (theta % 2 == 0 && samples.n() % 2 == 0) throw ParityViolation(theta, samples.n());
    if (theta == 1) return BoundaryVector<R>({samples.b0()});
    const Method1Tables<R> t = method1_tables(samples, theta, ctx);
    return assemble_boundary(samples.b0(), solve_normal_system(t.gamma, t.rhs, theta, samples.n(), ctx, "Gamma"));
}

template <class R>
BoundaryVector<R> method2_boundary(const SampleGrid<R>& samples, int theta, const PrecisionContext& ctx) {
    check_theta(theta);
    if (samples.n() % 2 == 0) throw EvenNNotSupported(samples.n());
    if (theta == 1) return BoundaryVector<R>({samples.b0()});
    const Method2Tables<R> t = method2_tables(samples, theta, ctx);
    return assemble_boundary(samples.b0(), solve_normal_system(t.lambda, t.pi, theta, samples.n(), ctx, "Lambda"));
}

template <class R>
R objective_theta_energy(const SampleGrid<R>& samples, int theta, const BoundaryVector<R>& b,
                         const PrecisionContext& ctx) {
    check_theta(theta);
    check_length(b, theta);
    if (theta % 2 == 0 && samples.n() % 2 == 0) throw ParityViolation(theta, samples.n());
    const Method1Tables<R> t = method1_tables(samples, theta, ctx);
    using std::abs;
    ComplexSequence<R> g(t.sigma.size());
    R scale(0);
    for (std::size_t j = 0; j < g.size(); ++j) {
        Complex<R> v = -t.sigma[j];
        R size = abs(t.sigma[j]);
        for (int nu = 0; nu < theta; ++nu) {
            v += t.delta[nu][j] * b[nu];
            size += abs(t.delta[nu][j]) * abs(b[nu]);
        }
        g[j] = v;
        scale = std::max(scale, size);
    }
    const std::vector<R> gr =
        real_part_checked<R>(std::span<const Complex<R>>(g), scale, ctx.tolerance(), "g^(theta)");
    R h(0);
    for (const auto& v : gr) h += v * v;
    return h;
}

template <class R>
R objective_consecutive(const SampleGrid<R>& samples, int theta, const BoundaryVector<R>& b,
                        const PrecisionContext& ctx) {
    check_theta(theta);
    check_length(b, theta);
    if (samples.n() % 2 == 0) throw EvenNNotSupported(samples.n());
    if (theta == 1) {
        // The degree-0 construction is not defined; the difference has only the
        // first-derivative term, which the boundary vector does not affect.
        throw DomainError("objective_consecutive needs theta >= 2");
    }
    const Method2Tables<R> t = method2_tables(samples, theta, ctx);
    const std::size_t th = static_cast<std::size_t>(theta);
    const std::size_t nn = static_cast<std::size_t>(samples.n());
    using std::abs;
    Complex<R> total;
    R scale(0);
    std::vector<Complex<R>> g(th);
    std::vector<R> size(th);
    for (std::size_t j = 0; j < nn; ++j) {
        for (std::size_t a = 0; a < th; ++a) {
            Complex<R> v = -t.phi[a][j];
            size[a] = abs(t.phi[a][j]);
            for (std::size_t nu = 0; nu < th; ++nu) {
                v += t.psi[a][nu][j] * b[nu];
                size[a] += abs(t.psi[a][nu][j]) * abs(b[nu]);
            }
            g[a] = v;
        }
        for (std::size_t a = 0; a < th; ++a) {
            total += g[a] * g[a] * t.zeta[a][a];
            scale += size[a] * size[a] * abs(t.zeta[a][a]);
            for (std::size_t c = 0; c < a; ++c) {
                total += g[a] * g[c] * t.zeta[a][c] * R(2);
                scale += size[a] * size[c] * abs(t.zeta[a][c]) * R(2);
            }
        }
    }
    return real_part_checked(total, scale, ctx.tolerance(), "h*");
}

template <class R>
BoundaryVector<R> zero_boundary(const SampleGrid<R>& samples, int theta) {
    check_theta(theta);
    std::vector<R> b(static_cast<std::size_t>(theta), R(0));
    b[0] = samples.b0();
    return BoundaryVector<R>(std::move(b));
}

template <class R>
BoundaryVector<R> exact_boundary(const SampleGrid<R>& samples, int theta, std::span<const R> differences) {
    check_theta(theta);
    if (differences.size() != static_cast<std::size_t>(theta - 1))
        throw LengthMismatch("exact boundary: expected " + std::to_string(theta - 1) + " derivative differences, got " +
                             std::to_string(differences.size()));
    std::vector<R> b;
    b.reserve(static_cast<std::size_t>(theta));
    b.push_back(samples.b0());
    b.insert(b.end(), differences.begin(), differences.end());
    return BoundaryVector<R>(std::move(b));
}

#define SPLINEDFT_INSTANTIATE(R)                                                                                  \
    template R zeta<R>(int, int, const R&);                                                                       \
    template Method1Tables<R> method1_tables<R>(const SampleGrid<R>&, int, const PrecisionContext&);               \
    template Method2Tables<R> method2_tables<R>(const SampleGrid<R>&, int, const PrecisionContext&);               \
    template BoundaryVector<R> method1_boundary<R>(const SampleGrid<R>&, int, const PrecisionContext&);            \
    template BoundaryVector<R> method2_boundary<R>(const SampleGrid<R>&, int, const PrecisionContext&);            \
    template R objective_theta_energy<R>(const SampleGrid<R>&, int, const BoundaryVector<R>&,                     \
                                         const PrecisionContext&);                                                \
    template R objective_consecutive<R>(const SampleGrid<R>&, int, const BoundaryVector<R>&,                      \
                                        const PrecisionContext&);                                                 \
    template BoundaryVector<R> zero_boundary<R>(const SampleGrid<R>&, int);                                       \
    template BoundaryVector<R> exact_boundary<R>(const SampleGrid<R>&, int, std::span<const R>);

SPLINEDFT_INSTANTIATE(double)
SPLINEDFT_INSTANTIATE(HighReal)

#undef SPLINEDFT_INSTANTIATE

}  // namespace splinedft
