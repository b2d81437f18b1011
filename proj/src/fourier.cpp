#include "splinedft/fourier.hpp"

#include <cmath>
#include <limits>

#include "splinedft/bench.hpp"
#include "splinedft/boundary.hpp"
#include "splinedft/errors.hpp"
#include "splinedft/test_functions.hpp"

namespace splinedft {

namespace {

// Piece moments I_mu = int_0^h x^mu / mu! exp(-i omega x) dx, mu = 0..theta.
template <class R>
std::vector<Complex<R>> piece_moments(const R& omega, const R& h, int theta) {
    using std::abs;
    std::vector<Complex<R>> out(static_cast<std::size_t>(theta) + 1);
    const R x = omega * h;
    const Complex<R> iw(R(0), omega);
    const Complex<R> edge = unit_phase(R(-x));  // exp(-i omega h)
    const R eps = std::numeric_limits<R>::epsilon();

    // sum_m (-i x)^m / (m! (mu + m + 1)), times h^(mu+1) / mu!.
    auto series = [&](int mu) {
        const Complex<R> minus_z(R(0), -x);
        Complex<R> term(R(1));
        Complex<R> sum = term / R(mu + 1);
        for (int m = 1; m < 100000; ++m) {
            term = term * minus_z / R(m);
            const Complex<R> add = term / R(mu + m + 1);
            sum += add;
            if (R(m) > abs(x) && splinedft::abs(add) <= eps * splinedft::abs(sum)) break;
        }
        return sum * taylor_weight(h, mu) * h;
    };

    if (abs(x) <= R(1)) {
        // Series for the top moment, then the downward recurrence
        // I_{mu-1} = i omega I_mu + h^mu / mu! exp(-i omega h).
        out[theta] = series(theta);
        for (int mu = theta; mu >= 1; --mu) out[mu - 1] = iw * out[mu] + edge * taylor_weight(h, mu);
    } else if (abs(x) < R(theta + 1)) {
        for (int mu = 0; mu <= theta; ++mu) out[mu] = series(mu);
    } else {
        // Upward: I_mu = (I_{mu-1} - h^mu / mu! exp(-i omega h)) / (i omega).
        out[0] = (Complex<R>(R(1)) - edge) / iw;
        for (int mu = 1; mu <= theta; ++mu) out[mu] = (out[mu - 1] - edge * taylor_weight(h, mu)) / iw;
    }
    return out;
}

}  // namespace

template <class R>
ComplexSequence<R> spline_fourier_transform(const SplineFunction<R>& s, std::span<const R> omegas) {
    const int n = s.n();
    const int theta = s.theta();
    const R h = s.grid().delta_t();
    ComplexSequence<R> out;
    out.reserve(omegas.size());
    for (const R& omega : omegas) {
        if (!is_finite(omega)) throw DomainError("spline_fourier_transform: non-finite frequency");
        if (omega == R(0)) {
            out.emplace_back(s.integrate(s.t_start(), s.t_end()));
            continue;
        }
        const std::vector<Complex<R>> moments = piece_moments(omega, h, theta);
        Complex<R> total;
        for (int j = 0; j < n; ++j) {
            Complex<R> piece;
            for (int mu = 0; mu <= theta; ++mu) piece += moments[mu] * s.deriv(mu, j);
            total += unit_phase(R(-omega * s.grid().node(j))) * piece;
        }
        out.push_back(total);
    }
    return out;
}

template <class R>
Complex<R> analytic_ft_demo(const R& omega) {
    const R period = R(8192) / R(100);
    auto term = [&](const R& shift) {
        const Complex<R> a(R(2), omega + shift);  // 2 + i(omega + shift)
        const Complex<R> e = exp(Complex<R>(-a.re * period, -a.im * period));
        return (Complex<R>(R(1)) - e) / a;
    };
    return (term(R(-60)) + term(R(60))) * (R(1) / R(2));
}

std::vector<double> FtDemoConfig::default_omegas() {
    std::vector<double> w;
    for (int i = 0; i <= 1400; ++i) w.push_back(0.5 * i);
    return w;
}

namespace {

template <class R>
FtDemoResult run_case(int theta, const std::string& bc, const FtDemoConfig& cfg,
                      const std::vector<R>& omegas, const PrecisionContext& ctx) {
    FtDemoResult r;
    r.theta = theta;
    r.bc = bc;
    const TestFunction<R> f = make_test_function<R>("ft_demo");
    const SampleGrid<R> grid = f.sample(cfg.n);
    std::optional<BoundaryVector<R>> b;
    try {
        if (bc == "zero") {
            b = zero_boundary(grid, theta);
        } else if (bc == "exact") {
            const std::vector<R> d = f.boundary_differences(theta);
            b = exact_boundary<R>(grid, theta, d);
        } else if (bc == "method1") {
            const int need = required_digits(theta, cfg.n, bc);
            if (ctx.digits() < need) {
                r.status = "refused: needs >= " + std::to_string(need) + " digits";
                return r;
            }
            b = method1_boundary(grid, theta, ctx);
        } else {
            throw DomainError("ft-demo: unknown boundary provider '" + bc + "'");
        }
    } catch (const SingularSystem& e) {
        r.status = std::string("error: ") + e.what();
        return r;
    }
    const SplineFunction<R> s = build_spline(grid, theta, *b, ctx);

    const ComplexSequence<R> ft = spline_fourier_transform<R>(s, omegas);
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        const double e = to_double(splinedft::abs(ft[i] - analytic_ft_demo(omegas[i])));
        r.omega.push_back(to_double(omegas[i]));
        r.ft_error.push_back(e);
        r.ft_max_error = std::max(r.ft_max_error, e);
    }
    const R dts = grid.delta_t() / R(cfg.lambda);
    for (int j = 0; j < cfg.n; ++j)
        for (int m = 0; m < cfg.lambda; ++m) {
            const R t = f.period * R(j * cfg.lambda + m) / R(cfg.lambda * cfg.n);
            const double d = to_double(R(f(t) - s.evaluate_piece(j, dts * R(m))));
            r.t.push_back(to_double(t));
            r.difference.push_back(d);
            r.time_max_error = std::max(r.time_max_error, std::abs(d));
        }
    r.status = "ok";
    return r;
}

template <class R>
std::vector<FtDemoResult> run_all(const FtDemoConfig& cfg, const PrecisionContext& ctx) {
    const std::vector<double>& w = cfg.omegas.empty() ? FtDemoConfig::default_omegas() : cfg.omegas;
    std::vector<R> omegas;
    for (double v : w) omegas.push_back(R(v));
    std::vector<FtDemoResult> out;
    for (int theta : cfg.thetas)
        for (const auto& bc : cfg.bcs) out.push_back(run_case<R>(theta, bc, cfg, omegas, ctx));
    return out;
}

}  // namespace

std::vector<FtDemoResult> run_ft_demo(const FtDemoConfig& cfg) {
    if (cfg.thetas.empty()) throw DomainError("ft-demo: theta list is empty");
    if (cfg.bcs.empty()) throw DomainError("ft-demo: boundary list is empty");
    if (cfg.n < 2) throw DomainError("ft-demo: N must be >= 2");
    if (cfg.lambda < 2) throw DomainError("ft-demo: lambda must be >= 2");
    for (int theta : cfg.thetas) {
        if (theta < 1) throw DomainError("ft-demo: theta must be >= 1");
        if (theta % 2 == 0 && cfg.n % 2 == 0) throw ParityViolation(theta, cfg.n);
    }
    for (const auto& bc : cfg.bcs)
        if (bc != "zero" && bc != "exact" && bc != "method1")
            throw DomainError("ft-demo: unknown boundary provider '" + bc + "'");
    const PrecisionContext ctx(cfg.digits);
    if (ctx.high_precision()) {
        const PrecisionScope scope(ctx);
        return run_all<HighReal>(cfg, ctx);
    }
    return run_all<double>(cfg, ctx);
}

template ComplexSequence<double> spline_fourier_transform<double>(const SplineFunction<double>&,
                                                                  std::span<const double>);
template ComplexSequence<HighReal> spline_fourier_transform<HighReal>(const SplineFunction<HighReal>&,
                                                                      std::span<const HighReal>);
template Complex<double> analytic_ft_demo<double>(const double&);
template Complex<HighReal> analytic_ft_demo<HighReal>(const HighReal&);

}  // namespace splinedft
