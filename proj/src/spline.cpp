#include "splinedft/spline.hpp"

#include <cmath>
#include <string>

#include "json.hpp"
#include "splinedft/errors.hpp"
#include "splinedft/kernel.hpp"

namespace splinedft {

namespace {

constexpr int kJsonVersion = 1;
constexpr const char* kJsonFormat = "splinedft.spline";

}  // namespace

template <class R>
SplineFunction<R>::SplineFunction(int theta, SampleGrid<R> grid, std::vector<std::vector<R>> deriv)
    : theta_(theta), grid_(std::move(grid)), deriv_(std::move(deriv)) {
    if (theta_ < 1) throw DomainError("spline: theta must be >= 1");
    if (deriv_.size() != static_cast<std::size_t>(theta_) + 1)
        throw LengthMismatch("spline: expected theta+1 derivative rows");
    for (const auto& row : deriv_) {
        if (row.size() != static_cast<std::size_t>(grid_.n())) throw LengthMismatch("spline: derivative row length");
        for (const auto& v : row)
            if (!is_finite(v)) throw DomainError("spline: non-finite node derivative");
    }
}

template <class R>
int SplineFunction<R>::locate(const R& t) const {
    using std::floor;
    const R lo = t_start();
    const R hi = t_end();
    if (!(t >= lo) || !(t <= hi)) throw OutOfDomain("spline: t = " + to_decimal(t) + " outside the sample interval");
    R idx = floor((t - lo) / grid_.delta_t());
    long long j = 0;
    if constexpr (is_high_real_v<R>) {
        j = idx.template convert_to<long long>();
    } else {
        j = static_cast<long long>(idx);
    }
    if (j < 0) j = 0;
    if (j > n() - 1) j = n() - 1;
    return static_cast<int>(j);
}

template <class R>
R SplineFunction<R>::evaluate_piece(int j, const R& dx, int beta) const {
    if (beta < 0 || beta > theta_)
        throw BadOrder("spline: derivative order " + std::to_string(beta) + " outside [0, " + std::to_string(theta_) +
                       "]");
    if (j < 0 || j >= n()) throw OutOfDomain("spline: piece index out of range");
    const int top = theta_ - beta;
    R s = deriv_[theta_][j];
    for (int mu = top - 1; mu >= 0; --mu) s = deriv_[mu + beta][j] + dx / R(mu + 1) * s;
    return s;
}

template <class R>
R SplineFunction<R>::eval(const R& t, int beta) const {
    if (beta < 0 || beta > theta_)
        throw BadOrder("spline: derivative order " + std::to_string(beta) + " outside [0, " + std::to_string(theta_) +
                       "]");
    const int j = locate(t);
    return evaluate_piece(j, t - grid_.node(j), beta);
}

template <class R>
R SplineFunction<R>::piece_antiderivative(int j, const R& dx) const {
    // sum_mu dx^(mu+1) / (mu+1)! deriv[mu][j], Horner form.
    R s = deriv_[theta_][j];
    for (int mu = theta_ - 1; mu >= 0; --mu) s = deriv_[mu][j] + dx / R(mu + 2) * s;
    return s * dx;
}

template <class R>
R SplineFunction<R>::integrate(const R& a, const R& b) const {
    if (!(a <= b)) throw OutOfDomain("spline integrate: need a <= b");
    const int ja = locate(a);
    const int jb = locate(b);
    if (ja == jb) return piece_antiderivative(jb, b - grid_.node(jb)) - piece_antiderivative(ja, a - grid_.node(ja));
    const R dt = grid_.delta_t();
    R total = piece_antiderivative(ja, dt) - piece_antiderivative(ja, a - grid_.node(ja));
    for (int j = ja + 1; j < jb; ++j) total += piece_antiderivative(j, dt);
    total += piece_antiderivative(jb, b - grid_.node(jb));
    return total;
}

template <class R>
SplineFunction<R> build_spline(const SampleGrid<R>& samples, int theta, const BoundaryVector<R>& b,
                               const PrecisionContext& ctx) {
    if (theta < 1) throw DomainError("build_spline: theta must be >= 1, got " + std::to_string(theta));
    if (b.theta() != theta)
        throw LengthMismatch("build_spline: boundary vector length " + std::to_string(b.theta()) + " != theta " +
                             std::to_string(theta));
    const int n = samples.n();
    const SpectralKernel<R> kernel(KernelConfig<R>(theta, n, samples.delta_t()), ctx);
    const std::size_t nn = static_cast<std::size_t>(n);
    const DftPlan<R> plan(nn);
    ComplexSequence<R> x;
    x.reserve(nn);
    for (std::size_t j = 0; j < nn; ++j) x.emplace_back(samples[j]);
    const ComplexSequence<R> f0 = plan.forward(x);

    std::vector<ComplexSequence<R>> f(static_cast<std::size_t>(theta), ComplexSequence<R>(nn));
    ComplexSequence<R> rhs(static_cast<std::size_t>(theta));
    // Real samples and B: F_{N-k} = conj(F_k), so only k <= N/2 is solved.
    for (std::size_t k = 0; k <= nn / 2; ++k) {
        for (int mu = 0; mu < theta; ++mu) rhs[mu] = Complex<R>(b[mu]);
        rhs[0] -= kernel.j_coeff(0, k) * f0[k];
        const ComplexSequence<R> sol = kernel.solve(theta, k, rhs);
        for (int mu = 0; mu < theta; ++mu) {
            f[mu][k] = sol[mu];
            if (k != 0) f[mu][nn - k] = conj(sol[mu]);
        }
    }

    std::vector<std::vector<R>> deriv;
    deriv.reserve(static_cast<std::size_t>(theta) + 1);
    deriv.emplace_back(samples.values().begin(), samples.values().begin() + n);
    for (int mu = 0; mu < theta; ++mu) {
        const ComplexSequence<R> g = plan.inverse(f[mu]);
        // Each node value is an average of the spectrum, so that bounds its size.
        R scale(0);
        for (const auto& z : f[mu]) scale += abs(z);
        scale /= R(static_cast<double>(nn));
        deriv.push_back(
            real_part_checked<R>(std::span<const Complex<R>>(g), scale, ctx.tolerance(), "node derivative"));
    }
    return SplineFunction<R>(theta, samples, std::move(deriv));
}

template <class R>
std::string spline_to_json(const SplineFunction<R>& s, const PrecisionContext& ctx) {
    nlohmann::ordered_json doc;
    doc["format"] = kJsonFormat;
    doc["version"] = kJsonVersion;
    doc["theta"] = s.theta();
    doc["N"] = s.n();
    doc["digits"] = ctx.digits();
    doc["T"] = to_decimal(s.grid().period());
    doc["t_start"] = to_decimal(s.grid().t_start());
    auto samples = nlohmann::ordered_json::array();
    for (const auto& v : s.grid().values()) samples.push_back(to_decimal(v));
    doc["samples"] = std::move(samples);
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : s.deriv()) {
        auto r = nlohmann::ordered_json::array();
        for (const auto& v : row) r.push_back(to_decimal(v));
        rows.push_back(std::move(r));
    }
    doc["deriv"] = std::move(rows);
    return doc.dump(1);
}

int spline_json_digits(const std::string& text) {
    try {
        const auto doc = nlohmann::json::parse(text);
        return doc.at("digits").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("spline json: ") + e.what());
    }
}

template <class R>
SplineFunction<R> spline_from_json(const std::string& text) {
    try {
        const auto doc = nlohmann::json::parse(text);
        if (doc.at("format").get<std::string>() != kJsonFormat) throw DomainError("spline json: unknown format");
        if (doc.at("version").get<int>() != kJsonVersion)
            throw DomainError("spline json: unsupported version " + std::to_string(doc.at("version").get<int>()));
        const int theta = doc.at("theta").get<int>();
        const int n = doc.at("N").get<int>();
        std::vector<R> values;
        for (const auto& v : doc.at("samples")) values.push_back(from_decimal<R>(v.get<std::string>()));
        if (static_cast<int>(values.size()) != n + 1) throw LengthMismatch("spline json: sample count != N+1");
        SampleGrid<R> grid(from_decimal<R>(doc.at("T").get<std::string>()), std::move(values),
                           from_decimal<R>(doc.at("t_start").get<std::string>()));
        std::vector<std::vector<R>> deriv;
        for (const auto& row : doc.at("deriv")) {
            std::vector<R> r;
            for (const auto& v : row) r.push_back(from_decimal<R>(v.get<std::string>()));
            deriv.push_back(std::move(r));
        }
        return SplineFunction<R>(theta, std::move(grid), std::move(deriv));
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("spline json: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw DomainError(std::string("spline json: bad number: ") + e.what());
    }
}

#define SPLINEDFT_INSTANTIATE(R)                                                                           \
    template class SplineFunction<R>;                                                                      \
    template SplineFunction<R> build_spline<R>(const SampleGrid<R>&, int, const BoundaryVector<R>&,         \
                                               const PrecisionContext&);                                   \
    template std::string spline_to_json<R>(const SplineFunction<R>&, const PrecisionContext&);             \
    template SplineFunction<R> spline_from_json<R>(const std::string&);

SPLINEDFT_INSTANTIATE(double)
SPLINEDFT_INSTANTIATE(HighReal)

#undef SPLINEDFT_INSTANTIATE

}  // namespace splinedft
