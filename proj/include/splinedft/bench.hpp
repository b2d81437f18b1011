#ifndef SPLINEDFT_BENCH_HPP
#define SPLINEDFT_BENCH_HPP

#include <cmath>
#include <concepts>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "splinedft/errors.hpp"
#include "splinedft/precision.hpp"
#include "splinedft/test_functions.hpp"

namespace splinedft {

struct ErrorReport {
    double e_max = 0;
    double e_avg = 0;
    int lambda = 0;
    int theta = 0;
    int n = 0;
    std::string method;
};

/// Anything exposing n(), grid() and evaluate_piece(j, dx).
template <class S, class R>
concept EvaluableSpline = requires(const S& s, int j, const R& dx) {
    { s.n() } -> std::convertible_to<int>;
    { s.evaluate_piece(j, dx) } -> std::convertible_to<R>;
    s.grid().period();
};

/// E_max over the interior refinement points t_j + m dt/lambda, m = 1..lambda-1;
/// E_avg = sum over all gamma = 0..lambda N - 1 of |f - s| divided by
/// (lambda - 1) N.
template <class R, class S>
    requires EvaluableSpline<S, R>
ErrorReport error_report(const TestFunction<R>& f, const S& s, int lambda, int theta = 0, std::string method = {}) {
    using std::abs;
    if (lambda < 2) throw DomainError("error_report: lambda must be >= 2");
    const R& period = s.grid().period();
    if (abs(period - f.period) > R(1e-12) * f.period || s.grid().t_start() != R(0))
        throw DomainMismatch("error_report: spline domain differs from the function's [0, T]");
    const int n = s.n();
    const R dts = s.grid().delta_t() / R(lambda);
    const R total = R(lambda) * R(n);
    R e_max(0);
    R sum(0);
    for (int j = 0; j < n; ++j)
        for (int m = 0; m < lambda; ++m) {
            const R t = f.period * R(j * lambda + m) / total;
            const R e = abs(f(t) - s.evaluate_piece(j, dts * R(m)));
            sum += e;
            if (m != 0 && e > e_max) e_max = e;
        }
    ErrorReport r;
    r.e_max = to_double(e_max);
    r.e_avg = to_double(R(sum / (R(lambda - 1) * R(n))));
    r.lambda = lambda;
    r.theta = theta;
    r.n = n;
    r.method = std::move(method);
    return r;
}

inline const std::vector<std::string>& bench_methods() {
    static const std::vector<std::string> m{"method1", "method2", "zero", "exact", "cubic-ns", "cubic-nak"};
    return m;
}

struct BenchConfig {
    std::string function = "g1";
    std::vector<int> thetas{3};
    std::vector<int> ns{31, 101, 501};
    std::vector<std::string> methods{"method1", "method2", "cubic-ns", "cubic-nak"};
    int lambda = 10;
    int digits = PrecisionContext::kBinary64Digits;
    /// Worker threads; 0 selects the hardware concurrency.
    int threads = 0;

    /// Throws DomainError on an unusable configuration.
    void validate() const;
};

struct BenchRow {
    std::string function;
    int theta = 0;
    int n = 0;
    std::string method;
    int lambda = 0;
    int digits = 0;
    std::optional<double> e_max;
    std::optional<double> e_avg;
    /// NAK error divided by this row's error; present only when above 1.
    std::optional<double> gain_max;
    std::optional<double> gain_avg;
    std::optional<double> paper_e_max;
    std::optional<double> paper_e_avg;
    std::optional<double> paper_gain_max;
    std::optional<double> paper_gain_avg;
    /// "ok", "skipped: <reason>", "refused: <reason>" or "error: <reason>".
    std::string status;

    bool ok() const { return status == "ok"; }
};

/// Digits required before method1/method2 are run at degree theta on N
/// subintervals; other providers run at any precision.
int required_digits(int theta, int n, const std::string& method);

/// Published cell for (function, theta, N, method); method "gain" gives the
/// table's accuracy-gain column.
std::optional<double> paper_cell(const std::string& function, int theta, int n, const std::string& method,
                                 bool is_max);

/// Rows in config order: for each theta, each N, each method. Cubic rows are
/// reported once per N with theta = 3.
std::vector<BenchRow> run_benchmark(const BenchConfig& cfg);

void write_csv(std::ostream& os, const std::vector<BenchRow>& rows);
void write_json(std::ostream& os, const std::vector<BenchRow>& rows);

/// Scientific notation with a mantissa of min(digits, 17) significant digits.
std::string format_value(double v, int digits);

}  // namespace splinedft

#endif  // SPLINEDFT_BENCH_HPP
