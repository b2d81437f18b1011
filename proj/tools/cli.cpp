#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "splinedft/bench.hpp"
#include "splinedft/boundary.hpp"
#include "splinedft/fourier.hpp"
#include "splinedft/kernel.hpp"
#include "splinedft/spline.hpp"
#include "splinedft/test_functions.hpp"

namespace splinedft::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const char* const kVersion = "1.0.0";

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    if (trim(s).empty()) return out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(trim(item));
    return out;
}

// Strict decimal check; the value itself is re-read at the working precision.
double parse_real(const std::string& s, const std::string& what) {
    double v = 0;
    const char* b = s.data();
    const char* e = s.data() + s.size();
    if (!s.empty() && *b == '+') ++b;
    const auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e || !std::isfinite(v))
        throw UsageError(what + ": '" + s + "' is not a finite number");
    return v;
}

int parse_int(const std::string& s, const std::string& what) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw UsageError(what + ": '" + s + "' is not an integer");
    return v;
}

std::vector<int> parse_int_list(const std::string& s, const std::string& what) {
    std::vector<int> out;
    for (const auto& item : split(s, ',')) out.push_back(parse_int(item, what));
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write '" + path + "'");
    f << content;
    if (!f) throw IoError("write to '" + path + "' failed");
}

std::string utc_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream ss;
    ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return ss.str();
}

// Run metadata lives next to the data file so the data itself stays
// byte-identical across runs.
void write_sidecar(const std::string& data_path, const std::vector<std::string>& args, int digits) {
    nlohmann::ordered_json meta;
    meta["tool"] = "splinedft";
    meta["version"] = kVersion;
    meta["args"] = args;
    meta["digits"] = digits;
    meta["finished_utc"] = utc_now();
    write_file(data_path + ".meta.json", meta.dump(2) + "\n");
}

int resolve_digits(int flag_value, std::ostream& err) {
    if (const char* env = std::getenv("SPLINEDFT_DIGITS"); env && *env) {
        const int d = parse_int(trim(env), "SPLINEDFT_DIGITS");
        if (d != flag_value) err << "note: SPLINEDFT_DIGITS=" << d << " overrides --digits\n";
        flag_value = d;
    }
    if (flag_value < PrecisionContext::kBinary64Digits)
        throw UsageError("digits must be >= " + std::to_string(PrecisionContext::kBinary64Digits));
    return flag_value;
}

// ---------------------------------------------------------------- interpolate

struct InterpolateOptions {
    std::string input;
    std::string values;
    std::string period;
    int theta = 0;
    std::string bc = "method2";
    std::string eval_at;
    int derivs = 0;
    std::string emit_spline;
    std::string from_spline;
    std::string out;
    int digits = PrecisionContext::kBinary64Digits;
    bool verbose = false;
};

struct RawSamples {
    std::vector<std::string> t;  // empty when --values was used
    std::vector<std::string> v;
};

RawSamples read_samples_csv(const std::string& path) {
    RawSamples raw;
    std::istringstream in(read_file(path));
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split(line, ',');
        if (fields.size() != 2)
            throw UsageError(path + ":" + std::to_string(lineno) + ": expected 't,value', got '" + line + "'");
        // A non-numeric first data line is a header.
        if (raw.t.empty()) {
            try {
                parse_real(fields[0], "t");
            } catch (const UsageError&) {
                continue;
            }
        }
        parse_real(fields[0], path + ":" + std::to_string(lineno) + ": t");
        parse_real(fields[1], path + ":" + std::to_string(lineno) + ": value");
        raw.t.push_back(fields[0]);
        raw.v.push_back(fields[1]);
    }
    return raw;
}

template <class R>
std::vector<R> eval_points(const std::string& spec, const SampleGrid<R>& grid) {
    const int n = grid.n();
    std::vector<R> pts;
    if (spec == "nodes") {
        for (int j = 0; j <= n; ++j) pts.push_back(grid.node(j));
        return pts;
    }
    const auto parts = split(spec, ':');
    if (parts.size() == 2 && parts[0] == "refine") {
        const int lambda = parse_int(parts[1], "--eval-at refine");
        if (lambda < 1) throw UsageError("--eval-at refine:L needs L >= 1");
        const R step = grid.delta_t() / R(lambda);
        for (int j = 0; j < n; ++j)
            for (int m = 0; m < lambda; ++m) pts.push_back(grid.node(j) + step * R(m));
        pts.push_back(grid.node(n));
        return pts;
    }
    if (parts.size() == 4 && parts[0] == "linspace") {
        parse_real(parts[1], "--eval-at linspace a");
        parse_real(parts[2], "--eval-at linspace b");
        const R a = from_decimal<R>(parts[1]);
        const R b = from_decimal<R>(parts[2]);
        const int count = parse_int(parts[3], "--eval-at linspace n");
        if (count < 1) throw UsageError("--eval-at linspace needs n >= 1");
        if (count == 1) return {a};
        for (int i = 0; i < count; ++i) pts.push_back(i == count - 1 ? b : a + (b - a) * R(i) / R(count - 1));
        return pts;
    }
    throw UsageError("--eval-at: expected nodes, refine:L or linspace:a:b:n, got '" + spec + "'");
}

template <class R>
std::string evaluation_csv(const SplineFunction<R>& s, const std::vector<R>& pts, int derivs) {
    if (derivs < 0 || derivs > s.theta())
        throw UsageError("--derivs must be in [0, theta=" + std::to_string(s.theta()) + "]");
    std::ostringstream os;
    os << "t,value";
    for (int b = 1; b <= derivs; ++b) os << ",d" << b;
    os << '\n';
    for (const R& t : pts) {
        os << to_decimal(t);
        for (int b = 0; b <= derivs; ++b) os << ',' << to_decimal(s.eval(t, b));
        os << '\n';
    }
    return os.str();
}

template <class R>
SampleGrid<R> build_grid(const RawSamples& raw, const std::string& period) {
    if (raw.v.size() < 2) throw UsageError("need at least 2 samples (N = rows - 1 >= 1), got " +
                                           std::to_string(raw.v.size()));
    std::vector<R> v;
    v.reserve(raw.v.size());
    for (const auto& s : raw.v) v.push_back(from_decimal<R>(s));
    if (raw.t.empty()) return SampleGrid<R>(from_decimal<R>(period), std::move(v));

    const std::size_t n = raw.t.size() - 1;
    std::vector<R> t;
    for (const auto& s : raw.t) t.push_back(from_decimal<R>(s));
    const R span = t.back() - t.front();
    if (!(span > R(0))) throw UsageError("t must be strictly ascending");
    const R dt = span / R(n);
    using std::abs;
    for (std::size_t j = 1; j <= n; ++j) {
        if (!(t[j] > t[j - 1])) throw UsageError("t must be strictly ascending (row " + std::to_string(j) + ")");
        const R expected = t.front() + span * R(j) / R(n);
        if (abs(t[j] - expected) > R(1e-9) * dt)
            throw UsageError("samples are not equispaced: t[" + std::to_string(j) + "] = " + raw.t[j] +
                             " deviates from " + to_decimal(expected) + " by more than 1e-9 dt");
    }
    return SampleGrid<R>(span, std::move(v), t.front());
}

template <class R>
BoundaryVector<R> choose_boundary(const InterpolateOptions& o, const SampleGrid<R>& grid, const PrecisionContext& ctx,
                                  std::ostream& err) {
    const int theta = o.theta;
    const int n = grid.n();
    if (o.bc == "method1" || o.bc == "method2") {
        if (n < theta + 1)
            err << "warning: N=" << n << " < theta+1=" << theta + 1
                << "; the boundary system is likely ill-conditioned\n";
        const int need = required_digits(theta, n, o.bc);
        if (ctx.digits() < need)
            err << "warning: theta=" << theta << ", N=" << n << " usually needs --digits " << need
                << " for accurate boundary conditions\n";
        return o.bc == "method1" ? method1_boundary(grid, theta, ctx) : method2_boundary(grid, theta, ctx);
    }
    if (o.bc == "zero") return zero_boundary(grid, theta);
    const std::string prefix = "exact-file=";
    if (o.bc.rfind(prefix, 0) == 0) {
        const std::string path = o.bc.substr(prefix.size());
        std::istringstream in(read_file(path));
        std::vector<R> d;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            line = trim(line);
            if (line.empty() || line[0] == '#') continue;
            parse_real(line, path + ":" + std::to_string(lineno));
            d.push_back(from_decimal<R>(line));
        }
        return exact_boundary<R>(grid, theta, d);
    }
    throw UsageError("--bc: expected method1, method2, zero or exact-file=PATH, got '" + o.bc + "'");
}

template <class R>
int interpolate_impl(const InterpolateOptions& o, const std::vector<std::string>& args, const PrecisionContext& ctx,
                     std::ostream& out, std::ostream& err) {
    RawSamples raw;
    if (!o.input.empty()) {
        raw = read_samples_csv(o.input);
    } else {
        for (const auto& s : split(o.values, ',')) {
            parse_real(s, "--values");
            raw.v.push_back(s);
        }
        parse_real(o.period, "--T");
    }
    const SampleGrid<R> grid = build_grid<R>(raw, o.period);
    if (o.theta < 1) throw UsageError("--theta must be >= 1");
    const BoundaryVector<R> b = choose_boundary(o, grid, ctx, err);
    if (o.verbose) {
        err << "N=" << grid.n() << " dt=" << to_decimal(grid.delta_t()) << "\nB =";
        for (const auto& v : b.b()) err << ' ' << to_decimal(v);
        err << '\n';
    }
    const SplineFunction<R> s = build_spline(grid, o.theta, b, ctx);
    if (!o.emit_spline.empty()) {
        write_file(o.emit_spline, spline_to_json(s, ctx));
        write_sidecar(o.emit_spline, args, ctx.digits());
    }
    if (!o.eval_at.empty()) {
        const std::string csv = evaluation_csv(s, eval_points(o.eval_at, grid), o.derivs);
        if (o.out.empty()) {
            out << csv;
        } else {
            write_file(o.out, csv);
            write_sidecar(o.out, args, ctx.digits());
        }
    }
    return kOk;
}

template <class R>
int from_spline_impl(const InterpolateOptions& o, const std::string& text, const std::vector<std::string>& args,
                     int digits, std::ostream& out) {
    const SplineFunction<R> s = spline_from_json<R>(text);
    const std::string csv = evaluation_csv(s, eval_points(o.eval_at, s.grid()), o.derivs);
    if (o.out.empty()) {
        out << csv;
    } else {
        write_file(o.out, csv);
        write_sidecar(o.out, args, digits);
    }
    return kOk;
}

int interpolate(const InterpolateOptions& o, const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
    if (!o.from_spline.empty()) {
        if (!o.input.empty() || !o.values.empty() || !o.emit_spline.empty())
            throw UsageError("--from-spline cannot be combined with sample input or --emit-spline");
        if (o.eval_at.empty()) throw UsageError("--from-spline needs --eval-at");
        const std::string text = read_file(o.from_spline);
        const int digits = spline_json_digits(text);
        const PrecisionContext ctx(digits);
        if (ctx.high_precision()) {
            const PrecisionScope scope(ctx);
            return from_spline_impl<HighReal>(o, text, args, digits, out);
        }
        return from_spline_impl<double>(o, text, args, digits, out);
    }
    if (o.input.empty() == o.values.empty()) throw UsageError("give exactly one of INPUT or --values");
    if (!o.values.empty() && o.period.empty()) throw UsageError("--values needs --T");
    if (!o.input.empty() && !o.period.empty()) throw UsageError("--T only applies to --values");
    if (o.theta == 0) throw UsageError("--theta is required");
    if (o.eval_at.empty() && o.emit_spline.empty()) throw UsageError("nothing to do: give --eval-at and/or --emit-spline");

    const PrecisionContext ctx(resolve_digits(o.digits, err));
    if (ctx.high_precision()) {
        const PrecisionScope scope(ctx);
        return interpolate_impl<HighReal>(o, args, ctx, out, err);
    }
    return interpolate_impl<double>(o, args, ctx, out, err);
}

// ---------------------------------------------------------------- bench/table

struct BenchOptions {
    std::string function = "g1";
    std::string thetas = "3";
    std::string ns = "31,101,501";
    std::string bcs = "method1,method2,cubic-ns,cubic-nak";
    int lambda = 10;
    std::string digits = "15";
    int threads = 0;
    std::string out;
    std::string format = "csv";
};

int digits_for(const std::string& flag, const BenchConfig& cfg, std::ostream& err) {
    if (flag == "auto") {
        int d = PrecisionContext::kBinary64Digits;
        for (int t : cfg.thetas)
            for (int n : cfg.ns)
                for (const auto& m : cfg.methods) d = std::max(d, required_digits(t, n, m));
        if (const char* env = std::getenv("SPLINEDFT_DIGITS"); env && *env) return resolve_digits(d, err);
        return d;
    }
    return resolve_digits(parse_int(flag, "--digits"), err);
}

int bench(const BenchOptions& o, const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    if (o.format != "csv" && o.format != "json") throw UsageError("--format must be csv or json");
    BenchConfig cfg;
    cfg.function = o.function;
    cfg.thetas = parse_int_list(o.thetas, "--theta");
    cfg.ns = parse_int_list(o.ns, "--n");
    cfg.methods = split(o.bcs, ',');
    cfg.lambda = o.lambda;
    cfg.threads = o.threads;
    cfg.digits = digits_for(o.digits, cfg, err);
    cfg.validate();

    const auto rows = run_benchmark(cfg);
    std::ostringstream os;
    if (o.format == "csv")
        write_csv(os, rows);
    else
        write_json(os, rows);
    if (o.out.empty()) {
        out << os.str();
    } else {
        write_file(o.out, os.str());
        write_sidecar(o.out, args, cfg.digits);
    }
    for (const auto& r : rows)
        if (!r.ok()) err << "row theta=" << r.theta << " N=" << r.n << " " << r.method << ": " << r.status << '\n';
    return kOk;
}

struct TableOptions {
    std::string function = "g1";
    int theta = 3;
    std::string digits = "auto";
    int threads = 0;
    std::string format = "text";
    std::string out;
};

std::string ratio(const std::optional<double>& v, const std::optional<double>& p) {
    if (!v || !p || *p == 0) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", *v / *p);
    return buf;
}

std::string text_table(const std::vector<BenchRow>& rows, const BenchConfig& cfg) {
    std::ostringstream os;
    os << cfg.function << "  theta=" << cfg.thetas.front() << "  lambda=" << cfg.lambda << "  digits=" << cfg.digits
       << "\n";
    os << std::left << std::setw(6) << "N" << std::setw(11) << "method" << std::setw(6) << "err" << std::setw(12)
       << "value" << std::setw(12) << "paper" << std::setw(9) << "ratio" << std::setw(12) << "gain"
       << std::setw(12) << "paper gain" << "status\n";
    for (const auto& r : rows) {
        for (int which = 0; which < 2; ++which) {
            const bool mx = which == 0;
            const auto& v = mx ? r.e_max : r.e_avg;
            const auto& p = mx ? r.paper_e_max : r.paper_e_avg;
            const auto& g = mx ? r.gain_max : r.gain_avg;
            const auto& pg = mx ? r.paper_gain_max : r.paper_gain_avg;
            os << std::setw(6) << r.n << std::setw(11) << r.method << std::setw(6) << (mx ? "max" : "avg")
               << std::setw(12) << (v ? format_value(*v, 3) : "") << std::setw(12) << (p ? format_value(*p, 3) : "")
               << std::setw(9) << ratio(v, p) << std::setw(12)
               << (g ? format_value(*g, 3) : (r.method.rfind("cubic", 0) == 0 || !r.ok() ? "" : "-"))
               << std::setw(12) << (pg ? format_value(*pg, 3) : "") << (mx ? r.status : "") << '\n';
        }
    }
    return os.str();
}

int table(const TableOptions& o, const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    if (o.format != "text" && o.format != "csv" && o.format != "json")
        throw UsageError("--format must be text, csv or json");
    BenchConfig cfg;
    cfg.function = o.function;
    cfg.thetas = {o.theta};
    cfg.ns = {31, 101, 501};
    cfg.methods = {"method1", "method2"};
    if (o.theta == 3) cfg.methods.push_back("cubic-ns");
    cfg.methods.push_back("cubic-nak");
    cfg.threads = o.threads;
    cfg.digits = digits_for(o.digits, cfg, err);
    cfg.validate();
    const auto rows = run_benchmark(cfg);
    std::ostringstream os;
    if (o.format == "text")
        os << text_table(rows, cfg);
    else if (o.format == "csv")
        write_csv(os, rows);
    else
        write_json(os, rows);
    if (o.out.empty()) {
        out << os.str();
    } else {
        write_file(o.out, os.str());
        write_sidecar(o.out, args, cfg.digits);
    }
    return kOk;
}

// ---------------------------------------------------------------- ft-demo

struct FtOptions {
    int n = 8192;
    std::string thetas = "3,5,7,9,11";
    std::string bcs = "zero,method1,exact";
    std::string omega_grid = "0:700:0.5";
    int lambda = 8;
    int digits = PrecisionContext::kBinary64Digits;
    std::string out = "ft-demo";
};

std::vector<double> parse_omega_grid(const std::string& spec) {
    const auto parts = split(spec, ':');
    if (parts.size() == 3) {
        const double a = parse_real(parts[0], "--omega-grid start");
        const double b = parse_real(parts[1], "--omega-grid stop");
        const double step = parse_real(parts[2], "--omega-grid step");
        if (!(step > 0) || b < a) throw UsageError("--omega-grid a:b:step needs step > 0 and b >= a");
        const auto count = static_cast<long long>(std::floor((b - a) / step + 1e-9)) + 1;
        if (count > 10'000'000) throw UsageError("--omega-grid has too many points");
        std::vector<double> w;
        for (long long i = 0; i < count; ++i) w.push_back(a + step * static_cast<double>(i));
        return w;
    }
    std::vector<double> w;
    for (const auto& s : split(spec, ',')) w.push_back(parse_real(s, "--omega-grid"));
    if (w.empty()) throw UsageError("--omega-grid is empty");
    return w;
}

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int ft_demo(const FtOptions& o, const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    FtDemoConfig cfg;
    cfg.n = o.n;
    cfg.thetas = parse_int_list(o.thetas, "--theta");
    cfg.bcs = split(o.bcs, ',');
    cfg.omegas = parse_omega_grid(o.omega_grid);
    cfg.lambda = o.lambda;
    cfg.digits = resolve_digits(o.digits, err);
    const auto results = run_ft_demo(cfg);

    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(o.out, ec);
    if (ec) throw IoError("cannot create '" + o.out + "': " + ec.message());
    std::ostringstream summary;
    summary << "theta,bc,status,ft_max_error,time_max_error\n";
    for (const auto& r : results) {
        summary << r.theta << ',' << r.bc << ',' << r.status << ',';
        if (r.ok()) summary << g17(r.ft_max_error) << ',' << g17(r.time_max_error);
        summary << '\n';
        if (!r.ok()) {
            err << "theta=" << r.theta << " bc=" << r.bc << ": " << r.status << '\n';
            continue;
        }
        const std::string stem = "theta" + std::to_string(r.theta) + "_" + r.bc;
        std::ostringstream fe, td;
        fe << "omega,abs_error\n";
        for (std::size_t i = 0; i < r.omega.size(); ++i) fe << g17(r.omega[i]) << ',' << g17(r.ft_error[i]) << '\n';
        td << "t,difference\n";
        for (std::size_t i = 0; i < r.t.size(); ++i) td << g17(r.t[i]) << ',' << g17(r.difference[i]) << '\n';
        write_file((fs::path(o.out) / ("ft_error_" + stem + ".csv")).string(), fe.str());
        write_file((fs::path(o.out) / ("difference_" + stem + ".csv")).string(), td.str());
    }
    const std::string summary_path = (fs::path(o.out) / "summary.csv").string();
    write_file(summary_path, summary.str());
    write_sidecar((fs::path(o.out) / "run").string(), args, cfg.digits);
    out << summary.str();
    return kOk;
}

// ---------------------------------------------------------------- selftest

int selftest(std::ostream& out) {
    int failed = 0;
    auto check = [&](const std::string& name, bool ok) {
        out << (ok ? "PASS " : "FAIL ") << name << '\n';
        if (!ok) ++failed;
    };
    auto guarded = [&](const std::string& name, auto&& fn) {
        try {
            check(name, fn());
        } catch (const std::exception& e) {
            out << "FAIL " << name << " (" << e.what() << ")\n";
            ++failed;
        }
    };

    guarded("eulerian row sums equal theta!", [] {
        BigInt fact = 1;
        for (int t = 1; t <= 12; ++t) {
            fact *= t;
            BigInt sum = 0;
            for (const auto& a : eulerian_row(t)) sum += a;
            if (sum != fact) return false;
        }
        return true;
    });
    guarded("idft(dft(x)) = x", [] {
        ComplexSequence<double> x;
        for (int j = 0; j < 31; ++j) x.emplace_back(std::sin(1.3 * j), std::cos(0.7 * j * j));
        const auto y = idft<double>(dft<double>(x));
        double e = 0;
        for (std::size_t j = 0; j < x.size(); ++j) e = std::max(e, abs(y[j] - x[j]));
        return e < 1e-12;
    });
    guarded("det_m agrees with LU determinant", [] {
        const KernelConfig<double> cfg(5, 7, 0.3);
        for (int k = 0; k < 7; ++k) {
            const auto lu = LuDecomposition<double>(assemble_m(5, k, cfg), 1e-13).determinant();
            if (abs(lu - det_m(5, k, cfg)) > 1e-12 * std::pow(0.3, 5)) return false;
        }
        return true;
    });
    guarded("g1 theta=3 N=31 method2 E_max near 1.44e-3", [] {
        BenchConfig cfg;
        cfg.ns = {31};
        cfg.methods = {"method2"};
        cfg.threads = 1;
        const auto rows = run_benchmark(cfg);
        return rows.size() == 1 && rows[0].e_max && *rows[0].e_max > 0.72e-3 && *rows[0].e_max < 2.88e-3;
    });
    guarded("g3 theta=11 exact boundary reproduces the polynomial", [] {
        BenchConfig cfg;
        cfg.function = "g3";
        cfg.thetas = {11};
        cfg.ns = {31};
        cfg.methods = {"exact"};
        cfg.threads = 1;
        const auto rows = run_benchmark(cfg);
        return rows.size() == 1 && rows[0].e_max && *rows[0].e_max <= 1e-9;
    });
    out << (failed == 0 ? "selftest: all checks passed\n" : "selftest: " + std::to_string(failed) + " failed\n");
    return failed == 0 ? kOk : kSelftestFailed;
}

int exit_code_for(const std::exception_ptr& ep, std::ostream& err) {
    try {
        std::rethrow_exception(ep);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIo;
    } catch (const ParityViolation& e) {
        err << "error: " << e.what() << '\n';
        return kParity;
    } catch (const EvenNNotSupported& e) {
        err << "error: " << e.what() << '\n';
        return kParity;
    } catch (const SingularSystem& e) {
        err << "error: " << e.what() << '\n';
        return kSingular;
    } catch (const SingularMatrix& e) {
        err << "error: " << e.what() << '\n';
        return kSingular;
    } catch (const ImaginaryResidue& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    } catch (const Error& e) {
        // DomainError, TooFewPoints, LengthMismatch, OutOfDomain, BadOrder, ...
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const nlohmann::json::exception& e) {
        err << "error: malformed spline document: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"splinedft: arbitrary-degree splines from equispaced samples via the DFT"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    InterpolateOptions io;
    auto* interp = app.add_subcommand("interpolate", "Build a spline from samples and evaluate or serialize it");
    interp->footer(
        "INPUT is a CSV of 't,value' rows with equispaced, ascending t (an optional header\n"
        "line and '#' comments are skipped). N, the number of subintervals, is the number\n"
        "of sample rows minus one: 32 rows give N = 31. theta and N may not both be even,\n"
        "and --bc method2 needs odd N.\n"
        "--bc exact-file=PATH reads b_1..b_{theta-1}, one per line; b_0 = g_N - g_0 always\n"
        "comes from the data.\n"
        "Exit codes: 0 ok, 2 malformed input or usage, 3 parity violation, 4 singular\n"
        "system, 5 I/O failure, 1 internal error.");
    interp->add_option("input", io.input, "Samples CSV (t,value)");
    interp->add_option("--values", io.values, "Comma-separated sample values g_0..g_N (needs --T)");
    interp->add_option("--T", io.period, "Interval length T for --values");
    interp->add_option("--theta", io.theta, "Spline degree (>= 1)");
    interp->add_option("--bc", io.bc, "method1 | method2 | zero | exact-file=PATH")->capture_default_str();
    interp->add_option("--eval-at", io.eval_at, "nodes | refine:L | linspace:a:b:n");
    interp->add_option("--derivs", io.derivs, "Also write derivatives d1..dBETA")->capture_default_str();
    interp->add_option("--emit-spline", io.emit_spline, "Write the serialized spline (JSON) to PATH");
    interp->add_option("--from-spline", io.from_spline, "Evaluate a previously serialized spline");
    interp->add_option("--out", io.out, "Write evaluations to PATH instead of stdout");
    interp->add_option("--digits", io.digits, "Significant digits (15 = binary64; SPLINEDFT_DIGITS overrides)")
        ->capture_default_str();
    interp->add_flag("--verbose", io.verbose, "Print N, dt and B to stderr");

    BenchOptions bo;
    auto* bench_cmd = app.add_subcommand("bench", "Error table for one test function");
    bench_cmd->footer("Methods: method1, method2, zero, exact, cubic-ns, cubic-nak. Rows that violate a\n"
                      "parity constraint or need more digits are reported with a status, not run.\n"
                      "--digits auto picks the precision each requested row needs.");
    bench_cmd->add_option("--function", bo.function, "g1 | g2 | g3 | g4 | ft_demo")->capture_default_str();
    bench_cmd->add_option("--theta", bo.thetas, "Comma-separated degrees")->capture_default_str();
    bench_cmd->add_option("--n", bo.ns, "Comma-separated subinterval counts N")->capture_default_str();
    bench_cmd->add_option("--bc", bo.bcs, "Comma-separated methods")->capture_default_str();
    bench_cmd->add_option("--lambda", bo.lambda, "Refinement factor (>= 2)")->capture_default_str();
    bench_cmd->add_option("--digits", bo.digits, "Significant digits or 'auto'")->capture_default_str();
    bench_cmd->add_option("--threads", bo.threads, "Worker threads (0 = hardware)")->capture_default_str();
    bench_cmd->add_option("--out", bo.out, "Output path (default stdout)");
    bench_cmd->add_option("--format", bo.format, "csv | json")->capture_default_str();

    TableOptions to;
    auto* table_cmd = app.add_subcommand("table", "Reproduce one published comparison table (N = 31, 101, 501)");
    table_cmd->add_option("--function", to.function, "g1 | g2 | g3 | g4")->capture_default_str();
    table_cmd->add_option("--theta", to.theta, "Degree")->capture_default_str();
    table_cmd->add_option("--digits", to.digits, "Significant digits or 'auto'")->capture_default_str();
    table_cmd->add_option("--threads", to.threads, "Worker threads (0 = hardware)")->capture_default_str();
    table_cmd->add_option("--format", to.format, "text | csv | json")->capture_default_str();
    table_cmd->add_option("--out", to.out, "Output path (default stdout)");

    FtOptions fo;
    auto* ft_cmd = app.add_subcommand("ft-demo", "Fourier transform of splines of cos(60t)exp(-2t) on [0, 81.92]");
    ft_cmd->footer("Writes summary.csv, ft_error_theta<T>_<bc>.csv (omega,abs_error) and\n"
                   "difference_theta<T>_<bc>.csv (t,f-s on the lambda refinement) into --out.\n"
                   "N is even, so theta must be odd (exit 3 otherwise).");
    ft_cmd->add_option("--n", fo.n, "Subintervals N")->capture_default_str();
    ft_cmd->add_option("--theta", fo.thetas, "Comma-separated odd degrees")->capture_default_str();
    ft_cmd->add_option("--bc", fo.bcs, "Comma-separated: zero, method1, exact")->capture_default_str();
    ft_cmd->add_option("--omega-grid", fo.omega_grid, "start:stop:step or a comma list")->capture_default_str();
    ft_cmd->add_option("--lambda", fo.lambda, "Time-domain refinement")->capture_default_str();
    ft_cmd->add_option("--digits", fo.digits, "Significant digits")->capture_default_str();
    ft_cmd->add_option("--out", fo.out, "Output directory")->capture_default_str();

    auto* self_cmd = app.add_subcommand("selftest", "Quick internal consistency checks");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << '\n';
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (interp->parsed()) return interpolate(io, args, out, err);
        if (bench_cmd->parsed()) return bench(bo, args, out, err);
        if (table_cmd->parsed()) return table(to, args, out, err);
        if (ft_cmd->parsed()) return ft_demo(fo, args, out, err);
        if (self_cmd->parsed()) return selftest(out);
    } catch (...) {
        return exit_code_for(std::current_exception(), err);
    }
    return kInternal;
}

}  // namespace splinedft::cli
