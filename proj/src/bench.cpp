#include "splinedft/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstring>
#include <map>
#include <set>
#include <thread>
#include <tuple>

#include "json.hpp"
#include "splinedft/boundary.hpp"
#include "splinedft/cubic.hpp"
#include "splinedft/spline.hpp"

namespace splinedft {

namespace {

#include "paper_cells.inc"

bool is_cubic(const std::string& method) { return method == "cubic-ns" || method == "cubic-nak"; }

struct Job {
    int theta;
    int n;
    std::string method;
    bool reported;
};

struct Outcome {
    std::optional<ErrorReport> report;
    std::string status;
};

template <class R>
Outcome run_job(const TestFunction<R>& f, const Job& job, int lambda, const PrecisionContext& ctx) {
    Outcome out;
    const int theta = job.theta;
    const int n = job.n;
    const std::string& method = job.method;
    try {
        if (is_cubic(method)) {
            const SampleGrid<R> grid = f.sample(n);
            const CubicSpline<R> s(grid, method == "cubic-ns" ? CubicBoundary::natural : CubicBoundary::not_a_knot,
                                   ctx.tolerance());
            out.report = error_report(f, s, lambda, 3, method);
            out.status = "ok";
            return out;
        }
        const int need = required_digits(theta, n, method);
        if (ctx.digits() < need) {
            out.status = "refused: needs >= " + std::to_string(need) + " digits";
            return out;
        }
        if (theta % 2 == 0 && n % 2 == 0) {
            out.status = "skipped: ParityViolation";
            return out;
        }
        if (method == "method2" && n % 2 == 0) {
            out.status = "skipped: EvenNNotSupported";
            return out;
        }
        const SampleGrid<R> grid = f.sample(n);
        std::optional<BoundaryVector<R>> b;
        if (method == "method1") {
            b = method1_boundary(grid, theta, ctx);
        } else if (method == "method2") {
            b = method2_boundary(grid, theta, ctx);
        } else if (method == "zero") {
            b = zero_boundary(grid, theta);
        } else {
            const std::vector<R> d = f.boundary_differences(theta);
            b = exact_boundary<R>(grid, theta, d);
        }
        const SplineFunction<R> s = build_spline(grid, theta, *b, ctx);
        out.report = error_report(f, s, lambda, theta, method);
        out.status = "ok";
    } catch (const ParityViolation&) {
        out.status = "skipped: ParityViolation";
    } catch (const EvenNNotSupported&) {
        out.status = "skipped: EvenNNotSupported";
    } catch (const TooFewPoints& e) {
        out.status = std::string("skipped: TooFewPoints: ") + e.what();
    } catch (const SingularSystem& e) {
        out.status = std::string("error: SingularSystem: ") + e.what();
    } catch (const std::exception& e) {
        out.status = std::string("error: ") + e.what();
    }
    return out;
}

template <class R>
std::vector<Outcome> run_jobs(const BenchConfig& cfg, const std::vector<Job>& jobs, const PrecisionContext& ctx) {
    const TestFunction<R> f = make_test_function<R>(cfg.function);
    std::vector<Outcome> results(jobs.size());
    unsigned workers = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads) : std::thread::hardware_concurrency();
    workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(jobs.size())));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) results[i] = run_job(f, jobs[i], cfg.lambda, ctx);
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    return results;
}

std::optional<double> gain(const std::optional<double>& reference, const std::optional<double>& value) {
    if (!reference || !value || *value <= 0) return std::nullopt;
    const double g = *reference / *value;
    if (g < 1) return std::nullopt;
    return g;
}

}  // namespace

void BenchConfig::validate() const {
    const auto& ids = test_function_ids();
    if (std::find(ids.begin(), ids.end(), function) == ids.end())
        throw DomainError("bench: unknown function '" + function + "'");
    if (thetas.empty()) throw DomainError("bench: theta list is empty");
    if (ns.empty()) throw DomainError("bench: N list is empty");
    if (methods.empty()) throw DomainError("bench: method list is empty");
    for (int t : thetas)
        if (t < 1) throw DomainError("bench: theta must be >= 1, got " + std::to_string(t));
    for (int n : ns)
        if (n < 1) throw DomainError("bench: N must be >= 1, got " + std::to_string(n));
    const auto& known = bench_methods();
    for (const auto& m : methods)
        if (std::find(known.begin(), known.end(), m) == known.end())
            throw DomainError("bench: unknown method '" + m + "'");
    if (lambda < 2) throw DomainError("bench: lambda must be >= 2");
    if (digits < PrecisionContext::kBinary64Digits) throw DomainError("bench: digits must be >= 15");
    if (threads < 0) throw DomainError("bench: threads must be >= 0");
}

int required_digits(int theta, int n, const std::string& method) {
    if (method != "method1" && method != "method2") return PrecisionContext::kBinary64Digits;
    if (theta <= 5) return PrecisionContext::kBinary64Digits;
    if (theta >= 9 && n > 101) return 60;
    return 50;
}

std::optional<double> paper_cell(const std::string& function, int theta, int n, const std::string& method,
                                 bool is_max) {
    for (const auto& c : kPaperCells)
        if (function == c.function && theta == c.theta && n == c.n && method == c.method && is_max == c.is_max)
            return c.value;
    return std::nullopt;
}

std::vector<BenchRow> run_benchmark(const BenchConfig& cfg) {
    cfg.validate();
    std::vector<Job> jobs;
    std::set<std::tuple<int, int, std::string>> seen;
    for (int theta : cfg.thetas)
        for (int n : cfg.ns)
            for (const auto& m : cfg.methods) {
                const int t = is_cubic(m) ? 3 : theta;
                if (seen.emplace(t, n, m).second) jobs.push_back({t, n, m, true});
            }
    // Not-a-knot reference for the gain column.
    for (int n : cfg.ns)
        if (seen.emplace(3, n, "cubic-nak").second) jobs.push_back({3, n, "cubic-nak", false});

    const PrecisionContext ctx(cfg.digits);
    std::vector<Outcome> results;
    if (ctx.high_precision()) {
        const PrecisionScope scope(ctx);
        results = run_jobs<HighReal>(cfg, jobs, ctx);
    } else {
        results = run_jobs<double>(cfg, jobs, ctx);
    }

    std::map<int, const ErrorReport*> nak;
    for (std::size_t i = 0; i < jobs.size(); ++i)
        if (jobs[i].method == "cubic-nak" && results[i].report) nak[jobs[i].n] = &*results[i].report;

    std::vector<BenchRow> rows;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (!jobs[i].reported) continue;
        const Job& job = jobs[i];
        BenchRow row;
        row.function = cfg.function;
        row.theta = job.theta;
        row.n = job.n;
        row.method = job.method;
        row.lambda = cfg.lambda;
        row.digits = cfg.digits;
        row.status = results[i].status;
        if (const auto& r = results[i].report) {
            row.e_max = r->e_max;
            row.e_avg = r->e_avg;
            auto ref = nak.find(job.n);
            if (!is_cubic(job.method) && ref != nak.end()) {
                row.gain_max = gain(ref->second->e_max, r->e_max);
                row.gain_avg = gain(ref->second->e_avg, r->e_avg);
            }
        }
        if (cfg.lambda == 10) {
            row.paper_e_max = paper_cell(cfg.function, job.theta, job.n, job.method, true);
            row.paper_e_avg = paper_cell(cfg.function, job.theta, job.n, job.method, false);
            if (job.method == "method2") {
                row.paper_gain_max = paper_cell(cfg.function, job.theta, job.n, "gain", true);
                row.paper_gain_avg = paper_cell(cfg.function, job.theta, job.n, "gain", false);
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string format_value(double v, int digits) {
    char buf[64];
    const int mantissa = std::clamp(digits, 1, 17);
    std::snprintf(buf, sizeof buf, "%.*e", mantissa - 1, v);
    return buf;
}

namespace {

std::string opt(const std::optional<double>& v, int digits, const char* missing = "") {
    return v ? format_value(*v, digits) : missing;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
    os << "function,theta,n,method,lambda,digits,e_max,e_avg,gain_vs_nak,paper_e_max,paper_e_avg,status\n";
    for (const auto& r : rows) {
        const char* no_gain = r.ok() && !is_cubic(r.method) ? "-" : "";
        os << r.function << ',' << r.theta << ',' << r.n << ',' << r.method << ',' << r.lambda << ',' << r.digits << ','
           << opt(r.e_max, r.digits) << ',' << opt(r.e_avg, r.digits) << ',' << opt(r.gain_max, r.digits, no_gain)
           << ',' << opt(r.paper_e_max, 3) << ',' << opt(r.paper_e_avg, 3) << ',' << csv_field(r.status) << '\n';
    }
}

void write_json(std::ostream& os, const std::vector<BenchRow>& rows) {
    auto arr = nlohmann::ordered_json::array();
    auto num = [](const std::optional<double>& v, int digits) -> nlohmann::ordered_json {
        if (!v) return nullptr;
        return format_value(*v, digits);
    };
    for (const auto& r : rows) {
        nlohmann::ordered_json o;
        o["function"] = r.function;
        o["theta"] = r.theta;
        o["n"] = r.n;
        o["method"] = r.method;
        o["lambda"] = r.lambda;
        o["digits"] = r.digits;
        o["e_max"] = num(r.e_max, r.digits);
        o["e_avg"] = num(r.e_avg, r.digits);
        if (r.gain_max)
            o["gain_vs_nak"] = format_value(*r.gain_max, r.digits);
        else if (r.ok() && !is_cubic(r.method))
            o["gain_vs_nak"] = "-";
        else
            o["gain_vs_nak"] = nullptr;
        o["paper_e_max"] = num(r.paper_e_max, 3);
        o["paper_e_avg"] = num(r.paper_e_avg, 3);
        o["status"] = r.status;
        arr.push_back(std::move(o));
    }
    os << arr.dump(1) << '\n';
}

}  // namespace splinedft
