#include "beurling/moments.hpp"
#include "beurling/errors.hpp"
#include "beurling/quadrature.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace beurling {

std::string to_string(Schedule s) {
    return s == Schedule::logsq_eps ? "logsq_eps" : "logcube";
}

Schedule schedule_from_string(const std::string& s) {
    if (s == "logsq_eps") return Schedule::logsq_eps;
    if (s == "logcube") return Schedule::logcube;
    throw std::domain_error("unknown schedule: " + s);
}

namespace {

struct KahanSum {
    double sum = 0.0, comp = 0.0;
    void add(double v) {
        double y = v - comp;
        double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
};

std::complex<double> cpow_real(double x, std::complex<double> z) {
    return std::exp(z * std::log(x));
}

} // namespace

std::complex<double> eval_polynomial(const CoefficientSeries& series,
                                     const EvaluationPoint& point) {
    KahanSum re, im;
    for (const auto& e : series.entries) {
        double mag = e.a * std::exp(-point.sigma * e.log_nu);
        double phase = -point.t * e.log_nu;
        re.add(mag * std::cos(phase));
        im.add(mag * std::sin(phase));
    }
    return {re.sum, im.sum};
}

double moment_closed_form(const CoefficientSeries& series, double T,
                          double skip_threshold) {
    if (!(T > 0.0)) throw std::domain_error("moment_closed_form: T > 0");

    // Drop zero coefficients (shared-grid series carry explicit zeros).
    std::vector<double> w, L;
    w.reserve(series.size());
    L.reserve(series.size());
    for (const auto& e : series.entries) {
        if (e.a == 0.0) continue;
        w.push_back(e.a / e.nu);
        L.push_back(e.log_nu);
    }
    const std::size_t n = w.size();

    KahanSum diag;
    for (std::size_t j = 0; j < n; ++j) diag.add(w[j] * w[j]);

    // sin(T(Lk - Lj)) = sn_k cn_j - cn_k sn_j keeps the transcendental call
    // out of the O(n^2) pair loop.
    std::vector<double> sn(n), cn(n);
    for (std::size_t j = 0; j < n; ++j) {
        sn[j] = std::sin(T * L[j]);
        cn[j] = std::cos(T * L[j]);
    }

    const double skip_delta = skip_threshold / T;
    auto cross_range = [&](std::size_t k0, std::size_t stride) {
        KahanSum local;
        for (std::size_t k = k0; k < n; k += stride) {
            const double snk = sn[k], cnk = cn[k], Lk = L[k];
            double acc = 0.0;
            std::size_t j = 0;
            // pairs far beyond the envelope threshold are certifiably negligible
            while (j < k && Lk - L[j] > skip_delta) ++j;
            for (; j < k; ++j)
                acc += w[j] * (snk * cn[j] - cnk * sn[j]) / (Lk - L[j]);
            local.add(w[k] * acc);
        }
        return local.sum;
    };

    unsigned workers = 1;
    if (const char* env = std::getenv("BEURLING_WORKERS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 1) workers = static_cast<unsigned>(std::min<long>(v, 64));
    }

    double cross = 0.0;
    if (workers <= 1 || n < 4096) {
        cross = cross_range(1, 1);
    } else {
        std::vector<double> partial(workers, 0.0);
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t)
            pool.emplace_back([&, t] { partial[t] = cross_range(1 + t, workers); });
        for (auto& th : pool) th.join();
        KahanSum total;
        for (double p : partial) total.add(p);
        cross = total.sum;
    }
    return diag.sum + 2.0 * cross / T;
}

namespace {

struct PolyData {
    std::vector<double> freqs;
    std::vector<std::complex<double>> coeffs;
    double max_freq = 0.0;
};

PolyData poly_data(const CoefficientSeries& series) {
    PolyData d;
    for (const auto& e : series.entries) {
        if (e.a == 0.0) continue;
        d.freqs.push_back(e.log_nu);
        d.coeffs.emplace_back(e.a / e.nu, 0.0);
        d.max_freq = std::max(d.max_freq, e.log_nu);
    }
    return d;
}

int initial_panels(double span, double max_freq) {
    if (max_freq <= 0.0) return 1;
    double width = 2.0 * std::numbers::pi / (16.0 * max_freq);
    return std::max(1, static_cast<int>(std::ceil(span / width)));
}

} // namespace

double moment_quadrature(const CoefficientSeries& series, double T, double tol,
                         std::size_t max_node_terms) {
    if (!(T > 0.0)) throw std::domain_error("moment_quadrature: T > 0");
    PolyData d = poly_data(series);
    if (d.freqs.empty()) return 0.0;

    int panels = initial_panels(T, d.max_freq);
    auto level = [&](int p) {
        auto vals = dirichlet_values_on_panels(d.freqs, d.coeffs, 0.0, T, p);
        std::vector<double> sq(vals.size());
        for (std::size_t i = 0; i < vals.size(); ++i) sq[i] = std::norm(vals[i]);
        return panel_integral(sq, 0.0, T, p) / T;
    };

    double prev = level(panels);
    while (true) {
        if (static_cast<std::size_t>(panels) * 2 * d.freqs.size() > max_node_terms)
            throw accuracy_error("moment_quadrature: tolerance unreachable within "
                                 "node budget",
                                 prev, tol);
        panels *= 2;
        double cur = level(panels);
        if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
}

namespace {

// Shared pieces of the continuation formula at cutoffs N < X.
struct ContinuationParts {
    double A_N = 0.0, A_X = 0.0;
    std::size_t split = 0;  // first entry index with nu > N
};

ContinuationParts continuation_parts(const CoefficientSeries& series, double N) {
    ContinuationParts p;
    KahanSum a;
    bool counted_N = false;
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (!counted_N && series.entries[i].nu > N) {
            p.A_N = a.sum;
            p.split = i;
            counted_N = true;
        }
        a.add(series.entries[i].a);
    }
    if (!counted_N) {
        p.A_N = a.sum;
        p.split = series.size();
    }
    p.A_X = a.sum;
    return p;
}

// Correction terms of f(s) - (tail polynomial sum): pole at X scale, R(N),
// and the closed-form pieces of s int_N^X R(x) x^{-s-1} dx plus the
// constant-R tail model beyond X.
std::complex<double> continuation_corrections(const ContinuationParts& p,
                                              double rho, double N, double X,
                                              std::complex<double> s) {
    const double R_N = p.A_N - rho * N;
    const double R_X = p.A_X - rho * X;
    const std::complex<double> one(1.0, 0.0);
    std::complex<double> NmS = cpow_real(N, -s), XmS = cpow_real(X, -s);
    std::complex<double> pole = -rho * cpow_real(N, one - s) / (one - s);
    std::complex<double> rterm = -R_N * NmS;
    std::complex<double> abel = -p.A_X * XmS + p.A_N * NmS -
                                s * rho * (cpow_real(X, one - s) - cpow_real(N, one - s)) /
                                    (one - s);
    std::complex<double> tail_model = R_X * XmS;
    return pole + rterm + abel + tail_model;
}

} // namespace

std::complex<double> eval_continuation(const CoefficientSeries& series_full,
                                       double rho, double N,
                                       const EvaluationPoint& point) {
    if (!(point.t >= 1.0))
        throw std::domain_error("eval_continuation: t >= 1 (pole at s = 1)");
    if (std::abs(point.sigma - 1.0) > 1e-12)
        throw std::domain_error("eval_continuation: extension is computed at sigma = 1");
    const double X = series_full.xmax;
    if (!(X > N)) throw std::domain_error("eval_continuation: requires cutoff X > N");

    const std::complex<double> s(1.0, point.t);
    ContinuationParts parts = continuation_parts(series_full, N);

    KahanSum re, im;  // f_N plus the exact tail sum over (N, X]
    for (const auto& e : series_full.entries) {
        double mag = e.a / e.nu;
        double phase = -point.t * e.log_nu;
        re.add(mag * std::cos(phase));
        im.add(mag * std::sin(phase));
    }
    std::complex<double> f_X(re.sum, im.sum);
    return f_X + continuation_corrections(parts, rho, N, X, s);
}

MeanSquareDifference mean_square_difference(const CoefficientSeries& series_full,
                                            double rho, double N, double T,
                                            double epsilon, double tol) {
    const double ee = std::exp(std::exp(1.0));
    if (!(N > ee)) throw std::domain_error("mean_square_difference: N > e^e");
    if (!(T > 1.0)) throw std::domain_error("mean_square_difference: T > 1");
    const double X = series_full.xmax;
    if (!(X > N)) throw std::domain_error("mean_square_difference: cutoff X > N");

    ContinuationParts parts = continuation_parts(series_full, N);
    const std::complex<double> one(1.0, 0.0);

    // g(t) = f(1+it) - f_N(1+it) = tail polynomial over (N, X] + corrections
    std::vector<double> freqs;
    std::vector<std::complex<double>> coeffs;
    double max_freq = 0.0;
    for (std::size_t i = parts.split; i < series_full.size(); ++i) {
        const auto& e = series_full.entries[i];
        if (e.a == 0.0) continue;
        freqs.push_back(e.log_nu);
        coeffs.emplace_back(e.a / e.nu, 0.0);
        max_freq = std::max(max_freq, e.log_nu);
    }

    int panels = initial_panels(T - 1.0, std::max(max_freq, std::log(std::max(X, 2.0))));
    auto level = [&](int p) {
        auto vals = dirichlet_values_on_panels(freqs, coeffs, 1.0, T, p);
        auto nodes = panel_nodes(1.0, T, p);
        std::vector<double> sq(vals.size());
        for (std::size_t i = 0; i < vals.size(); ++i) {
            std::complex<double> s(1.0, nodes[i]);
            std::complex<double> g =
                vals[i] + continuation_corrections(parts, rho, N, X, s);
            sq[i] = std::norm(g);
        }
        return panel_integral(sq, 1.0, T, p) / T;
    };

    double prev = level(panels);
    double value = prev;
    for (int iter = 0; iter < 12; ++iter) {
        panels *= 2;
        double cur = level(panels);
        value = cur;
        if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) break;
        prev = cur;
    }

    MeanSquareDifference out;
    out.value = value;
    const double lN = std::log(N);
    out.bound = 1.0 / (T * T) + std::pow(lN, -3.0 - 2.0 * epsilon) +
                T * std::pow(lN, -2.0 * (1.0 + epsilon));
    out.bound_ratio = out.value / out.bound;
    return out;
}

RhsSeries rhs_series(const CoefficientSeries& series, double density) {
    RhsSeries out;
    KahanSum sum;
    double cmax = 0.0, cmax_top = 0.0;
    for (const auto& e : series.entries) {
        double q = e.a / e.nu;
        sum.add(q * q);
        cmax = std::max(cmax, std::abs(e.a));
        if (e.nu > series.xmax / 10.0) cmax_top = std::max(cmax_top, std::abs(e.a));
    }
    out.value = sum.sum;
    double model = (cmax_top > 0.0) ? cmax_top : cmax;
    out.tail_bound = (series.xmax > 0.0) ? model * density / series.xmax : 0.0;
    return out;
}

double fejer_pair_check(double T, double u) {
    if (!(T > 0.0)) throw std::domain_error("fejer_pair_check: T > 0");
    // (1/4T) int_{-4T}^{4T} (1-|t|/4T) e^{-iut} dt, even integrand
    const double H = 4.0 * T;
    int panels = std::max(16, initial_panels(H, std::abs(u)));
    double I = integrate_gl(
                   [&](double t) { return (1.0 - t / H) * std::cos(u * t); }, 0.0,
                   H, panels) /
               (2.0 * T);
    double x = 2.0 * T * u;
    double sinc = (x == 0.0) ? 1.0 : std::sin(x) / x;
    return std::abs(I - sinc * sinc);
}

std::vector<MomentReport> convergence_run(const CoefficientSeries& series_full,
                                          double density, Schedule schedule,
                                          int steps,
                                          const ConvergenceOptions& opts) {
    if (steps < 2) throw std::domain_error("convergence_run: steps >= 2");
    const double X = series_full.xmax;
    const double n0 = std::max(opts.n_min, std::exp(std::exp(1.0)) + 1.0);
    if (!(X > n0)) throw std::domain_error("convergence_run: cutoff too small");

    RhsSeries rhs = rhs_series(series_full, density);

    std::vector<MomentReport> reports;
    reports.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        double N = n0 * std::pow(X / n0, static_cast<double>(i) / (steps - 1));
        double lN = std::log(N);
        double T = (schedule == Schedule::logcube) ? lN * lN * lN
                                                   : std::pow(lN, 2.0 + opts.epsilon);

        auto t0 = std::chrono::steady_clock::now();

        CoefficientSeries head, tail;
        head.xmax = N;
        tail.xmax = X;
        head.merge_tol = tail.merge_tol = series_full.merge_tol;
        head.source = tail.source = series_full.source;
        for (const auto& e : series_full.entries)
            (e.nu <= N ? head : tail).entries.push_back(e);

        MomentReport rep;
        rep.N = N;
        rep.T = T;
        rep.schedule = schedule;
        rep.closed_form = moment_closed_form(head, T);
        if (opts.with_quadrature)
            rep.quadrature = moment_quadrature(head, T, opts.quadrature_tol);
        rep.rhs_series = rhs.value;
        rep.rhs_tail_bound = rhs.tail_bound;
        rep.discrepancy = std::abs(rep.closed_form - rhs.value);
        double tail_moment = tail.entries.empty() ? 0.0 : moment_closed_form(tail, T);
        rep.cross_bound = 2.0 * std::sqrt(std::max(0.0, rep.closed_form) *
                                          std::max(0.0, tail_moment));
        rep.wall_time = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
        reports.push_back(rep);
    }
    return reports;
}

std::string reports_to_csv(const std::vector<MomentReport>& reports) {
    std::ostringstream os;
    os << "N,T,closed_form,quadrature,rhs,tail,discrepancy,cross_bound,schedule,seconds\n";
    char buf[64];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << buf;
    };
    for (const auto& r : reports) {
        put(r.N); os << ',';
        put(r.T); os << ',';
        put(r.closed_form); os << ',';
        if (r.quadrature) put(*r.quadrature);
        os << ',';
        put(r.rhs_series); os << ',';
        put(r.rhs_tail_bound); os << ',';
        put(r.discrepancy); os << ',';
        put(r.cross_bound); os << ',';
        os << to_string(r.schedule) << ',';
        put(r.wall_time);
        os << '\n';
    }
    return os.str();
}

std::string reports_to_json(const std::vector<MomentReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json j;
        j["N"] = r.N;
        j["T"] = r.T;
        j["closed_form"] = r.closed_form;
        if (r.quadrature) j["quadrature"] = *r.quadrature;
        j["rhs"] = r.rhs_series;
        j["tail"] = r.rhs_tail_bound;
        j["discrepancy"] = r.discrepancy;
        j["cross_bound"] = r.cross_bound;
        j["schedule"] = to_string(r.schedule);
        j["seconds"] = r.wall_time;
        arr.push_back(j);
    }
    return arr.dump(2) + "\n";
}

} // namespace beurling
