// gprimelab: batch front end for generalized prime systems, Euler-product
// expansions, and second-moment experiments at sigma = 1.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "beurling/counting.hpp"
#include "beurling/errors.hpp"
#include "beurling/geodesic.hpp"
#include "beurling/gprime_system.hpp"
#include "beurling/moments.hpp"
#include "beurling/series.hpp"

namespace {

using namespace beurling;
using nlohmann::json;

void write_file(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write: " + path);
    out << text;
}

// ---- system gen ----------------------------------------------------------

struct SystemSpec {
    std::string kind = "rational";
    double xmax = 100.0;
    int count = 100;
    double alpha = 0.5;
    std::uint64_t seed = 1;
    double jitter_amplitude = 0.49;
};

GPrimeSystem build_system(const SystemSpec& s) {
    switch (system_kind_from_string(s.kind)) {
        case SystemKind::rational:   return gen_rational_primes(s.xmax);
        case SystemKind::li_inverse: return gen_li_inverse_system(s.count);
        case SystemKind::jittered:
            return gen_jittered_system(s.count, s.alpha, s.seed, s.jitter_amplitude);
        case SystemKind::geodesic:   return geodesic_system(s.xmax);
    }
    throw std::domain_error("unreachable");
}

int cmd_system_gen(const SystemSpec& spec, const std::string& out) {
    write_file(out, to_json(build_system(spec)));
    return 0;
}

// ---- expand ---------------------------------------------------------------

struct ExpandSpec {
    std::string system_path;
    double xmax = 0.0;  // 0: use the system cutoff
    double merge_tol = 1e-9;
    std::vector<std::string> tags = {"d", "e"};
    std::string out_prefix = "series";
    std::string format = "json";  // json|csv|both
};

int cmd_expand(const ExpandSpec& spec) {
    GPrimeSystem sys = load_system(spec.system_path);
    double xmax = spec.xmax > 0.0 ? spec.xmax : sys.xmax;
    ExpandOptions opts;
    opts.merge_tol = spec.merge_tol;
    for (const auto& tag : spec.tags) {
        CoefficientSeries s;
        if (tag == "d" || tag == "ruelle_c")
            s = expand_integers(sys, xmax, opts);
        else if (tag == "e" || tag == "ruelle_b")
            s = expand_reciprocal(sys, xmax, opts);
        else
            throw CLI::ValidationError("expand", "unknown tag: " + tag);
        std::string actual = to_string(s.tag);
        if (spec.format == "json" || spec.format == "both")
            write_file(spec.out_prefix + "." + actual + ".json", series_to_json(s));
        if (spec.format == "csv" || spec.format == "both")
            write_file(spec.out_prefix + "." + actual + ".csv", series_to_csv(s));
    }
    return 0;
}

// ---- moment ----------------------------------------------------------------

struct MomentSpec {
    std::string series_path;
    double T = 100.0;
    std::string engine = "closed";  // closed|quadrature|both
    double tol = 1e-8;
    std::string out;
};

int cmd_moment(const MomentSpec& spec) {
    CoefficientSeries s = load_series(spec.series_path);
    json j;
    j["T"] = spec.T;
    j["series"] = spec.series_path;
    if (spec.engine == "closed" || spec.engine == "both")
        j["closed_form"] = moment_closed_form(s, spec.T);
    if (spec.engine == "quadrature" || spec.engine == "both")
        j["quadrature"] = moment_quadrature(s, spec.T, spec.tol);
    write_file(spec.out, j.dump(2) + "\n");
    return 0;
}

// ---- continue-eval ----------------------------------------------------------

struct ContinueSpec {
    std::string series_path;
    double rho = 1.0;
    double N = 1000.0;
    std::vector<double> t_values = {1.0};
    std::string out;
};

int cmd_continue_eval(const ContinueSpec& spec) {
    CoefficientSeries s = load_series(spec.series_path);
    json arr = json::array();
    for (double t : spec.t_values) {
        auto v = eval_continuation(s, spec.rho, spec.N, {1.0, t});
        arr.push_back({{"t", t}, {"re", v.real()}, {"im", v.imag()}});
    }
    write_file(spec.out, arr.dump(2) + "\n");
    return 0;
}

// ---- verify -----------------------------------------------------------------

struct VerifySpec {
    std::string system_path;
    std::string kind;  // build in-process when no path is given
    double xmax = 1e4;
    double merge_tol = 1e-9;
    std::uint64_t seed = 1;
    std::string out;
};

int cmd_verify(const VerifySpec& spec) {
    GPrimeSystem sys = spec.system_path.empty()
                           ? build_system({spec.kind.empty() ? "rational" : spec.kind,
                                           spec.xmax, 100, 0.5, spec.seed})
                           : load_system(spec.system_path);
    double xmax = std::min(spec.xmax, std::max(sys.xmax, sys.largest()));
    ExpandOptions opts;
    opts.merge_tol = spec.merge_tol;

    json failures = json::array();
    auto fail = [&](const std::string& check, const std::string& detail) {
        failures.push_back({{"check", check}, {"detail", detail}});
    };

    CoefficientSeries d = expand_integers(sys, xmax, opts);
    CoefficientSeries e = expand_reciprocal(sys, xmax, opts);

    // coefficient dominance |e_n| <= d_n; the e-grid (squarefree support) is a
    // subset of the d-grid, so align by log_nu
    {
        std::size_t j = 0;
        for (const auto& en : e.entries) {
            while (j < d.size() && d.entries[j].log_nu < en.log_nu - d.merge_tol) ++j;
            if (j == d.size() || std::abs(d.entries[j].log_nu - en.log_nu) > d.merge_tol) {
                std::ostringstream os;
                os << "e-grid point nu=" << en.nu << " missing from the d-grid";
                fail("dominance", os.str());
                break;
            }
            if (std::abs(en.a) > d.entries[j].a + 1e-9) {
                std::ostringstream os;
                os << "|e| > d at nu=" << en.nu;
                fail("dominance", os.str());
                break;
            }
        }
    }

    // convolution identity d * e = 1
    CoefficientSeries id = dirichlet_multiply(d, e, xmax);
    if (id.entries.empty() || std::abs(id.entries.front().a - 1.0) > 1e-9) {
        fail("convolution", "coefficient at nu=1 is not 1");
    } else {
        for (std::size_t i = 1; i < id.size(); ++i) {
            if (std::abs(id.entries[i].a) > 1e-9) {
                std::ostringstream os;
                os << "nonzero convolution coefficient at nu=" << id.entries[i].nu;
                fail("convolution", os.str());
                break;
            }
        }
    }

    // oracle equivalence on a small truncation
    GPrimeSystem small = sys;
    while (small.index_count() > 12) small.primes.pop_back();
    if (!small.primes.empty()) {
        small.xmax = small.largest();
        double bx = std::min(xmax, 1000.0);
        CoefficientSeries fast = expand_integers(small, bx, opts);
        CoefficientSeries slow = brute_force_integers(small, bx, false, opts.merge_tol);
        if (fast.size() != slow.size()) {
            fail("oracle", "grid sizes differ between heap and brute force");
        } else {
            for (std::size_t i = 0; i < fast.size(); ++i) {
                if (std::abs(fast.entries[i].a - slow.entries[i].a) > 1e-9 ||
                    std::abs(fast.entries[i].log_nu - slow.entries[i].log_nu) > 1e-9) {
                    fail("oracle", "heap expansion disagrees with brute force");
                    break;
                }
            }
        }
    }

    // Fejer pair residuals on a seeded sweep
    std::uint64_t state = spec.seed * 0x9e3779b97f4a7c15ULL + 1;
    auto next01 = [&state]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return static_cast<double>(state >> 11) * 0x1.0p-53;
    };
    for (int i = 0; i < 25; ++i) {
        double T = 0.5 + 49.5 * next01();
        double u = -5.0 + 10.0 * next01();
        double res = fejer_pair_check(T, u);
        if (res > 1e-8) {
            std::ostringstream os;
            os << "residual " << res << " at T=" << T << " u=" << u;
            fail("fejer", os.str());
            break;
        }
    }

    json result;
    result["system"] = sys.fingerprint();
    result["xmax"] = xmax;
    result["failures"] = failures;
    result["ok"] = failures.empty();
    write_file(spec.out, result.dump(2) + "\n");
    return failures.empty() ? 0 : 1;
}

// ---- converge ----------------------------------------------------------------

struct ConvergeSpec {
    std::string series_path;
    std::string schedule = "logcube";
    int steps = 6;
    double epsilon = 0.25;
    double density = -1.0;  // <0: fit from the series
    bool with_quadrature = false;
    std::string out;
    std::string format = "csv";
};

int cmd_converge(const ConvergeSpec& spec) {
    CoefficientSeries s = load_series(spec.series_path);
    double density = spec.density;
    if (density < 0.0) {
        CountingFunction cf(s);
        double hi = s.xmax, lo = std::max(std::exp(1.0) + 1.0, hi / 100.0);
        density = (hi > lo * 1.5) ? fit_density(cf, lo, hi) : 0.0;
    }
    ConvergenceOptions opts;
    opts.epsilon = spec.epsilon;
    opts.with_quadrature = spec.with_quadrature;
    auto reports = convergence_run(s, density, schedule_from_string(spec.schedule),
                                   spec.steps, opts);
    write_file(spec.out, spec.format == "json" ? reports_to_json(reports)
                                               : reports_to_csv(reports));
    return 0;
}

// ---- geodesic tables -----------------------------------------------------------

int cmd_geodesic_tables(long long tmax, const std::string& out) {
    write_file(out, norms_to_csv(norms_by_trace(tmax)));
    return 0;
}

// ---- report (merge) -------------------------------------------------------------

int cmd_report(const std::vector<std::string>& inputs, const std::string& out) {
    std::vector<MomentReport> merged;
    for (const auto& path : inputs) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open report: " + path);
        json arr = json::parse(in);
        for (const auto& j : arr) {
            MomentReport r;
            r.N = j.at("N").get<double>();
            r.T = j.at("T").get<double>();
            r.closed_form = j.at("closed_form").get<double>();
            if (j.contains("quadrature")) r.quadrature = j["quadrature"].get<double>();
            r.rhs_series = j.at("rhs").get<double>();
            r.rhs_tail_bound = j.at("tail").get<double>();
            r.discrepancy = j.at("discrepancy").get<double>();
            if (j.contains("cross_bound")) r.cross_bound = j["cross_bound"].get<double>();
            r.schedule = schedule_from_string(j.at("schedule").get<std::string>());
            r.wall_time = j.at("seconds").get<double>();
            merged.push_back(r);
        }
    }
    write_file(out, reports_to_csv(merged));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized prime systems, Dirichlet expansions, and second "
                 "moments at sigma = 1"};
    app.require_subcommand(0, 1);

    std::string config_path;
    app.add_option("--config", config_path,
                   "JSON config document {\"command\": ..., ...}");

    // system gen
    SystemSpec sys_spec;
    std::string sys_out = "-";
    auto* system = app.add_subcommand("system", "generalized prime systems");
    auto* gen = system->add_subcommand("gen", "generate a system");
    gen->add_option("--kind", sys_spec.kind, "rational|li_inverse|jittered|geodesic");
    gen->add_option("--xmax", sys_spec.xmax, "cutoff (rational, geodesic)");
    gen->add_option("--count", sys_spec.count, "prime count (li_inverse, jittered)");
    gen->add_option("--alpha", sys_spec.alpha, "residual exponent (jittered)");
    gen->add_option("--seed", sys_spec.seed, "jitter seed");
    gen->add_option("--amplitude", sys_spec.jitter_amplitude, "jitter amplitude <= 0.49");
    gen->add_option("-o,--out", sys_out, "output JSON path ('-' = stdout)");

    // expand
    ExpandSpec exp_spec;
    auto* expand = app.add_subcommand("expand", "Euler product -> coefficient series");
    expand->add_option("--system", exp_spec.system_path, "system JSON")->required();
    expand->add_option("--xmax", exp_spec.xmax, "grid cutoff (default: system cutoff)");
    expand->add_option("--merge-tol", exp_spec.merge_tol, "log-space merge tolerance");
    expand->add_option("--tags", exp_spec.tags, "series tags (d, e)");
    expand->add_option("-o,--out-prefix", exp_spec.out_prefix, "output prefix");
    expand->add_option("--format", exp_spec.format, "json|csv|both");

    // moment
    MomentSpec mom_spec;
    auto* moment = app.add_subcommand("moment", "second moment of a series at sigma=1");
    moment->add_option("--series", mom_spec.series_path, "series JSON")->required();
    moment->add_option("--T", mom_spec.T, "integration endpoint")->required();
    moment->add_option("--engine", mom_spec.engine, "closed|quadrature|both");
    moment->add_option("--tol", mom_spec.tol, "quadrature tolerance");
    moment->add_option("-o,--out", mom_spec.out, "output JSON path");

    // continue-eval
    ContinueSpec cont_spec;
    auto* cont = app.add_subcommand("continue-eval", "continuation of f(1+it)");
    cont->add_option("--series", cont_spec.series_path, "series JSON")->required();
    cont->add_option("--rho", cont_spec.rho, "density of the counting function");
    cont->add_option("--N", cont_spec.N, "truncation cutoff");
    cont->add_option("--t", cont_spec.t_values, "evaluation ordinates (t >= 1)");
    cont->add_option("-o,--out", cont_spec.out, "output JSON path");

    // verify
    VerifySpec ver_spec;
    auto* verify = app.add_subcommand("verify", "invariant suite");
    verify->add_option("--system", ver_spec.system_path, "system JSON");
    verify->add_option("--kind", ver_spec.kind, "build a system in-process");
    verify->add_option("--xmax", ver_spec.xmax, "expansion cutoff");
    verify->add_option("--merge-tol", ver_spec.merge_tol, "merge tolerance");
    verify->add_option("--seed", ver_spec.seed, "sweep seed");
    verify->add_option("-o,--out", ver_spec.out, "result JSON path");

    // converge
    ConvergeSpec conv_spec;
    auto* converge = app.add_subcommand("converge", "scheduled moment convergence run");
    converge->add_option("--series", conv_spec.series_path, "series JSON")->required();
    converge->add_option("--schedule", conv_spec.schedule, "logcube|logsq_eps");
    converge->add_option("--steps", conv_spec.steps, "number of cutoffs");
    converge->add_option("--eps", conv_spec.epsilon, "schedule epsilon");
    converge->add_option("--density", conv_spec.density, "counting density (fit if omitted)");
    converge->add_flag("--with-quadrature", conv_spec.with_quadrature,
                       "also run the quadrature engine");
    converge->add_option("-o,--out", conv_spec.out, "output path");
    converge->add_option("--format", conv_spec.format, "csv|json");

    // geodesic tables
    long long tmax = 20;
    std::string geo_out = "-";
    auto* geodesic = app.add_subcommand("geodesic", "PSL2(Z) norm tables");
    auto* tables = geodesic->add_subcommand("tables", "trace/norm/class-count CSV");
    tables->add_option("--tmax", tmax, "largest trace");
    tables->add_option("-o,--out", geo_out, "output CSV path");

    // report
    std::vector<std::string> report_inputs;
    std::string report_out = "-";
    auto* report = app.add_subcommand("report", "merge JSON reports to CSV");
    report->add_option("--inputs", report_inputs, "report JSON files")->required();
    report->add_option("-o,--out", report_out, "merged CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors -> exit 2
    }

    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw std::runtime_error("cannot open config: " + config_path);
            json cfg = json::parse(in);
            std::string command = cfg.at("command").get<std::string>();
            if (command == "system-gen") {
                SystemSpec s;
                auto j = cfg.at("system");
                s.kind = j.value("kind", s.kind);
                s.xmax = j.value("xmax", s.xmax);
                s.count = j.value("count", s.count);
                s.alpha = j.value("alpha", s.alpha);
                s.seed = j.value("seed", s.seed);
                s.jitter_amplitude = j.value("amplitude", s.jitter_amplitude);
                return cmd_system_gen(s, cfg.value("out", std::string("-")));
            }
            if (command == "expand") {
                ExpandSpec s;
                auto j = cfg.at("expansion");
                s.system_path = j.at("system").get<std::string>();
                s.xmax = j.value("xmax", 0.0);
                s.merge_tol = j.value("merge_tol", 1e-9);
                if (j.contains("tags")) s.tags = j["tags"].get<std::vector<std::string>>();
                s.out_prefix = cfg.value("out", std::string("series"));
                s.format = j.value("format", std::string("json"));
                return cmd_expand(s);
            }
            if (command == "converge") {
                ConvergeSpec s;
                auto j = cfg.at("moment");
                s.series_path = j.at("series").get<std::string>();
                s.schedule = j.value("schedule", s.schedule);
                s.steps = j.value("steps", s.steps);
                s.epsilon = j.value("eps", s.epsilon);
                s.density = j.value("density", s.density);
                s.with_quadrature = j.value("with_quadrature", false);
                s.out = cfg.value("out", std::string("-"));
                s.format = j.value("format", s.format);
                return cmd_converge(s);
            }
            throw std::runtime_error("unknown config command: " + command);
        }

        if (gen->parsed()) return cmd_system_gen(sys_spec, sys_out);
        if (expand->parsed()) return cmd_expand(exp_spec);
        if (moment->parsed()) return cmd_moment(mom_spec);
        if (cont->parsed()) return cmd_continue_eval(cont_spec);
        if (verify->parsed()) return cmd_verify(ver_spec);
        if (converge->parsed()) return cmd_converge(conv_spec);
        if (tables->parsed()) return cmd_geodesic_tables(tmax, geo_out);
        if (report->parsed()) return cmd_report(report_inputs, report_out);
        std::cerr << app.help();
        return 2;
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
