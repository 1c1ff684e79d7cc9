#include "beurling/series.hpp"
#include "beurling/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace beurling {

std::string to_string(SeriesTag t) {
    switch (t) {
        case SeriesTag::d:         return "d";
        case SeriesTag::e:         return "e";
        case SeriesTag::ruelle_b:  return "ruelle_b";
        case SeriesTag::ruelle_c:  return "ruelle_c";
        case SeriesTag::selberg_b: return "selberg_b";
        case SeriesTag::selberg_c: return "selberg_c";
        case SeriesTag::generic:   return "generic";
    }
    return "generic";
}

SeriesTag series_tag_from_string(const std::string& s) {
    if (s == "d") return SeriesTag::d;
    if (s == "e") return SeriesTag::e;
    if (s == "ruelle_b") return SeriesTag::ruelle_b;
    if (s == "ruelle_c") return SeriesTag::ruelle_c;
    if (s == "selberg_b") return SeriesTag::selberg_b;
    if (s == "selberg_c") return SeriesTag::selberg_c;
    if (s == "generic") return SeriesTag::generic;
    throw std::domain_error("unknown series tag: " + s);
}

namespace {

struct DistinctPrime {
    double logp;
    int mult;
};

// Equal prime values are collapsed exactly into multiplicities before
// expansion; merge_tol only ever has to absorb floating noise of distinct
// power-products.
std::vector<DistinctPrime> distinct_primes(const GPrimeSystem& system) {
    std::vector<DistinctPrime> out;
    double last_value = 0.0;
    for (const auto& p : system.primes) {
        if (!(p.value > 1.0))
            throw std::domain_error("expand: g-primes must exceed 1");
        if (!out.empty() && p.value == last_value) {
            out.back().mult += p.multiplicity;
        } else {
            out.push_back({std::log(p.value), p.multiplicity});
            last_value = p.value;
        }
    }
    return out;
}

// Number of multisets of size e over m indexed copies: C(e+m-1, m-1).
double weight_integers(int m, int e) {
    double w = 1.0;
    for (int i = 1; i < m; ++i) w *= static_cast<double>(e + i) / i;
    return w;
}

// Signed squarefree choices over m indexed copies: (-1)^e C(m, e).
double weight_reciprocal(int m, int e) {
    if (e > m) return 0.0;
    double w = 1.0;
    for (int i = 1; i <= e; ++i) w *= static_cast<double>(m - e + i) / i;
    return (e % 2 == 0) ? w : -w;
}

struct FrontierState {
    double logv;
    int last;    // index into the distinct-value list; -1 for the empty product
    int elast;   // trailing exponent of `last`
    double wpre; // weight of the prefix excluding the trailing block
    bool operator>(const FrontierState& o) const { return logv > o.logv; }
};

enum class ExpandMode { integers, reciprocal };

CoefficientSeries expand(const GPrimeSystem& system, double xmax,
                         const ExpandOptions& opts, ExpandMode mode) {
    if (!(xmax >= 1.0)) throw std::domain_error("expand: xmax >= 1");
    auto values = distinct_primes(system);

    const bool geodesic = system.kind == SystemKind::geodesic;
    CoefficientSeries out;
    out.xmax = xmax;
    out.merge_tol = opts.merge_tol;
    out.source = system.fingerprint();
    out.tag = (mode == ExpandMode::integers)
                  ? (geodesic ? SeriesTag::ruelle_c : SeriesTag::d)
                  : (geodesic ? SeriesTag::ruelle_b : SeriesTag::e);

    auto weight = (mode == ExpandMode::integers) ? weight_integers : weight_reciprocal;
    const double bound = std::log(xmax) + opts.merge_tol;

    // Multisets of prime indices in nondecreasing value order. Each state's
    // children: deepen (one more copy of the last value) and widen (swap one
    // trailing copy for the next value); every multiset has a unique parent,
    // so each is popped exactly once.
    std::priority_queue<FrontierState, std::vector<FrontierState>,
                        std::greater<FrontierState>>
        heap;
    heap.push({0.0, -1, 0, 1.0});

    std::size_t pops = 0;
    while (!heap.empty()) {
        FrontierState s = heap.top();
        heap.pop();
        if (++pops > opts.max_entries)
            throw resource_error("expand: frontier entry budget exceeded; result "
                                 "complete below the reported value",
                                 std::exp(s.logv));

        double coeff = (s.last < 0) ? 1.0 : s.wpre * weight(values[s.last].mult, s.elast);
        if (!out.entries.empty() && s.logv - out.entries.back().log_nu <= opts.merge_tol) {
            out.entries.back().a += coeff;
        } else {
            out.entries.push_back({s.logv, std::exp(s.logv), coeff});
        }

        if (values.empty()) continue;
        if (s.last < 0) {
            double lv = values[0].logp;
            if (lv <= bound) heap.push({lv, 0, 1, 1.0});
            continue;
        }
        // deepen; reciprocal weights vanish past the multiplicity but the
        // states stay in: e lives on the full generalized-integer grid (with
        // zero coefficients at points without a squarefree representation)
        {
            double lv = s.logv + values[s.last].logp;
            if (lv <= bound) heap.push({lv, s.last, s.elast + 1, s.wpre});
        }
        // widen
        if (s.last + 1 < static_cast<int>(values.size())) {
            double lv = s.logv - values[s.last].logp + values[s.last + 1].logp;
            if (lv <= bound) {
                double wpre = s.wpre * weight(values[s.last].mult, s.elast - 1);
                heap.push({lv, s.last + 1, 1, wpre});
            }
        }
    }
    return out;
}

} // namespace

CoefficientSeries expand_integers(const GPrimeSystem& system, double xmax,
                                  const ExpandOptions& opts) {
    return expand(system, xmax, opts, ExpandMode::integers);
}

CoefficientSeries expand_reciprocal(const GPrimeSystem& system, double xmax,
                                    const ExpandOptions& opts) {
    return expand(system, xmax, opts, ExpandMode::reciprocal);
}

CoefficientSeries dirichlet_multiply(const CoefficientSeries& A,
                                     const CoefficientSeries& B, double xmax) {
    if (A.merge_tol != B.merge_tol)
        throw std::invalid_argument("dirichlet_multiply: merge tolerances differ");
    const double tol = A.merge_tol;
    const double bound = std::log(xmax) + tol;

    std::vector<std::pair<double, double>> prods;
    for (const auto& ea : A.entries) {
        double limit = bound - ea.log_nu;
        for (const auto& eb : B.entries) {
            if (eb.log_nu > limit) break;
            prods.emplace_back(ea.log_nu + eb.log_nu, ea.a * eb.a);
        }
    }
    std::sort(prods.begin(), prods.end());

    CoefficientSeries out;
    out.xmax = xmax;
    out.merge_tol = tol;
    out.tag = SeriesTag::generic;
    out.source = A.source;
    for (const auto& [lv, c] : prods) {
        if (!out.entries.empty() && lv - out.entries.back().log_nu <= tol)
            out.entries.back().a += c;
        else
            out.entries.push_back({lv, std::exp(lv), c});
    }
    return out;
}

CoefficientSeries shift_series(const CoefficientSeries& A, int k) {
    if (k < 1) throw std::domain_error("shift_series: k >= 1");
    CoefficientSeries out = A;
    out.tag = SeriesTag::generic;
    for (auto& e : out.entries) e.a *= std::exp(-static_cast<double>(k) * e.log_nu);
    return out;
}

SelbergPair selberg_series(const GPrimeSystem& norms, double xmax, double tol,
                           const ExpandOptions& opts) {
    if (!(xmax >= 1.0)) throw std::domain_error("selberg_series: xmax >= 1");
    if (!(tol > 0.0)) throw std::domain_error("selberg_series: tol > 0");
    double pmin = norms.smallest();
    if (!(pmin > 1.0)) throw std::domain_error("selberg_series: empty norm system");

    // Minimal K with pmin^-(K+1) <= tol: the first dropped factor Z_1(s+K+1)
    // deviates from 1 by O(pmin^-(K+1)) at sigma = 1.
    int K = static_cast<int>(std::ceil(std::log(1.0 / tol) / std::log(pmin) - 1.0));
    if (K < 0) K = 0;

    CoefficientSeries rb = expand_reciprocal(norms, xmax, opts);
    CoefficientSeries rc = expand_integers(norms, xmax, opts);

    CoefficientSeries b = rb, c = rc;
    for (int k = 1; k <= K; ++k) {
        b = dirichlet_multiply(b, shift_series(rb, k), xmax);
        c = dirichlet_multiply(c, shift_series(rc, k), xmax);
    }
    b.tag = SeriesTag::selberg_b;
    c.tag = SeriesTag::selberg_c;
    b.source = norms.fingerprint();
    c.source = norms.fingerprint();
    return {std::move(b), std::move(c), K};
}

CoefficientSeries brute_force_integers(const GPrimeSystem& system, double xmax,
                                       bool signed_squarefree, double merge_tol) {
    if (system.index_count() > 20)
        throw resource_error("brute_force_integers: more than 20 prime indices", 0.0);
    std::vector<double> logp;
    for (const auto& p : system.primes)
        for (int i = 0; i < p.multiplicity; ++i) logp.push_back(std::log(p.value));

    const double bound = std::log(xmax) + merge_tol;
    std::vector<std::pair<double, double>> reps;
    // exhaustive over exponent vectors, depth-first
    struct Frame { std::size_t i; double logv; double sign; };
    std::vector<Frame> stack{{0, 0.0, 1.0}};
    while (!stack.empty()) {
        auto [i, lv, sg] = stack.back();
        stack.pop_back();
        if (i == logp.size()) {
            reps.emplace_back(lv, sg);
            continue;
        }
        int emax = signed_squarefree ? 1 : std::numeric_limits<int>::max();
        double v = lv;
        for (int e = 0; e <= emax && v <= bound; ++e) {
            stack.push_back({i + 1, v, (signed_squarefree && e % 2 == 1) ? -sg : sg});
            v += logp[i];
        }
    }
    std::sort(reps.begin(), reps.end());

    CoefficientSeries out;
    out.xmax = xmax;
    out.merge_tol = merge_tol;
    out.tag = SeriesTag::generic;
    out.source = system.fingerprint();
    for (const auto& [lv, c] : reps) {
        if (!out.entries.empty() && lv - out.entries.back().log_nu <= merge_tol)
            out.entries.back().a += c;
        else
            out.entries.push_back({lv, std::exp(lv), c});
    }
    return out;
}

namespace {
std::string dec17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
} // namespace

std::string series_to_csv(const CoefficientSeries& s) {
    std::ostringstream os;
    os << "# source=" << s.source << " xmax=" << dec17(s.xmax)
       << " merge_tol=" << dec17(s.merge_tol) << " tag=" << to_string(s.tag) << '\n';
    os << "nu,a\n";
    for (const auto& e : s.entries) os << dec17(e.nu) << ',' << dec17(e.a) << '\n';
    return os.str();
}

std::string series_to_json(const CoefficientSeries& s) {
    nlohmann::json j;
    j["source"] = s.source;
    j["xmax"] = dec17(s.xmax);
    j["merge_tol"] = dec17(s.merge_tol);
    j["tag"] = to_string(s.tag);
    auto& arr = j["entries"] = nlohmann::json::array();
    for (const auto& e : s.entries) arr.push_back({dec17(e.nu), dec17(e.a)});
    return j.dump(2) + "\n";
}

CoefficientSeries series_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    CoefficientSeries s;
    s.source = j.at("source").get<std::string>();
    s.xmax = std::stod(j.at("xmax").get<std::string>());
    s.merge_tol = std::stod(j.at("merge_tol").get<std::string>());
    s.tag = series_tag_from_string(j.at("tag").get<std::string>());
    for (const auto& e : j.at("entries")) {
        double nu = std::stod(e.at(0).get<std::string>());
        double a = std::stod(e.at(1).get<std::string>());
        s.entries.push_back({std::log(nu), nu, a});
    }
    return s;
}

CoefficientSeries load_series(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open series file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return series_from_json(ss.str());
}

void save_series(const CoefficientSeries& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write series file: " + path);
    out << series_to_json(s);
}

} // namespace beurling
