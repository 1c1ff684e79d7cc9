#include "beurling/geodesic.hpp"
#include "beurling/errors.hpp"
#include "beurling/li.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <boost/multiprecision/cpp_int.hpp>

namespace beurling {

using bigint = boost::multiprecision::cpp_int;

namespace {

long long isqrt_ll(long long n) {
    auto r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

void check_discriminant(long long D) {
    if (D <= 0) throw std::domain_error("discriminant must be positive");
    long long m = D % 4;
    if (m != 0 && m != 1) throw std::domain_error("discriminant must be 0 or 1 mod 4");
    long long r = isqrt_ll(D);
    if (r * r == D) throw std::domain_error("discriminant must not be a perfect square");
}

struct FormKey {
    long long a, b, c;
    bool operator<(const FormKey& o) const {
        return std::tie(a, b, c) < std::tie(o.a, o.b, o.c);
    }
};

// One rho step: (a,b,c) -> (c, 2|c|k - b, ...) with the new middle coefficient
// in the window (sqrt(D) - 2|c|, sqrt(D)). Returns the new form and the
// partial quotient m of the step matrix [[0,-1],[1,m]].
ReducedForm rho_step(const ReducedForm& f, long long D, long long root, long long& m_out) {
    long long s = std::llabs(f.c);
    long long k = (root + f.b) / (2 * s);
    long long b2 = 2 * s * k - f.b;
    long long c2 = (b2 * b2 - D) / (4 * f.c);
    m_out = (f.c > 0) ? k : -k;
    return ReducedForm{f.c, b2, c2};
}

} // namespace

ReducedFormSet reduced_forms(long long D) {
    check_discriminant(D);
    long long root = isqrt_ll(D);

    ReducedFormSet set;
    set.discriminant = D;
    for (long long b = (D % 2 == 0) ? 2 : 1; b <= root; b += 2) {
        long long M = (D - b * b) / 4;  // = |a||c|, ac < 0
        if (M <= 0) continue;
        for (long long aa = 1; aa * aa <= M; ++aa) {
            if (M % aa != 0) continue;
            long long cc = M / aa;
            for (long long v : {aa, cc}) {
                if (v == cc && aa == cc) continue;  // avoid double-count of square divisor
                // sqrt(D) - b < 2v < sqrt(D) + b, exact integer comparisons
                long long lo = 2 * v + b, hi = 2 * v - b;
                bool ok_lo = lo * lo > D;
                bool ok_hi = hi <= 0 || hi * hi < D;
                if (!(ok_lo && ok_hi)) continue;
                long long other = M / v;
                set.forms.push_back({v, b, -other});
                set.forms.push_back({-v, b, other});
            }
            if (aa == cc) {
                long long lo = 2 * aa + b, hi = 2 * aa - b;
                if (lo * lo > D && (hi <= 0 || hi * hi < D)) {
                    set.forms.push_back({aa, b, -aa});
                    set.forms.push_back({-aa, b, aa});
                }
            }
        }
    }
    std::sort(set.forms.begin(), set.forms.end(), [](const ReducedForm& x, const ReducedForm& y) {
        return std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c);
    });

    std::map<FormKey, std::size_t> index;
    for (std::size_t i = 0; i < set.forms.size(); ++i)
        index[{set.forms[i].a, set.forms[i].b, set.forms[i].c}] = i;

    std::vector<bool> visited(set.forms.size(), false);
    for (std::size_t i = 0; i < set.forms.size(); ++i) {
        if (visited[i]) continue;
        std::vector<std::size_t> cycle;
        ReducedForm f = set.forms[i];
        std::size_t at = i;
        do {
            visited[at] = true;
            cycle.push_back(at);
            long long m;
            f = rho_step(f, D, root, m);
            auto it = index.find({f.a, f.b, f.c});
            if (it == index.end())
                throw std::logic_error("rho step left the reduced set");
            at = it->second;
        } while (!visited[at]);
        set.cycles.push_back(std::move(cycle));
    }
    return set;
}

long long class_number(long long D) {
    return static_cast<long long>(reduced_forms(D).cycles.size());
}

std::pair<bigint, bigint> fundamental_unit(long long D) {
    check_discriminant(D);
    long long root = isqrt_ll(D);

    // Principal reduced form (1, b0, (b0^2 - D)/4), b0 the largest value
    // below sqrt(D) of the right parity.
    long long b0 = root;
    if ((b0 & 1) != (D & 1)) --b0;
    if (b0 <= 0) throw std::domain_error("discriminant too small");
    ReducedForm f0{1, b0, (b0 * b0 - D) / 4};

    // Automorph of f0 = product of the step matrices around one rho-cycle.
    bigint p = 1, q = 0, r = 0, s = 1;
    ReducedForm f = f0;
    do {
        long long m;
        f = rho_step(f, D, root, m);
        // right-multiply by [[0,-1],[1,m]]
        bigint np = q, nq = -p + bigint(m) * q;
        bigint nr = s, ns = -r + bigint(m) * s;
        p = np; q = nq; r = nr; s = ns;
    } while (!(f.a == f0.a && f.b == f0.b && f.c == f0.c));

    bigint t = p + s, u = r;  // a = 1 in the principal form
    if (t < 0) { t = -t; u = -u; }
    if (u < 0) u = -u;
    if (t * t - bigint(D) * u * u != 4)
        throw std::logic_error("automorph does not satisfy the unit equation");
    return {t, u};
}

std::vector<GeodesicNorm> norms_by_trace(long long tmax) {
    if (tmax < 3) throw std::domain_error("norms_by_trace: tmax >= 3");
    std::vector<GeodesicNorm> norms;
    norms.reserve(static_cast<std::size_t>(tmax - 2));
    for (long long t = 3; t <= tmax; ++t) {
        long long D = t * t - 4;
        GeodesicNorm g;
        g.trace = t;
        g.discriminant = D;
        g.t = t;
        g.u = 1;  // (t,1) is minimal: any solution has t'^2 = 4 + D u'^2 >= 4 + D = t^2
        double rootD = std::sqrt(static_cast<double>(D));
        g.epsilon = 0.5 * (static_cast<double>(t) + rootD);
        g.norm = g.epsilon * g.epsilon;
        g.class_count = class_number(D);
        g.primitive_count = g.class_count;  // sieved below
        norms.push_back(g);
    }

    // Power sieve in increasing trace: eps_t = eps_tau^k exactly when t is the
    // k-th term of the Lucas recurrence T_k = tau T_{k-1} - T_{k-2}, T_0 = 2,
    // T_1 = tau. Exact integer matching; the 1e-9 log screen is implied since
    // the integer identity is sharper.
    std::unordered_map<long long, std::size_t> by_trace;
    for (std::size_t i = 0; i < norms.size(); ++i) by_trace[norms[i].trace] = i;

    for (auto& g : norms) {
        long long tau = g.trace;
        long long prev = 2, cur = tau;
        while (true) {
            long long next = tau * cur - prev;  // trace of the next power
            if (next > tmax) break;
            prev = cur;
            cur = next;
            auto it = by_trace.find(cur);
            if (it != by_trace.end())
                norms[it->second].primitive_count -= g.primitive_count;
        }
    }
    for (const auto& g : norms) {
        if (g.primitive_count < 0)
            throw std::logic_error("power sieve produced a negative primitive count");
    }
    return norms;
}

GPrimeSystem geodesic_system(double xmax) {
    if (!(xmax > 6.8))
        throw std::domain_error("geodesic_system: xmax below the smallest norm");
    auto tmax = static_cast<long long>(std::floor(std::sqrt(xmax) + 1.0));
    tmax = std::max<long long>(tmax, 3);
    auto norms = norms_by_trace(tmax);

    GPrimeSystem sys;
    sys.kind = SystemKind::geodesic;
    sys.xmax = xmax;
    for (const auto& g : norms) {
        if (g.norm > xmax) break;
        if (g.primitive_count <= 0) continue;
        sys.primes.push_back({g.norm, static_cast<int>(g.primitive_count)});
    }
    if (sys.primes.empty())
        throw std::domain_error("geodesic_system: no norms below xmax");
    return sys;
}

PgtResidualProfile pgt_residual_profile(const GPrimeSystem& system,
                                        const std::vector<double>& grid) {
    LiEvaluator li;
    PgtResidualProfile prof;
    prof.x = grid;
    prof.residual.reserve(grid.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (double x : grid) {
        double res = static_cast<double>(system.pi_count(x)) - (x >= 2.0 ? li.li(x) : 0.0);
        prof.residual.push_back(res);
        if (std::abs(res) > 1e-12 && x > 1.0) {
            double lx = std::log(x), ly = std::log(std::abs(res));
            sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
            ++n;
        }
    }
    prof.theta_hat = (n >= 2) ? (static_cast<double>(n) * sxy - sx * sy) /
                                    (static_cast<double>(n) * sxx - sx * sx)
                              : 0.0;
    return prof;
}

namespace {

struct Mat {
    long long a, b, c, d;
    bool operator<(const Mat& o) const {
        return std::tie(a, b, c, d) < std::tie(o.a, o.b, o.c, o.d);
    }
};

Mat conj(const Mat& g, const Mat& m, const Mat& ginv) {
    // g * m * ginv
    long long a = g.a * m.a + g.b * m.c, b = g.a * m.b + g.b * m.d;
    long long c = g.c * m.a + g.d * m.c, d = g.c * m.b + g.d * m.d;
    return {a * ginv.a + b * ginv.c, a * ginv.b + b * ginv.d,
            c * ginv.a + d * ginv.c, c * ginv.b + d * ginv.d};
}

long long max_entry(const Mat& m) {
    return std::max({std::llabs(m.a), std::llabs(m.b), std::llabs(m.c), std::llabs(m.d)});
}

long long count_classes(long long trace, long long B, int word_length) {
    std::vector<Mat> seeds;
    for (long long a = -B; a <= B; ++a) {
        long long d = trace - a;
        if (std::llabs(d) > B) continue;
        long long bc = a * d - 1;
        for (long long b = -B; b <= B; ++b) {
            if (b == 0) {
                if (bc == 0)
                    for (long long c = -B; c <= B; ++c) seeds.push_back({a, b, c, d});
                continue;
            }
            if (bc % b != 0) continue;
            long long c = bc / b;
            if (std::llabs(c) <= B) seeds.push_back({a, b, c, d});
        }
    }
    if (seeds.empty()) throw inconclusive_error("no matrices within entry bound");

    const Mat T{1, 1, 0, 1}, Tinv{1, -1, 0, 1}, S{0, -1, 1, 0}, Sinv{0, 1, -1, 0};
    const std::array<std::pair<Mat, Mat>, 4> gens = {
        std::pair<Mat, Mat>{T, Tinv}, {Tinv, T}, {S, Sinv}, {Sinv, S}};
    const long long safety = 32 * B;

    // Union-find over component ids; orbits explored up to word_length from
    // each seed may meet at any matrix, seed or not.
    std::vector<int> parent;
    auto find_root = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int x, int y) {
        x = find_root(x); y = find_root(y);
        if (x != y) parent[std::max(x, y)] = std::min(x, y);
    };

    std::map<Mat, int> visited;  // matrix -> component id at first visit
    for (const auto& seed : seeds) {
        auto it = visited.find(seed);
        if (it != visited.end()) continue;
        int id = static_cast<int>(parent.size());
        parent.push_back(id);
        visited[seed] = id;
        std::vector<Mat> frontier{seed};
        for (int depth = 0; depth < word_length && !frontier.empty(); ++depth) {
            std::vector<Mat> next;
            for (const auto& m : frontier) {
                for (const auto& [g, gi] : gens) {
                    Mat w = conj(g, m, gi);
                    if (max_entry(w) > safety) continue;
                    auto [wit, inserted] = visited.emplace(w, id);
                    if (!inserted) {
                        unite(id, wit->second);
                        continue;
                    }
                    next.push_back(w);
                }
            }
            frontier = std::move(next);
        }
    }

    std::set<int> roots;
    for (const auto& seed : seeds) roots.insert(find_root(visited.at(seed)));
    return static_cast<long long>(roots.size());
}

} // namespace

long long conjugacy_bfs_oracle(long long trace, long long entry_bound, int word_length) {
    if (trace < 3 || trace > 8)
        throw std::domain_error("conjugacy_bfs_oracle: trace must be in [3, 8]");
    long long n1 = count_classes(trace, entry_bound, word_length);
    long long n2 = count_classes(trace, 2 * entry_bound, 2 * word_length);
    if (n1 != n2)
        throw inconclusive_error("class count unstable under doubling");
    return n1;
}

std::string norms_to_csv(const std::vector<GeodesicNorm>& norms) {
    std::ostringstream os;
    os << "trace,D,t,u,norm,class_count,primitive_count\n";
    char buf[40];
    for (const auto& g : norms) {
        std::snprintf(buf, sizeof buf, "%.17g", g.norm);
        os << g.trace << ',' << g.discriminant << ',' << g.t << ',' << g.u << ','
           << buf << ',' << g.class_count << ',' << g.primitive_count << '\n';
    }
    return os.str();
}

} // namespace beurling
