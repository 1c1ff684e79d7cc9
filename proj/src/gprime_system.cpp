#include "beurling/gprime_system.hpp"
#include "beurling/li.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace beurling {

std::string to_string(SystemKind k) {
    switch (k) {
        case SystemKind::rational:   return "rational";
        case SystemKind::li_inverse: return "li_inverse";
        case SystemKind::jittered:   return "jittered";
        case SystemKind::geodesic:   return "geodesic";
    }
    return "rational";
}

SystemKind system_kind_from_string(const std::string& s) {
    if (s == "rational")   return SystemKind::rational;
    if (s == "li_inverse") return SystemKind::li_inverse;
    if (s == "jittered")   return SystemKind::jittered;
    if (s == "geodesic")   return SystemKind::geodesic;
    throw std::domain_error("unknown system kind: " + s);
}

long long GPrimeSystem::pi_count(double x) const {
    double cutoff = std::max(xmax, largest());
    if (x > cutoff)
        throw std::out_of_range("pi_count: query beyond generation cutoff");
    long long n = 0;
    for (const auto& p : primes) {
        if (p.value > x) break;
        n += p.multiplicity;
    }
    return n;
}

std::size_t GPrimeSystem::index_count() const {
    std::size_t n = 0;
    for (const auto& p : primes) n += static_cast<std::size_t>(p.multiplicity);
    return n;
}

double GPrimeSystem::smallest() const {
    return primes.empty() ? 0.0 : primes.front().value;
}

double GPrimeSystem::largest() const {
    return primes.empty() ? 0.0 : primes.back().value;
}

std::string GPrimeSystem::fingerprint() const {
    std::ostringstream os;
    os << to_string(kind) << ":n=" << primes.size() << ":xmax=" << xmax;
    if (seed) os << ":seed=" << *seed;
    if (alpha_hint) os << ":alpha=" << *alpha_hint;
    return os.str();
}

GPrimeSystem gen_rational_primes(double xmax) {
    if (!(xmax >= 2.0))
        throw std::domain_error("gen_rational_primes: xmax must be >= 2");
    auto n = static_cast<std::size_t>(xmax);
    std::vector<bool> composite(n + 1, false);
    GPrimeSystem sys;
    sys.kind = SystemKind::rational;
    sys.alpha_hint = 0.5;
    sys.xmax = xmax;
    for (std::size_t p = 2; p <= n; ++p) {
        if (composite[p]) continue;
        sys.primes.push_back({static_cast<double>(p), 1});
        for (std::size_t q = p * p; q <= n; q += p) composite[q] = true;
    }
    return sys;
}

GPrimeSystem gen_li_inverse_system(int count) {
    if (count < 1) throw std::domain_error("gen_li_inverse_system: count >= 1");
    LiEvaluator li;
    GPrimeSystem sys;
    sys.kind = SystemKind::li_inverse;
    sys.primes.reserve(static_cast<std::size_t>(count));
    for (int j = 1; j <= count; ++j)
        sys.primes.push_back({li.li_inverse(static_cast<double>(j)), 1});
    sys.xmax = sys.primes.back().value;
    return sys;
}

namespace {
// SplitMix64: deterministic, seed-reproducible across platforms.
std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double uniform_pm1(std::uint64_t& state) {
    return 2.0 * (static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53) - 1.0;
}
} // namespace

GPrimeSystem gen_jittered_system(int count, double alpha, std::uint64_t seed,
                                 double amplitude) {
    if (count < 1) throw std::domain_error("gen_jittered_system: count >= 1");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("gen_jittered_system: alpha must lie in (0,1)");
    if (!(amplitude >= 0.0 && amplitude <= 0.49))
        throw std::domain_error("gen_jittered_system: amplitude must lie in [0, 0.49]");
    LiEvaluator li;
    GPrimeSystem sys;
    sys.kind = SystemKind::jittered;
    sys.alpha_hint = alpha;
    sys.seed = seed;
    {
        std::ostringstream os;
        os << "p_j = li_inverse(j + a*u_j), u_j ~ SplitMix64 Uniform(-1,1), a=" << amplitude;
        sys.jitter_law = os.str();
    }
    std::uint64_t state = seed;
    sys.primes.reserve(static_cast<std::size_t>(count));
    for (int j = 1; j <= count; ++j) {
        double delta = amplitude * uniform_pm1(state);
        sys.primes.push_back({li.li_inverse(static_cast<double>(j) + delta), 1});
    }
    sys.xmax = sys.primes.back().value;
    return sys;
}

namespace {
std::string dec17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
} // namespace

std::string to_json(const GPrimeSystem& sys) {
    nlohmann::json j;
    j["kind"] = to_string(sys.kind);
    j["alpha_hint"] = sys.alpha_hint ? nlohmann::json(dec17(*sys.alpha_hint))
                                     : nlohmann::json(nullptr);
    j["seed"] = sys.seed ? nlohmann::json(*sys.seed) : nlohmann::json(nullptr);
    j["xmax"] = dec17(sys.xmax);
    if (!sys.jitter_law.empty()) j["jitter_law"] = sys.jitter_law;
    auto& arr = j["primes"] = nlohmann::json::array();
    for (const auto& p : sys.primes)
        arr.push_back({dec17(p.value), p.multiplicity});
    return j.dump(2) + "\n";
}

GPrimeSystem system_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    GPrimeSystem sys;
    sys.kind = system_kind_from_string(j.at("kind").get<std::string>());
    if (!j.at("alpha_hint").is_null())
        sys.alpha_hint = std::stod(j["alpha_hint"].get<std::string>());
    if (!j.at("seed").is_null())
        sys.seed = j["seed"].get<std::uint64_t>();
    sys.xmax = std::stod(j.at("xmax").get<std::string>());
    if (j.contains("jitter_law")) sys.jitter_law = j["jitter_law"].get<std::string>();
    for (const auto& e : j.at("primes")) {
        GPrime p;
        p.value = std::stod(e.at(0).get<std::string>());
        p.multiplicity = e.at(1).get<int>();
        if (!(p.value > 1.0) || p.multiplicity < 1)
            throw std::domain_error("system_from_json: invalid prime entry");
        sys.primes.push_back(p);
    }
    if (!std::is_sorted(sys.primes.begin(), sys.primes.end(),
                        [](const GPrime& a, const GPrime& b) { return a.value < b.value; }))
        throw std::domain_error("system_from_json: prime values must be nondecreasing");
    return sys;
}

GPrimeSystem load_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open system file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return system_from_json(ss.str());
}

void save_system(const GPrimeSystem& sys, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write system file: " + path);
    out << to_json(sys);
}

} // namespace beurling
