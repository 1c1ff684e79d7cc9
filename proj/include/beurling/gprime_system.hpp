#ifndef BEURLING_GPRIME_SYSTEM_HPP
#define BEURLING_GPRIME_SYSTEM_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace beurling {

enum class SystemKind { rational, li_inverse, jittered, geodesic };

std::string to_string(SystemKind k);
SystemKind system_kind_from_string(const std::string& s);

struct GPrime {
    double value;      // > 1
    int multiplicity;  // >= 1
};

// A generalized (Beurling) prime system: a nondecreasing sequence of real
// g-primes > 1 with integer multiplicities, plus provenance metadata.
// Immutable after construction; queries are safe for concurrent readers.
struct GPrimeSystem {
    std::vector<GPrime> primes;   // nondecreasing values
    SystemKind kind = SystemKind::rational;
    std::optional<double> alpha_hint;
    std::optional<std::uint64_t> seed;
    double xmax = 0.0;            // generation cutoff
    std::string jitter_law;       // metadata; empty unless kind == jittered

    // pi_P(x) = sum of multiplicities of primes with value <= x.
    // Throws std::out_of_range when x exceeds the generation cutoff.
    long long pi_count(double x) const;

    std::size_t index_count() const;  // total multiplicity (distinct indices)
    double smallest() const;
    double largest() const;

    // Short fingerprint (kind/seed/xmax/count) used to tag derived series.
    std::string fingerprint() const;
};

// Rational primes <= xmax via a sieve; multiplicity 1, alpha_hint = 1/2.
GPrimeSystem gen_rational_primes(double xmax);

// p_j = li_inverse(j), j = 1..count: saturates pi(x) = Li(x) + O(1).
GPrimeSystem gen_li_inverse_system(int count);

// p_j = li_inverse(j + delta_j) with deterministic seeded jitter,
// |delta_j| <= amplitude <= 0.49 so the sequence stays strictly increasing
// and the residual |pi(x) - Li(x)| stays O(1) <= C x^alpha.
GPrimeSystem gen_jittered_system(int count, double alpha, std::uint64_t seed,
                                 double amplitude = 0.49);

// JSON serialization; values carried as decimal strings with 17 significant digits.
std::string to_json(const GPrimeSystem& sys);
GPrimeSystem system_from_json(const std::string& text);
GPrimeSystem load_system(const std::string& path);
void save_system(const GPrimeSystem& sys, const std::string& path);

} // namespace beurling

#endif
