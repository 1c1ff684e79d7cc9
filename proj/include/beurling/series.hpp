#ifndef BEURLING_SERIES_HPP
#define BEURLING_SERIES_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "beurling/gprime_system.hpp"

namespace beurling {

enum class SeriesTag { d, e, ruelle_b, ruelle_c, selberg_b, selberg_c, generic };

std::string to_string(SeriesTag t);
SeriesTag series_tag_from_string(const std::string& s);

struct SeriesEntry {
    double log_nu;  // log of the generalized integer
    double nu;
    double a;       // coefficient
};

// Coefficients of a generalized Dirichlet series on a sorted grid of
// generalized integers. Grid values are carried in log space; entries whose
// logs differ by at most merge_tol are merged.
struct CoefficientSeries {
    std::vector<SeriesEntry> entries;  // strictly increasing log_nu
    double xmax = 0.0;
    double merge_tol = 1e-9;
    SeriesTag tag = SeriesTag::generic;
    std::string source;  // system fingerprint

    std::size_t size() const { return entries.size(); }
};

struct ExpandOptions {
    double merge_tol = 1e-9;
    std::size_t max_entries = 20'000'000;  // frontier budget; resource_error beyond
};

// Multiplicities d_n of the generalized integers: all finite power-products
// of g-primes (primes distinct as indexed objects, even at equal values)
// with value <= xmax, via a min-heap frontier. Tag d, or ruelle_c for a
// geodesic system (coefficients of 1/Z_1 = zeta of the norms).
CoefficientSeries expand_integers(const GPrimeSystem& system, double xmax,
                                  const ExpandOptions& opts = {});

// Coefficients e_n of the reciprocal: (-1)^|S| over index-distinct squarefree
// products, carried on the same grid as d_n (zero where no squarefree
// representation exists). Tag e, or ruelle_b for a geodesic system.
CoefficientSeries expand_reciprocal(const GPrimeSystem& system, double xmax,
                                    const ExpandOptions& opts = {});

// Dirichlet convolution c(nu) = sum over merging products of a_A * a_B,
// truncated at xmax. Requires equal merge tolerances.
CoefficientSeries dirichlet_multiply(const CoefficientSeries& A,
                                     const CoefficientSeries& B, double xmax);

// Argument shift s -> s+k as coefficient damping a_n -> a_n / nu_n^k.
CoefficientSeries shift_series(const CoefficientSeries& A, int k);

struct SelbergPair {
    CoefficientSeries b;  // coefficients of Z(s)
    CoefficientSeries c;  // coefficients of 1/Z(s)
    int truncation_order; // K: factors k = 0..K of Z(s) = prod_k Z_1(s+k)
};

// Selberg series from the norms system via Z(s) = prod_{k>=0} Z_1(s+k),
// truncated at the minimal K with (smallest norm)^-(K+1) <= tol.
SelbergPair selberg_series(const GPrimeSystem& norms, double xmax, double tol,
                           const ExpandOptions& opts = {});

// Exhaustive-enumeration oracle over bounded exponent vectors; systems with
// at most 20 prime indices. With signed_squarefree, enumerates squarefree
// index subsets with sign (the e-series oracle).
CoefficientSeries brute_force_integers(const GPrimeSystem& system, double xmax,
                                       bool signed_squarefree = false,
                                       double merge_tol = 1e-9);

// CSV / JSON persistence: nu and a as 17-significant-digit decimals, with a
// metadata block (system fingerprint, xmax, merge_tol, tag).
std::string series_to_csv(const CoefficientSeries& s);
std::string series_to_json(const CoefficientSeries& s);
CoefficientSeries series_from_json(const std::string& text);
CoefficientSeries load_series(const std::string& path);
void save_series(const CoefficientSeries& s, const std::string& path);

} // namespace beurling

#endif
