#ifndef BEURLING_GEODESIC_HPP
#define BEURLING_GEODESIC_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "beurling/gprime_system.hpp"

namespace beurling {

// Norm data for the primitive hyperbolic conjugacy classes of PSL2(Z) at a
// given trace: N = eps^2 with eps = (t + sqrt(t^2-4))/2 the larger eigenvalue.
struct GeodesicNorm {
    long long trace;        // >= 3
    long long discriminant; // t^2 - 4
    long long t;            // fundamental unit: eps_D = (t + u sqrt(D))/2
    long long u;
    double epsilon;         // > 1
    double norm;            // eps^2
    long long class_count;      // all classes at this trace (narrow h(D))
    long long primitive_count;  // classes not a power of a shorter geodesic
};

struct ReducedForm {
    long long a, b, c;  // b^2 - 4ac = D, 0 < b < sqrt(D), sqrt(D)-b < 2|a| < sqrt(D)+b
};

struct ReducedFormSet {
    long long discriminant;
    std::vector<ReducedForm> forms;
    std::vector<std::vector<std::size_t>> cycles;  // rho-cycles; count = h(D)
};

// Reduced indefinite forms of discriminant D partitioned into rho-cycles.
// D must be positive, nonsquare, and congruent to 0 or 1 mod 4.
ReducedFormSet reduced_forms(long long D);

// Narrow form class number: the number of rho-reduction cycles.
long long class_number(long long D);

// Minimal positive (t, u) with t^2 - D u^2 = 4, from the automorph of the
// principal reduced form. Exact: Pell solutions grow to hundreds of digits
// already for D ~ 10^3, hence the wide integers.
std::pair<boost::multiprecision::cpp_int, boost::multiprecision::cpp_int>
fundamental_unit(long long D);

// All traces 3..tmax with class counts and power-sieved primitive counts.
std::vector<GeodesicNorm> norms_by_trace(long long tmax);

// Primitive norms <= xmax as a GPrimeSystem (kind = geodesic, multiplicity =
// primitive_count). Throws std::domain_error when xmax is below the smallest
// norm (3+sqrt(5))^2/4 ~ 6.854.
GPrimeSystem geodesic_system(double xmax);

struct PgtResidualProfile {
    std::vector<double> x;
    std::vector<double> residual;  // pi_P(x) - Li(x)
    double theta_hat;              // log-log regression exponent of |residual|
};

PgtResidualProfile pgt_residual_profile(const GPrimeSystem& system,
                                        const std::vector<double>& grid);

// Independent small-scale class-count oracle: enumerates integer matrices of
// determinant 1 with the given trace and entries bounded by entry_bound, and
// partitions them into conjugacy classes by BFS closure under conjugation by
// the standard generators up to word_length. Returns the count only if it is
// stable when both bounds are doubled; otherwise throws inconclusive_error.
long long conjugacy_bfs_oracle(long long trace, long long entry_bound, int word_length);

// CSV: trace, D, t, u, norm (17 sig. digits), class_count, primitive_count.
std::string norms_to_csv(const std::vector<GeodesicNorm>& norms);

} // namespace beurling

#endif
