#ifndef BEURLING_MOMENTS_HPP
#define BEURLING_MOMENTS_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "beurling/series.hpp"

namespace beurling {

struct EvaluationPoint {
    double sigma = 1.0;
    double t = 0.0;
};

enum class Schedule { logsq_eps, logcube };

std::string to_string(Schedule s);
Schedule schedule_from_string(const std::string& s);

struct MomentReport {
    double N = 0.0;
    double T = 0.0;
    double closed_form = 0.0;
    std::optional<double> quadrature;
    double rhs_series = 0.0;
    double rhs_tail_bound = 0.0;
    double discrepancy = 0.0;   // |closed_form - rhs_series|
    double cross_bound = 0.0;   // Cauchy-Schwarz bound on the polarization cross term
    Schedule schedule = Schedule::logcube;
    double wall_time = 0.0;     // seconds
};

// f_N(s) = sum a_n nu_n^{-sigma} e^{-it log nu_n}, Kahan-compensated.
std::complex<double> eval_polynomial(const CoefficientSeries& series,
                                     const EvaluationPoint& point);

// Exact (1/T) int_0^T |f_N(1+it)|^2 dt: diagonal sum plus the pair-wise sinc
// cross terms. Pairs with T log(nu_k/nu_j) beyond skip_threshold are dropped
// under the |s(x)| <= 1/|x| envelope.
double moment_closed_form(const CoefficientSeries& series, double T,
                          double skip_threshold = 1e8);

// Composite-panel quadrature of |f_N(1+it)|^2 over [0, T], panel width tied
// to the top oscillation frequency log(nu_max), error controlled by panel
// doubling. Throws accuracy_error (carrying the best estimate) when tol is
// unreachable within the node budget.
double moment_quadrature(const CoefficientSeries& series, double T, double tol,
                         std::size_t max_node_terms = 400'000'000);

// Continuous extension of f at s = 1+it (t >= 1) from a series generated out
// to cutoff X >> N: the truncated polynomial plus pole, R(N), and the exact
// segment-wise integral of R(x) x^{-s-1} over [N, X], with a constant-R
// model beyond X.
std::complex<double> eval_continuation(const CoefficientSeries& series_full,
                                       double rho, double N,
                                       const EvaluationPoint& point);

struct MeanSquareDifference {
    double value = 0.0;        // (1/T) int_1^T |f - f_N|^2 dt
    double bound = 0.0;        // 1/T^2 + (log N)^{-3-2eps} + T (log N)^{-2(1+eps)}
    double bound_ratio = 0.0;  // value / bound
};

MeanSquareDifference mean_square_difference(const CoefficientSeries& series_full,
                                            double rho, double N, double T,
                                            double epsilon = 0.25,
                                            double tol = 1e-6);

struct RhsSeries {
    double value = 0.0;       // sum a_n^2 / nu_n^2 over the generated grid
    double tail_bound = 0.0;  // integral tail model beyond the cutoff
};

RhsSeries rhs_series(const CoefficientSeries& series, double density);

// |quadrature of the Fejer triangle transform - s^2(2Tu)|.
double fejer_pair_check(double T, double u);

struct ConvergenceOptions {
    double epsilon = 0.25;       // exponent in the logsq_eps schedule
    bool with_quadrature = false;
    double quadrature_tol = 1e-6;
    double n_min = 30.0;         // first cutoff (clamped to > e^e)
};

// Moments of truncations of a master series along increasing N with
// T = (log N)^{2+eps} or T = (log N)^3; reports closed form, RHS series with
// tail, discrepancy, and the polarization cross bound
// 2 sqrt(moment_N * tail moment) with the tail moment computed in closed form.
std::vector<MomentReport> convergence_run(const CoefficientSeries& series_full,
                                          double density, Schedule schedule,
                                          int steps,
                                          const ConvergenceOptions& opts = {});

std::string reports_to_csv(const std::vector<MomentReport>& reports);
std::string reports_to_json(const std::vector<MomentReport>& reports);

} // namespace beurling

#endif
