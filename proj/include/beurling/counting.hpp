#ifndef BEURLING_COUNTING_HPP
#define BEURLING_COUNTING_HPP

#include <string>
#include <vector>

#include "beurling/series.hpp"

namespace beurling {

enum class FitMethod { endpoint, least_squares, supplied };

// Summatory step function A(x) = sum_{nu_n <= x} a_n over a coefficient
// series, evaluated by binary search over prefix sums.
class CountingFunction {
public:
    explicit CountingFunction(const CoefficientSeries& series);

    // Throws std::out_of_range beyond the series cutoff.
    double operator()(double x) const;

    double cutoff() const { return cutoff_; }
    double rho() const { return rho_; }
    FitMethod fit_method() const { return method_; }
    void set_density(double rho, FitMethod method) { rho_ = rho; method_ = method; }

    const std::vector<double>& grid() const { return nu_; }
    const std::vector<double>& prefix_sums() const { return prefix_; }

private:
    std::vector<double> nu_;
    std::vector<double> prefix_;
    double cutoff_ = 0.0;
    double rho_ = 0.0;
    FitMethod method_ = FitMethod::least_squares;
};

inline CountingFunction counting_function(const CoefficientSeries& series) {
    return CountingFunction(series);
}

// Density estimate rho-hat of A(x) ~ rho x over [xlo, xhi]: least squares
// through the origin on a log-spaced sample, or the endpoint ratio A(xhi)/xhi.
double fit_density(const CountingFunction& cf, double xlo, double xhi,
                   FitMethod method = FitMethod::least_squares, int samples = 64);

struct ResidualReport {
    std::vector<double> grid;
    std::vector<double> residuals;          // R(x) = A(x) - rho x
    std::vector<double> normalized_log;     // R(x) (log x)^{3/2+eps} / x
    std::vector<double> normalized_expsqrt; // R(x) exp(c sqrt(log x loglog x)) / x
    double epsilon = 0.25;
    double c = 1.0;
    double sup_normalized = 0.0;  // sup of |normalized_log|
    double best_fit_c = 0.0;      // c with sup |normalized_expsqrt| = 1 on the grid
};

// Residual diagnostics on a log-spaced grid in [max(xlo, e^e), xhi].
ResidualReport residual_report(const CountingFunction& cf, double rho,
                               double epsilon, double c, double xlo, double xhi,
                               int grid_points = 200);

std::string residual_report_to_csv(const ResidualReport& r);

} // namespace beurling

#endif
