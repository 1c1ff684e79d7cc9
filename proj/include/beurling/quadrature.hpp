#ifndef BEURLING_QUADRATURE_HPP
#define BEURLING_QUADRATURE_HPP

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace beurling {

// 7-point Gauss-Legendre rule on [0, 1].
struct GL7 {
    static const double nodes[7];
    static const double weights[7];
};

// Composite GL7 integral of a scalar function over [a, b].
double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    int panels);

// Values of S(t) = sum_n coeff_n * exp(-i t freq_n) at the GL7 nodes of
// `panels` uniform panels covering [a, b], panel-major (panels*7 values).
// Uses a per-term phase rotation across panels: one complex multiply per
// panel per term instead of a sincos per node per term.
std::vector<std::complex<double>>
dirichlet_values_on_panels(std::span<const double> freqs,
                           std::span<const std::complex<double>> coeffs,
                           double a, double b, int panels);

// Node positions matching dirichlet_values_on_panels.
std::vector<double> panel_nodes(double a, double b, int panels);

// Composite GL7 sum of per-node integrand values (panel-major) over [a, b].
double panel_integral(std::span<const double> node_values, double a, double b,
                      int panels);

} // namespace beurling

#endif
