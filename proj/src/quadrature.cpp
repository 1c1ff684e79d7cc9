#include "beurling/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace beurling {

// Abscissae/weights for n=7 Gauss-Legendre, mapped to [0, 1].
const double GL7::nodes[7] = {
    0.5 - 0.4745539561713792e0, 0.5 - 0.3707655927996972e0,
    0.5 - 0.2029225756886985e0, 0.5,
    0.5 + 0.2029225756886985e0, 0.5 + 0.3707655927996972e0,
    0.5 + 0.4745539561713792e0};
const double GL7::weights[7] = {
    0.0647424830844348e0, 0.1398526957446383e0, 0.1909150252525595e0,
    0.2089795918367347e0, 0.1909150252525595e0, 0.1398526957446383e0,
    0.0647424830844348e0};

double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    int panels) {
    if (panels < 1) throw std::domain_error("integrate_gl: panels >= 1");
    const double w = (b - a) / panels;
    double total = 0.0, comp = 0.0;
    for (int p = 0; p < panels; ++p) {
        double t0 = a + p * w;
        double acc = 0.0;
        for (int q = 0; q < 7; ++q)
            acc += GL7::weights[q] * f(t0 + w * GL7::nodes[q]);
        // Kahan
        double y = acc * w - comp;
        double s = total + y;
        comp = (s - total) - y;
        total = s;
    }
    return total;
}

std::vector<double> panel_nodes(double a, double b, int panels) {
    const double w = (b - a) / panels;
    std::vector<double> t(static_cast<std::size_t>(panels) * 7);
    for (int p = 0; p < panels; ++p)
        for (int q = 0; q < 7; ++q)
            t[static_cast<std::size_t>(p) * 7 + q] = a + p * w + w * GL7::nodes[q];
    return t;
}

std::vector<std::complex<double>>
dirichlet_values_on_panels(std::span<const double> freqs,
                           std::span<const std::complex<double>> coeffs,
                           double a, double b, int panels) {
    if (panels < 1) throw std::domain_error("dirichlet_values_on_panels: panels >= 1");
    if (freqs.size() != coeffs.size())
        throw std::invalid_argument("freqs/coeffs size mismatch");
    const double w = (b - a) / panels;
    std::vector<std::complex<double>> out(static_cast<std::size_t>(panels) * 7,
                                          std::complex<double>(0.0, 0.0));
    for (std::size_t n = 0; n < freqs.size(); ++n) {
        const double L = freqs[n];
        const std::complex<double> c = coeffs[n];
        const std::complex<double> rot = std::polar(1.0, -w * L);
        std::complex<double> phase = std::polar(1.0, -a * L);
        std::complex<double> base[7];
        for (int q = 0; q < 7; ++q)
            base[q] = c * std::polar(1.0, -w * GL7::nodes[q] * L);
        std::size_t idx = 0;
        for (int p = 0; p < panels; ++p) {
            for (int q = 0; q < 7; ++q) out[idx++] += phase * base[q];
            phase *= rot;
        }
    }
    return out;
}

double panel_integral(std::span<const double> node_values, double a, double b,
                      int panels) {
    const double w = (b - a) / panels;
    double total = 0.0, comp = 0.0;
    std::size_t idx = 0;
    for (int p = 0; p < panels; ++p) {
        double acc = 0.0;
        for (int q = 0; q < 7; ++q) acc += GL7::weights[q] * node_values[idx++];
        double y = acc * w - comp;
        double s = total + y;
        comp = (s - total) - y;
        total = s;
    }
    return total;
}

} // namespace beurling
