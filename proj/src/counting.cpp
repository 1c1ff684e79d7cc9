#include "beurling/counting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace beurling {

CountingFunction::CountingFunction(const CoefficientSeries& series) {
    if (series.entries.empty())
        throw std::domain_error("counting_function: empty series");
    nu_.reserve(series.size());
    prefix_.reserve(series.size());
    double run = 0.0, comp = 0.0;
    for (const auto& e : series.entries) {
        double y = e.a - comp;
        double s = run + y;
        comp = (s - run) - y;
        run = s;
        nu_.push_back(e.nu);
        prefix_.push_back(run);
    }
    cutoff_ = series.xmax;
}

double CountingFunction::operator()(double x) const {
    if (x > cutoff_)
        throw std::out_of_range("CountingFunction: x beyond series cutoff");
    auto it = std::upper_bound(nu_.begin(), nu_.end(), x);
    if (it == nu_.begin()) return 0.0;
    return prefix_[static_cast<std::size_t>(it - nu_.begin()) - 1];
}

double fit_density(const CountingFunction& cf, double xlo, double xhi,
                   FitMethod method, int samples) {
    if (!(xlo >= std::exp(1.0)) || !(xhi > xlo) || xhi > cf.cutoff())
        throw std::domain_error("fit_density: degenerate or out-of-range window");
    if (method == FitMethod::supplied) return cf.rho();
    if (method == FitMethod::endpoint) return cf(xhi) / xhi;

    double sxy = 0.0, sxx = 0.0;
    for (int i = 0; i < samples; ++i) {
        double x = xlo * std::pow(xhi / xlo, static_cast<double>(i) / (samples - 1));
        double a = cf(x);
        sxy += a * x;
        sxx += x * x;
    }
    return sxy / sxx;
}

ResidualReport residual_report(const CountingFunction& cf, double rho,
                               double epsilon, double c, double xlo, double xhi,
                               int grid_points) {
    if (!(epsilon > 0.0)) throw std::domain_error("residual_report: epsilon > 0");
    const double ee = std::exp(std::exp(1.0));
    xlo = std::max(xlo, ee);
    if (!(xhi > xlo) || xhi > cf.cutoff())
        throw std::domain_error("residual_report: grid outside [e^e, cutoff]");

    ResidualReport rep;
    rep.epsilon = epsilon;
    rep.c = c;
    rep.grid.reserve(static_cast<std::size_t>(grid_points));
    double sup_exp_needed = 0.0;
    for (int i = 0; i < grid_points; ++i) {
        double x = xlo * std::pow(xhi / xlo, static_cast<double>(i) / (grid_points - 1));
        double R = cf(x) - rho * x;
        double lx = std::log(x);
        double root = std::sqrt(lx * std::log(lx));
        rep.grid.push_back(x);
        rep.residuals.push_back(R);
        rep.normalized_log.push_back(R * std::pow(lx, 1.5 + epsilon) / x);
        rep.normalized_expsqrt.push_back(R * std::exp(c * root) / x);
        rep.sup_normalized = std::max(rep.sup_normalized, std::abs(rep.normalized_log.back()));
        // best-fit c: largest c with |R| exp(c root)/x <= 1 at this point
        if (std::abs(R) > 0.0) {
            double cstar = std::log(x / std::abs(R)) / root;
            if (i == 0) sup_exp_needed = cstar;
            sup_exp_needed = std::min(sup_exp_needed, cstar);
        }
    }
    rep.best_fit_c = sup_exp_needed;
    return rep;
}

std::string residual_report_to_csv(const ResidualReport& r) {
    std::ostringstream os;
    os << "# epsilon=" << r.epsilon << " c=" << r.c
       << " sup_normalized=" << r.sup_normalized << " best_fit_c=" << r.best_fit_c << '\n';
    os << "x,R,normalized_log_power,normalized_exp_sqrt\n";
    char buf[160];
    for (std::size_t i = 0; i < r.grid.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", r.grid[i],
                      r.residuals[i], r.normalized_log[i], r.normalized_expsqrt[i]);
        os << buf;
    }
    return os.str();
}

} // namespace beurling
