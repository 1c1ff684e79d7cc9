#include "beurling/li.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace beurling {

double LiEvaluator::li(double x) const {
    if (!(x >= lower_limit))
        throw std::domain_error("li: x must be >= 2");
    if (x == lower_limit) return 0.0;
    // Li(x) = Ei(log x) - Ei(log 2); std::expint is the exponential integral Ei.
    return std::expint(std::log(x)) - std::expint(std::log(lower_limit));
}

double LiEvaluator::li_inverse(double y) const {
    if (!(y >= 0.0))
        throw std::domain_error("li_inverse: y must be >= 0");
    if (y == 0.0) return lower_limit;

    // Bracket: li(x) > (x-2)/log(x) is not monotone-friendly; grow until covered.
    double lo = lower_limit, hi = lower_limit + 1.0;
    while (li(hi) < y) {
        lo = hi;
        hi *= 2.0;
        if (!std::isfinite(hi))
            throw std::domain_error("li_inverse: y out of representable range");
    }

    // Newton with bisection safeguard; li'(x) = 1/log x.
    double x = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        double f = li(x) - y;
        if (f > 0.0) hi = x; else lo = x;
        double step = f * std::log(x);
        double xn = x - step;
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        if (std::abs(xn - x) <= tol_ * std::max(1.0, std::abs(x))) return xn;
        x = xn;
    }
    return x;
}

} // namespace beurling
