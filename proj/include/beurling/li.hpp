#ifndef BEURLING_LI_HPP
#define BEURLING_LI_HPP

namespace beurling {

// Offset logarithmic integral Li(x) = int_2^x dt/log t and its inverse.
// The lower limit 2 avoids the principal-value singularity at t = 1;
// Li(2) = 0 and Li is strictly increasing on (2, inf).
class LiEvaluator {
public:
    explicit LiEvaluator(double quadrature_tolerance = 1e-12)
        : tol_(quadrature_tolerance) {}

    static constexpr double lower_limit = 2.0;

    // Throws std::domain_error for x < 2.
    double li(double x) const;

    // Safeguarded Newton iteration for the x with li(x) = y, y >= 0.
    double li_inverse(double y) const;

    double tolerance() const { return tol_; }

private:
    double tol_;
};

} // namespace beurling

#endif
