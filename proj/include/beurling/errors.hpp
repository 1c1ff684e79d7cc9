#ifndef BEURLING_ERRORS_HPP
#define BEURLING_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace beurling {

// Requested accuracy could not be reached within the node budget.
// Carries the best estimate obtained so far.
class accuracy_error : public std::runtime_error {
public:
    accuracy_error(const std::string& what, double best, double err_estimate)
        : std::runtime_error(what), best_estimate(best), error_estimate(err_estimate) {}
    double best_estimate;
    double error_estimate;
};

// An enumeration exceeded its configured entry budget. The partial result
// (complete up to `complete_to`) travels with the exception.
class resource_error : public std::runtime_error {
public:
    resource_error(const std::string& what, double complete_to_)
        : std::runtime_error(what), complete_to(complete_to_) {}
    double complete_to;
};

// A small-scale oracle did not stabilize under doubling; report, do not guess.
class inconclusive_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace beurling

#endif
