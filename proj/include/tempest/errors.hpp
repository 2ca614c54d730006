#ifndef TEMPEST_ERRORS_HPP
#define TEMPEST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tempest {

// Adaptive quadrature gave up before reaching the requested tolerance.
// Carries the last estimate and its error bound so callers can decide
// whether the partial answer is still usable.
class quadrature_error : public std::runtime_error {
public:
    quadrature_error(const std::string& what, double estimate, double error_bound)
        : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

// Monotone inversion failed: V never exceeded the target within the
// bracket expansion limit.
class inversion_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Scenario / configuration problems (bad schema, unknown field, missing seed).
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace tempest

#endif
