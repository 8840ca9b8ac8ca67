#ifndef FLOPGW_ERRORS_HPP
#define FLOPGW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace flopgw {

// No rational function matches the series at the requested degree bounds.
struct NoFitError : std::runtime_error {
    explicit NoFitError(const std::string& what) : std::runtime_error(what) {}
};

// A candidate fit fails to reproduce the guard coefficients; the caller must
// raise the bounds or the cutoff.
struct ValidationFailedError : std::runtime_error {
    explicit ValidationFailedError(const std::string& what) : std::runtime_error(what) {}
};

// Analytic continuation would produce a pole at the origin.
struct PoleAtOriginError : std::runtime_error {
    explicit PoleAtOriginError(const std::string& what) : std::runtime_error(what) {}
};

// The dimension filter admits no d2 >= 0 for the given insertions.
struct NoAdmissibleD2Error : std::runtime_error {
    explicit NoAdmissibleD2Error(const std::string& what) : std::runtime_error(what) {}
};

// Recursion guard tripped; signals a bookkeeping bug, never expected on
// valid input.
struct NonTerminationError : std::runtime_error {
    explicit NonTerminationError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace flopgw

#endif
