#ifndef SERRE_ERRORS_HPP
#define SERRE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace serre {

// Malformed or out-of-range input.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// An operation restricted to Q_p (e = f = 1) was called at a larger place.
struct UnsupportedPlaceError : ValidationError {
    explicit UnsupportedPlaceError(const std::string& msg) : ValidationError(msg) {}
};

// Well-formed input for which the requested quantity does not exist.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Niveau-2 datum with phi^q = phi.
struct NotIrreducibleError : DomainError {
    explicit NotIrreducibleError(const std::string& msg) : DomainError(msg) {}
};

// Conductor sum came out non-integral: the filtration data is not
// consistent with any genuine representation.
struct NonIntegralConductorError : DomainError {
    explicit NonIntegralConductorError(const std::string& msg) : DomainError(msg) {}
};

// Class function outside the integral span of irreducible Brauer characters.
struct DecompositionError : DomainError {
    explicit DecompositionError(const std::string& msg) : DomainError(msg) {}
};

// Truncation radius too small for the requested computation.
struct TruncationError : DomainError {
    explicit TruncationError(const std::string& msg) : DomainError(msg) {}
};

} // namespace serre

#endif
