#pragma once

#include <stdexcept>
#include <string>

namespace cremona {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid construction parameters (n, lambda, mu, a, ...).
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// A structural invariant of the construction failed; the message names
// the step that broke.
struct StructuralError : Error {
    explicit StructuralError(const std::string& msg) : Error(msg) {}
};

// apply_map hit a point where all three coordinate forms vanish.
struct BasePointError : Error {
    explicit BasePointError(const std::string& msg) : Error(msg) {}
};

// inverse_map found no solution up to the configured degree bound.
struct NotBirationalError : Error {
    explicit NotBirationalError(const std::string& msg) : Error(msg) {}
};

// pointwise_preimage: the residual intersection is not a single reduced
// point (the input was not generic enough).
struct NonGenericError : Error {
    explicit NonGenericError(const std::string& msg) : Error(msg) {}
};

// find_contracted_conic: the divisibility system has no solution.
struct NoContractedConicError : Error {
    explicit NoContractedConicError(const std::string& msg) : Error(msg) {}
};

// find_contracted_conic: the divisibility system has dimension >= 2.
struct AmbiguousConicError : Error {
    explicit AmbiguousConicError(const std::string& msg) : Error(msg) {}
};

// contraction_sequence got stuck with no (-1)-class left to contract.
struct NoSequenceError : Error {
    explicit NoSequenceError(const std::string& msg) : Error(msg) {}
};

} // namespace cremona
