#pragma once

#include <stdexcept>
#include <string>

namespace tauberkit {

// Error taxonomy. Every throwing operation in the library uses one of these,
// so callers (and the CLI) can map failure classes to exit codes uniformly.

// Caller passed arguments outside an operation's documented domain
// (bad ranges, malformed input files, inconsistent options).
struct invalid_input : std::invalid_argument {
    explicit invalid_input(const std::string& what) : std::invalid_argument(what) {}
};

// Arguments are well-formed but lie outside the mathematical region where the
// operation is defined (e.g. transform abscissa outside the convergence strip).
struct out_of_domain : std::domain_error {
    explicit out_of_domain(const std::string& what) : std::domain_error(what) {}
};

// A quantitative hypothesis the algorithm relies on is violated by the data
// (non-monotone envelope, negative mass, shape-parameter constraint, ...).
struct hypothesis_violation : std::domain_error {
    explicit hypothesis_violation(const std::string& what) : std::domain_error(what) {}
};

// A numerical routine could not reach its requested tolerance within budget.
struct accuracy_failure : std::runtime_error {
    explicit accuracy_failure(const std::string& what) : std::runtime_error(what) {}
};

// Two independent computations of the same quantity disagree beyond tolerance;
// raised instead of silently preferring one route.
struct consistency_failure : std::runtime_error {
    explicit consistency_failure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tauberkit
