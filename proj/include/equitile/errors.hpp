// Error taxonomy shared by the library and the CLI exit-code mapping.
#pragma once

#include <stdexcept>
#include <string>

namespace equitile {

// Malformed input files or unparseable values.  CLI exit code 1.
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Caller violated a documented precondition (bad k, degree bound, size
// mismatch, unsupported parameter range).  CLI exit code 2.
struct precondition_error : std::invalid_argument {
    explicit precondition_error(const std::string& what) : std::invalid_argument(what) {}
};

// An exhaustive search exceeded its configured node or size budget.
// CLI exit code 2.
struct budget_exceeded : std::runtime_error {
    explicit budget_exceeded(const std::string& what) : std::runtime_error(what) {}
};

// A randomized stage ran out of retries without meeting its validation
// target.  Distinct from invariant_violation: nothing is provably wrong,
// the sampling simply failed.  CLI exit code 2.
struct probabilistic_failure : std::runtime_error {
    explicit probabilistic_failure(const std::string& what) : std::runtime_error(what) {}
};

// A search that must not fail (given the preconditions) found nothing.
// This is a bug, not an input to tolerate: it surfaces loudly with
// diagnostics.  CLI exit code 3.
struct invariant_violation : std::logic_error {
    explicit invariant_violation(const std::string& what) : std::logic_error(what) {}
};

// Best-effort searches report failure through this instead of pretending
// the instance is infeasible.  CLI exit code 2.
struct no_solution_found : std::runtime_error {
    explicit no_solution_found(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace equitile
