#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace adacomp {

/// Base class for all library errors. Each subclass carries a stable
/// machine-readable name that the CLI prints next to the message.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& msg)
        : std::runtime_error(msg), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

/// Dimension mismatch between a compressor and the model.
class ConformanceError : public Error {
public:
    explicit ConformanceError(const std::string& msg) : Error("conformance_error", msg) {}
};

/// Wrong number of choices handed to a policy evaluation.
class ArityError : public Error {
public:
    explicit ArityError(const std::string& msg) : Error("arity_error", msg) {}
};

/// A matrix that must be invertible is numerically singular.
class SingularityError : public Error {
public:
    explicit SingularityError(const std::string& msg) : Error("singularity_error", msg) {}
};

/// Input outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error("domain_error", msg) {}
};

/// Model does not match a required specialization (e.g. scalar measurements).
class SpecializationError : public Error {
public:
    explicit SpecializationError(const std::string& msg) : Error("specialization_error", msg) {}
};

/// No informative direction left (all eigenvalues zero).
class DegenerateError : public Error {
public:
    explicit DegenerateError(const std::string& msg) : Error("degenerate_error", msg) {}
};

/// Neither optimal-factor case applies to the given spectrum.
class CaseSelectionError : public Error {
public:
    explicit CaseSelectionError(const std::string& msg) : Error("case_selection_error", msg) {}
};

/// A scaled column cannot be mapped back to a finite compressor.
class InfeasibleRecoveryError : public Error {
public:
    explicit InfeasibleRecoveryError(const std::string& msg)
        : Error("infeasible_recovery_error", msg) {}
};

/// Exhaustive search would exceed the evaluation budget.
class SearchBudgetError : public Error {
public:
    explicit SearchBudgetError(const std::string& msg) : Error("search_budget_error", msg) {}
};

/// Iterative numerical routine failed to converge.
class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& msg) : Error("convergence_error", msg) {}
};

/// Invalid scenario file or configuration.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error("config_error", msg) {}
};

/// A pinned reproduction value did not match.
class GoldenMismatchError : public Error {
public:
    explicit GoldenMismatchError(const std::string& msg) : Error("golden_mismatch_error", msg) {}
};

} // namespace adacomp
