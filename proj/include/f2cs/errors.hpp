#ifndef F2CS_ERRORS_HPP
#define F2CS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace f2cs {

// Malformed input files or polynomial text.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Operation undefined for the given value (e.g. cls of a constant).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// The instance has no feasible point.
struct InfeasibleError : std::runtime_error {
    explicit InfeasibleError(const std::string& msg) : std::runtime_error(msg) {}
};

// An enumeration or verification would exceed the configured budget.
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace f2cs

#endif
