#pragma once

#include <stdexcept>
#include <string>

namespace necklace {

// Invalid parameters or violated preconditions: the request itself is malformed.
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// The computation is well posed but could not be certified within the
// precision budget.  Callers must surface this as an explicit "uncertified"
// outcome, never as a silent pass or fail.
class UncertifiedError : public std::runtime_error {
public:
    explicit UncertifiedError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace necklace
