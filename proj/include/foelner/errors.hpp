#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace foelner {

// Caller broke a documented precondition. The CLI maps this to exit status 2.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An operator would push a vector's support past the ambient radius.
class HeadroomError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class RankDeficiencyError : public PreconditionError {
public:
    RankDeficiencyError(std::size_t column, const std::string& what)
        : PreconditionError(what), column_(column) {}

    std::size_t column() const noexcept { return column_; }

private:
    std::size_t column_;
};

// Iterative numerics gave up. The CLI maps this to exit status 3.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace foelner
