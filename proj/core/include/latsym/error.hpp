#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace latsym {

/// Invalid parameters or a violated construction invariant.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A stencil or index access that leaves the stored window.
class WindowError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Time stepping produced values beyond the configured guard.
class InstabilityError : public std::runtime_error {
public:
    InstabilityError(const std::string& what, std::int64_t step)
        : std::runtime_error(what), step_(step) {}

    [[nodiscard]] std::int64_t step() const noexcept { return step_; }

private:
    std::int64_t step_;
};

/// No level crossing was found while tracking a front.
class NoCrossingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Failure of an iterative solve that is reported rather than regularized.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace latsym
