#pragma once

#include <stdexcept>
#include <string>

namespace entrobound {

/// Raised when an argument or model parameter violates a documented invariant.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when an iterative numerical procedure fails to reach its tolerance.
///
/// Carries the last two iterates so callers can judge how far off the
/// procedure was.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double last, double previous)
        : std::runtime_error(what), last_(last), previous_(previous) {}

    double last() const noexcept { return last_; }
    double previous() const noexcept { return previous_; }

private:
    double last_;
    double previous_;
};

}  // namespace entrobound
