#pragma once

#include <stdexcept>
#include <string>

namespace dce {

/// Invalid input: bad parameters, malformed files, violated preconditions.
/// The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical guard tripped: the computation could proceed but the result
/// would be silently wrong (aliased transform, unresolved tail, unstable fit,
/// lost unitarity).  `guard()` names the guard that fired.  The CLI maps this
/// to exit code 3.
class GuardError : public std::runtime_error {
public:
    GuardError(std::string guard, const std::string& what)
        : std::runtime_error(guard + ": " + what), guard_(std::move(guard)) {}

    const std::string& guard() const noexcept { return guard_; }

private:
    std::string guard_;
};

} // namespace dce
