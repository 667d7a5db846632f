#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace sb {

// Runtime error with a stable machine-readable tag ("NotPrime",
// "DegenerateOrbit", ...). Verification harnesses aggregate failures by tag,
// so tags must stay spelling-stable across releases.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(std::string code, const std::string& message) {
    throw Error(std::move(code), message);
}

}  // namespace sb
