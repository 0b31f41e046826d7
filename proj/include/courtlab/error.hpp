#pragma once

#include <stdexcept>
#include <string>

namespace courtlab {

/// Broad failure classes. Each maps onto one CLI exit code.
enum class ErrorKind {
    Input = 2,      // malformed or inconsistent input data
    Config = 3,     // bad configuration or arguments
    Invariant = 4,  // an internal invariant did not hold
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string code, const std::string& message)
        : std::runtime_error(message), kind_(kind), code_(std::move(code)) {}

    ErrorKind kind() const noexcept { return kind_; }
    /// Short machine-readable tag, e.g. "schema", "duplicate_key".
    const std::string& code() const noexcept { return code_; }
    int exit_code() const noexcept { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
    std::string code_;
};

inline Error input_error(std::string code, const std::string& message) {
    return Error(ErrorKind::Input, std::move(code), message);
}

inline Error config_error(std::string code, const std::string& message) {
    return Error(ErrorKind::Config, std::move(code), message);
}

inline Error invariant_error(std::string code, const std::string& message) {
    return Error(ErrorKind::Invariant, std::move(code), message);
}

}  // namespace courtlab
