#pragma once

#include <stdexcept>
#include <string>

namespace opdyn {

/// Raised for invalid configuration values (bad counts, ranges, malformed
/// scenario files). The CLI maps it to exit code 1.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what, std::string key = {}, int line = 0)
        : std::invalid_argument(what), key_(std::move(key)), line_(line) {}

    /// Offending key, empty when the error is not tied to one key.
    const std::string& key() const noexcept { return key_; }
    /// 1-based source line, 0 when unknown.
    int line() const noexcept { return line_; }

private:
    std::string key_;
    int line_;
};

/// Raised when an operation is called outside its preconditions
/// (out-of-range node, empty aggregate input, incomplete row set).
class UsageError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace opdyn
