#pragma once

#include <stdexcept>
#include <string>

namespace fhp {

// Configuration / input-file errors, carrying the offending line when known.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string message, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : message),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

} // namespace fhp
