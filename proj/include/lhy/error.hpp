#pragma once

#include <stdexcept>
#include <string>

namespace lhy {

/// Raised when an argument lies outside the parameter family an operation is defined on.
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

inline void require(bool condition, const char* message) {
    if (!condition) throw InvalidInput(message);
}

} // namespace lhy
