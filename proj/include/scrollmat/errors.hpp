#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace scrollmat {

// Typed runtime error. `kind` is a stable machine-readable tag; the CLI
// turns it into structured error JSON on stderr.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

[[noreturn]] inline void fail(std::string kind, const std::string& message) {
    throw Error(std::move(kind), message);
}

} // namespace scrollmat
