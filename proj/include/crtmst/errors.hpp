#pragma once

#include <stdexcept>
#include <string>

namespace crtmst {

// Malformed `.ssv` or CSV input. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// The closed forms for the estimator parameters produced r < 1 or C < 1.
class InfeasibleParams : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class DisconnectedGraph : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace crtmst
