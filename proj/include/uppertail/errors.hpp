#ifndef UPPERTAIL_ERRORS_HPP
#define UPPERTAIL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace uppertail {

// Bad input text (edge lists, vertex-set strings). Carries a 1-based line
// number when the source is a file; 0 means "no line context".
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Request is well-formed but outside what the implementation can do at the
// given size (subset-scan caps, search-volume guards, plans that do not fit
// in n vertices).
class FeasibilityError : public std::runtime_error {
public:
    explicit FeasibilityError(const std::string& what) : std::runtime_error(what) {}
};

// A postcondition that is mathematically guaranteed failed at runtime.
// Always indicates a bug, never bad input.
class InvariantViolation : public std::logic_error {
public:
    explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

} // namespace uppertail

#endif
