#pragma once

#include <stdexcept>
#include <string>

namespace binweaver {

// Malformed instance text / JSON. `line` is 1-based, 0 when not line-oriented.
class parse_error : public std::runtime_error {
public:
    parse_error(int line, const std::string& what)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// A configured budget (lattice nodes, DP states, sumset pairs, ...) was hit.
// Callers decide the fallback; the message names the budget.
class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// Precondition of an operation violated by the caller.
class contract_error : public std::logic_error {
public:
    explicit contract_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace binweaver
