#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ptf {

// Raised when a computation would exceed a configured size or node budget.
class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised by the text-format reader; carries the 1-based offending line.
class parse_error : public std::runtime_error {
public:
    parse_error(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Truth-table size cap (number of variables). Default 26; the environment
// variable PTFSENSE_EXACT_LIMIT or set_exact_limit() overrides it.
int exact_limit();
void set_exact_limit(int n);

// Cap for the 4^n direct noise-sensitivity sum. Default 12.
int brute_limit();
void set_brute_limit(int n);

// sign with the fixed convention sign(0) = +1.
inline int sign_pm(double v) { return v >= 0.0 ? 1 : -1; }

// Shortest decimal form that round-trips the exact binary value (%.17g).
std::string format_double(double v);

}  // namespace ptf
