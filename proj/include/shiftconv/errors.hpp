#pragma once
//
// Error taxonomy for the shiftconv library.
//
// Every failure mode maps onto one of four process exit codes, used by the
// CLI and the suite runner:
//
//   0  all checks passed
//   1  a numerical check failed (or a quadrature could not reach tolerance)
//   2  configuration / argument error
//   3  resource, capacity or data-integrity error
//

#include <stdexcept>
#include <string>

namespace shiftconv {

// Bad arguments, bad config keys, violated preconditions.  Exit code 2.
class config_error : public std::invalid_argument {
public:
    explicit config_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Capacity limits, missing files, checksum mismatches.  Exit code 3.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A numerical routine could not deliver the requested accuracy.  Carries the
// best estimate it reached so callers can decide whether to use it anyway.
// Exit code 1.
class numeric_error : public std::runtime_error {
public:
    numeric_error(const std::string& msg, double best_re, double best_im, double achieved)
        : std::runtime_error(msg), best_real(best_re), best_imag(best_im),
          achieved_tol(achieved) {}
    double best_real;
    double best_imag;
    double achieved_tol;
};

// Structural impossibility in the mathematics: degenerate stationary point,
// empty dual window, pole of a gamma factor.  Exit code 2 (caller misuse).
class domain_error : public std::invalid_argument {
public:
    explicit domain_error(const std::string& msg) : std::invalid_argument(msg) {}
};

inline constexpr int exit_ok        = 0;
inline constexpr int exit_check     = 1;
inline constexpr int exit_config    = 2;
inline constexpr int exit_resource  = 3;

} // namespace shiftconv
