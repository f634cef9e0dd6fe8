#pragma once

#include <stdexcept>
#include <string>

namespace acmpc {

// Error categories. These map one-to-one onto the C API status codes and
// onto the CLI exit codes (data/usage problems exit 2, numeric problems
// exit 3).
enum class ErrorKind {
    InvalidArgument,  // bad call: wrong dimensions, missing model, ...
    Data,             // bad input data: schema violation, degenerate fit input
    Numeric,          // numeric failure: non-convergence, singular kernel
    Infeasible,       // optimization problem has no feasible point
    Io,               // file not found / unreadable / unwritable
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void throw_invalid(const std::string& msg) { throw Error(ErrorKind::InvalidArgument, msg); }
[[noreturn]] inline void throw_data(const std::string& msg) { throw Error(ErrorKind::Data, msg); }
[[noreturn]] inline void throw_numeric(const std::string& msg) { throw Error(ErrorKind::Numeric, msg); }
[[noreturn]] inline void throw_io(const std::string& msg) { throw Error(ErrorKind::Io, msg); }

}  // namespace acmpc
