#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace precursor {

/// Coarse failure categories; the CLI maps each to a distinct exit code.
enum class ErrorClass {
    InvalidArgument,  // a parameter violates a documented invariant
    Config,           // malformed or unknown configuration input
    Resource,         // grid exceeds the memory cap
    Io,
    Numerical,        // non-finite values or a singular evaluation
};

std::string_view to_string(ErrorClass c) noexcept;
int exit_code(ErrorClass c) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorClass c, const std::string& what) : std::runtime_error(what), class_(c) {}

    ErrorClass error_class() const noexcept { return class_; }

private:
    ErrorClass class_;
};

[[noreturn]] inline void fail(ErrorClass c, const std::string& what) { throw Error(c, what); }

inline void require(bool cond, const std::string& what)
{
    if (!cond) fail(ErrorClass::InvalidArgument, what);
}

}  // namespace precursor
