#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dimfn {

/// Base for every error raised by user-supplied input (bad text, wrong
/// signature, mismatched arities). The CLI maps these to exit code 1.
class UserError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ArityError : public UserError {
public:
    using UserError::UserError;
};

class SyntaxError : public UserError {
public:
    SyntaxError(const std::string& what, std::size_t pos)
        : UserError(what + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

class SignatureError : public UserError {
public:
    using UserError::UserError;
};

class EvalError : public UserError {
public:
    using UserError::UserError;
};

/// A documented precondition of an operation was violated by the caller.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Raised when a size budget is exceeded; harness records the check as skipped.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reaching this means a bug in the engine, never bad input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace dimfn
