#pragma once

#include <stdexcept>
#include <string>

namespace ramsey {

/// Malformed textual input: structure files, map files.
class FormatError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Syntax error in a class-spec or formula string; carries the byte offset.
class SyntaxError : public std::runtime_error
{
public:
    SyntaxError(const std::string & what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position))
        , position_(position)
    {
    }

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// A well-formed input that violates an operation's precondition
/// (signature mismatch, unknown symbol, non-injective relation, ...).
class PreconditionError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace ramsey
