#ifndef GPTLAB_ERROR_HPP
#define GPTLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace gptlab {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error
{
    public:
        using std::runtime_error::runtime_error;
};

/// Operands of incompatible dimension.
class DimensionError : public Error
{
    public:
        DimensionError(const std::string& what, std::size_t lhs, std::size_t rhs)
            : Error(what + ": dimension " + std::to_string(lhs) + " vs " + std::to_string(rhs))
        {
        }
};

/// Malformed user input; carries the location when one is known.
class InputError : public Error
{
    public:
        explicit InputError(const std::string& what, std::size_t line = 0)
            : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line)
        {
        }

        std::size_t line() const { return line_; }

    private:
        std::size_t line_;
};

/// An operation was called on data that does not meet its precondition.
class PreconditionError : public Error
{
    public:
        using Error::Error;
};

/// A theory produced a value that is not a probability, or similar.
class ConsistencyError : public Error
{
    public:
        using Error::Error;
};

/// A self-check inside the library failed. Always a bug.
class InternalError : public Error
{
    public:
        using Error::Error;
};

}   // namespace gptlab

#endif
