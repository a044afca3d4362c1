#ifndef GSEM_ERROR_HPP
#define GSEM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace gsem {

enum class ErrorKind {
    dimension,
    degenerate_design,
    insufficient_samples,
    numerical_degeneracy,
    precondition,
    parse,
    validation,
    io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base of every error thrown by the library. `kind()` drives the CLI exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

#define GSEM_DEFINE_ERROR(Name, Kind)                                                  \
    class Name : public Error {                                                        \
    public:                                                                            \
        explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {}       \
    };

GSEM_DEFINE_ERROR(DimensionError, dimension)
GSEM_DEFINE_ERROR(DegenerateDesignError, degenerate_design)
GSEM_DEFINE_ERROR(InsufficientSamplesError, insufficient_samples)
GSEM_DEFINE_ERROR(NumericalDegeneracyError, numerical_degeneracy)
GSEM_DEFINE_ERROR(PreconditionError, precondition)
GSEM_DEFINE_ERROR(ParseError, parse)
GSEM_DEFINE_ERROR(ValidationError, validation)
GSEM_DEFINE_ERROR(IoError, io)

#undef GSEM_DEFINE_ERROR

}  // namespace gsem

#endif  // GSEM_ERROR_HPP
