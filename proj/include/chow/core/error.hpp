#pragma once

#include <stdexcept>
#include <string>

namespace chow {

/// Root of every error raised by the library. `kind()` is the stable short
/// name used in reports (e.g. "BadPrime", "NotDivisible").
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define CHOW_DEFINE_ERROR(Name)                                              \
    class Name : public Error {                                              \
    public:                                                                  \
        explicit Name(const std::string& what) : Error(#Name, what) {}       \
    }

CHOW_DEFINE_ERROR(BadPrime);
CHOW_DEFINE_ERROR(ShapeMismatch);
CHOW_DEFINE_ERROR(DomainMismatch);
CHOW_DEFINE_ERROR(UnknownVariable);
CHOW_DEFINE_ERROR(DivisionByZero);
CHOW_DEFINE_ERROR(NotHomogeneous);
CHOW_DEFINE_ERROR(DegreeMismatch);
CHOW_DEFINE_ERROR(BadDegree);
CHOW_DEFINE_ERROR(SocleNotOneDimensional);
CHOW_DEFINE_ERROR(IdealNotMonomial);
CHOW_DEFINE_ERROR(LineIsComponent);
CHOW_DEFINE_ERROR(NonRationalIntersection);
CHOW_DEFINE_ERROR(UnknownLabel);
CHOW_DEFINE_ERROR(NotInvariant);
CHOW_DEFINE_ERROR(NotSmooth);
CHOW_DEFINE_ERROR(UnknownCheck);

#undef CHOW_DEFINE_ERROR

/// Scenario / polynomial text error with a 1-based source position.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error("ParseError", what + " (line " + std::to_string(line) + ", column " +
                                  std::to_string(column) + ")"),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace chow
