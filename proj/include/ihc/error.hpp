#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ihc {

enum class ErrorKind {
    // input validation
    BadLevel,
    EmptyRegularPart,
    BadParam,
    ParseError,
    MissingCodim,
    ComplexMismatch,
    NotAConstructorImage,
    NotAFace,
    NotRegular,
    // computational preconditions
    NonOrientable,
    NotAComplex,
    NotClosed,
    NotAField,
    NotInSpan,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::BadLevel: return "BadLevel";
    case ErrorKind::EmptyRegularPart: return "EmptyRegularPart";
    case ErrorKind::BadParam: return "BadParam";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::MissingCodim: return "MissingCodim";
    case ErrorKind::ComplexMismatch: return "ComplexMismatch";
    case ErrorKind::NotAConstructorImage: return "NotAConstructorImage";
    case ErrorKind::NotAFace: return "NotAFace";
    case ErrorKind::NotRegular: return "NotRegular";
    case ErrorKind::NonOrientable: return "NonOrientable";
    case ErrorKind::NotAComplex: return "NotAComplex";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NotAField: return "NotAField";
    case ErrorKind::NotInSpan: return "NotInSpan";
    }
    return "Unknown";
}

/// True for errors caused by malformed user input, as opposed to
/// mathematical preconditions that fail on well-formed input.
inline bool is_input_error(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::NonOrientable:
    case ErrorKind::NotAComplex:
    case ErrorKind::NotClosed:
    case ErrorKind::NotAField:
    case ErrorKind::NotInSpan:
        return false;
    default:
        return true;
    }
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace ihc
