#pragma once

#include <stdexcept>
#include <string>

namespace bhlab {

enum class ErrorKind {
    BadShape,
    Singular,
    NotInvertiblePolynomial,
    NotAnAtom,
    Inhomogeneous,
    NotInSA,
    NotAnEigenvector,
    WindowTooSmall,
    Unstable,
    NotACocycle,
    NotInWindow,
    BasisDeficient,
    NotTopDegree,
    MixedSectors,
    PrecisionLoss,
    PrimeDividesDet,
    OracleFallbackFailed,
};

inline const char *error_name(ErrorKind k)
{
    switch (k) {
    case ErrorKind::BadShape: return "BadShape";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::NotInvertiblePolynomial: return "NotInvertiblePolynomial";
    case ErrorKind::NotAnAtom: return "NotAnAtom";
    case ErrorKind::Inhomogeneous: return "Inhomogeneous";
    case ErrorKind::NotInSA: return "NotInSA";
    case ErrorKind::NotAnEigenvector: return "NotAnEigenvector";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::Unstable: return "Unstable";
    case ErrorKind::NotACocycle: return "NotACocycle";
    case ErrorKind::NotInWindow: return "NotInWindow";
    case ErrorKind::BasisDeficient: return "BasisDeficient";
    case ErrorKind::NotTopDegree: return "NotTopDegree";
    case ErrorKind::MixedSectors: return "MixedSectors";
    case ErrorKind::PrecisionLoss: return "PrecisionLoss";
    case ErrorKind::PrimeDividesDet: return "PrimeDividesDet";
    case ErrorKind::OracleFallbackFailed: return "OracleFallbackFailed";
    }
    return "Unknown";
}

class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind)
    {
    }
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace bhlab
