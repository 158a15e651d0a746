#pragma once

#include <stdexcept>
#include <string>

namespace hopfx {

enum class ErrorCode {
    DivisionByZero,
    ConductorMismatch,
    ParseError,
    DimMismatch,
    NotInvertible,
    NotAGroup,
    InternalConventionError,
    CoidealCheckFailed,
    IsoCheckFailed,
    PreconditionFailed,
    HomomorphismCheckFailed,
    NotFactorizable,
    NoRibbon,
    ModuleAxiomFailed,
    IoError,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ConductorMismatch: return "ConductorMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::NotAGroup: return "NotAGroup";
    case ErrorCode::InternalConventionError: return "InternalConventionError";
    case ErrorCode::CoidealCheckFailed: return "CoidealCheckFailed";
    case ErrorCode::IsoCheckFailed: return "IsoCheckFailed";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::HomomorphismCheckFailed: return "HomomorphismCheckFailed";
    case ErrorCode::NotFactorizable: return "NotFactorizable";
    case ErrorCode::NoRibbon: return "NoRibbon";
    case ErrorCode::ModuleAxiomFailed: return "ModuleAxiomFailed";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

} // namespace hopfx
