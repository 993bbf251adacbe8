#pragma once

#include <stdexcept>
#include <string>

#include "tatefrob/stats.hpp"

namespace tatefrob {

// Domain error with a stable machine-readable code (surfaced as JSON by the CLI).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {
        if (code_ == "InternalInconsistency") ++stats::internal_errors;
    }
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

namespace errc {
// finite_field
inline constexpr const char* NonPrime = "NonPrime";
inline constexpr const char* TooLarge = "TooLarge";
// curves
inline constexpr const char* Singular = "Singular";
inline constexpr const char* BadTorsionLevel = "BadTorsionLevel";
inline constexpr const char* CapExceeded = "CapExceeded";
// class_orders
inline constexpr const char* BadDiscriminant = "BadDiscriminant";
// hcp
inline constexpr const char* PrecisionUnderflow = "PrecisionUnderflow";
inline constexpr const char* PrecisionExhausted = "PrecisionExhausted";
// frobenius
inline constexpr const char* InternalInconsistency = "InternalInconsistency";
inline constexpr const char* NonIntegralEntry = "NonIntegralEntry";
inline constexpr const char* NoRowMatch = "NoRowMatch";
inline constexpr const char* WrongIsogenyClass = "WrongIsogenyClass";
inline constexpr const char* SpecialEvenTorsion = "SpecialEvenTorsion";
// oracle
inline constexpr const char* BasisFailure = "BasisFailure";
// reciprocity
inline constexpr const char* BadReductionPrime = "BadReductionPrime";
inline constexpr const char* SpecialN2Exclusion = "SpecialN2Exclusion";
}  // namespace errc

}  // namespace tatefrob
