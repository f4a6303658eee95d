#include "prp/error.hpp"

namespace prp {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonPositiveProbability: return "NonPositiveProbability";
        case ErrorCode::ProbabilitySumNotOne: return "ProbabilitySumNotOne";
        case ErrorCode::FiltrationNotRefining: return "FiltrationNotRefining";
        case ErrorCode::PartitionInvalid: return "PartitionInvalid";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NotAdapted: return "NotAdapted";
        case ErrorCode::NotPredictable: return "NotPredictable";
        case ErrorCode::NotMartingale: return "NotMartingale";
        case ErrorCode::StructureConditionFails: return "StructureConditionFails";
        case ErrorCode::JumpConditionViolated: return "JumpConditionViolated";
        case ErrorCode::InfeasibleSystem: return "InfeasibleSystem";
        case ErrorCode::NotInPolytope: return "NotInPolytope";
        case ErrorCode::NotEquivalent: return "NotEquivalent";
        case ErrorCode::NotADensity: return "NotADensity";
        case ErrorCode::FiltrationsNotIndependent: return "FiltrationsNotIndependent";
        case ErrorCode::NoEMM: return "NoEMM";
        case ErrorCode::HypothesisViolated: return "HypothesisViolated";
        case ErrorCode::NotAFiltration: return "NotAFiltration";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
        case ErrorCode::UnknownEntity: return "UnknownEntity";
        case ErrorCode::UnknownCommand: return "UnknownCommand";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace prp
