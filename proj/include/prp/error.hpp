#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace prp {

/// Named failure conditions raised by the library and the command line tool.
enum class ErrorCode {
    NonPositiveProbability,
    ProbabilitySumNotOne,
    FiltrationNotRefining,
    PartitionInvalid,
    DimensionMismatch,
    NotAdapted,
    NotPredictable,
    NotMartingale,
    StructureConditionFails,
    JumpConditionViolated,
    InfeasibleSystem,
    NotInPolytope,
    NotEquivalent,
    NotADensity,
    FiltrationsNotIndependent,
    NoEMM,
    HypothesisViolated,
    NotAFiltration,
    ParseError,
    ValidationError,
    UnknownEntity,
    UnknownCommand,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace prp
