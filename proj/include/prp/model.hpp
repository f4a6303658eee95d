#pragma once

#include "prp/space.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace prp {

template <class T>
using Named = std::vector<std::pair<std::string, T>>;

/// Either the natural filtration of named processes or explicit partitions.
struct FiltrationSpec {
    std::vector<std::string> natural;
    std::vector<std::vector<std::vector<std::string>>> explicit_blocks;  ///< [t][block][outcome name]

    bool is_explicit() const { return natural.empty(); }
    bool operator==(const FiltrationSpec&) const = default;
};

/// A parsed and validated model file.
struct ModelDocument {
    std::string name;
    std::vector<std::string> outcomes;
    Vector probabilities;
    std::size_t horizon = 0;
    Named<Process> processes;
    std::optional<FiltrationSpec> filtration;  ///< absent: natural filtration of every process
    Named<std::vector<std::size_t>> random_times;
    Named<Vector> measures;
    Named<Vector> variables;

    FiniteFilteredSpace space;  ///< derived; not part of equality

    bool operator==(const ModelDocument& o) const;

    const Process* process(std::string_view name) const;
    const std::vector<std::size_t>* random_time(std::string_view name) const;
    const Vector* measure(std::string_view name) const;
    const Vector* variable(std::string_view name) const;
    std::optional<std::size_t> outcome_index(std::string_view name) const;

    /// Partitions listed in the filtration section. Throws UnknownEntity when
    /// the section is absent or names the natural filtration.
    Filtration explicit_filtration() const;
};

/// Throws ParseError (syntax, wrong type, unknown field, malformed rational;
/// the message carries a line or a field path) or ValidationError (the
/// message names the violated invariant).
ModelDocument parse_model(std::string_view text);

/// Canonical text form; parse_model(emit_model(m)) == m.
std::string emit_model(const ModelDocument& model);

/// Reads and parses a file. Throws ParseError when it cannot be read.
ModelDocument load_model(const std::string& path);

}  // namespace prp
