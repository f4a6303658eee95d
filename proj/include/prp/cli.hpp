#pragma once

#include "prp/json_text.hpp"
#include "prp/model.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace prp::cli {

enum class Format { Text, Structured };

/// Pass: every evaluated conclusion holds. Inapplicable: a hypothesis fails,
/// so nothing is concluded. Fail: a conclusion is violated.
enum class Verdict { Pass, Fail, Inapplicable };

std::string_view to_string(Verdict v) noexcept;

/// Exit status: 0 for pass and inapplicable, 1 for fail.
int exit_code(Verdict v) noexcept;

struct Options {
    std::optional<std::string> filtration;   ///< "natural:X,Y" or "explicit"
    std::optional<std::string> integrators;  ///< "A,B,QC(A,B)"
    std::optional<std::string> measure;      ///< measure name, "P", or "density:H"
    std::optional<std::string> scenario;
    std::optional<std::string> random_time;
    Format format = Format::Text;
};

struct Check {
    std::string name;
    std::optional<bool> holds;  ///< empty: not evaluated
};

struct ScenarioReport {
    std::string command;
    std::string scenario;  ///< empty unless a scenario ran
    std::string model;
    std::vector<Check> hypotheses;
    std::vector<Check> conclusions;
    Json values = Json::object();
    std::string note;

    Verdict verdict() const;
};

enum class EntityKind { Process, RandomTime };

struct Role {
    EntityKind kind;
    std::string default_name;
};

struct ScenarioDescriptor {
    std::string name;
    std::vector<std::string> aliases;
    std::string model;  ///< bundled model it reproduces
    std::string summary;
    std::vector<Role> roles;  ///< processes bind from --integrators, times from --random-time
    std::vector<std::string> hypotheses;
    std::vector<std::string> conclusions;
};

const std::vector<ScenarioDescriptor>& builtin_scenarios();

/// nullptr when no scenario has this name or alias.
const ScenarioDescriptor* find_scenario(std::string_view name);

/// `args` are the positional arguments after the model (entity names).
/// Throws UnknownCommand, UnknownEntity, and library errors on bad input.
ScenarioReport run_command(const std::string& command, const ModelDocument& model,
                           const std::vector<std::string>& args, const Options& options);

std::string render(const ScenarioReport& report, Format format);

/// Whole command line after the program name. Returns the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace prp::cli
