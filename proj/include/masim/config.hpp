#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "masim/scenarios.hpp"
#include "masim/system.hpp"

namespace masim {

/// Canonical JSON serialization of a system model. Loading the output of
/// save_system yields a structurally equal model.
std::string save_system(const SystemModel& model);
SystemModel load_system(const std::string& json_text);  // throws parse_error / ValidationError

/// A run definition: either a named scenario with its parameters or an
/// inline system model, plus script, seed and step count.
struct RunSpec {
    std::string scenario;  // "epidemic" | "configuration" | "mediation" | "" (inline system)
    std::optional<EpidemicConfig> epidemic;
    std::optional<ConfigurationConfig> configuration;
    std::optional<MediationConfig> mediation;
    std::optional<SystemModel> system;
    std::vector<ScriptedPercept> script;
    std::uint64_t seed = 0;
    Round steps = 20;
    Round obligation_timeout = 8;
};

RunSpec load_run_spec(const std::string& json_text);  // throws parse_error / ValidationError
RunSpec load_run_spec_file(const std::string& path);  // adds file_not_found

World build_world(const RunSpec& spec);

}  // namespace masim
