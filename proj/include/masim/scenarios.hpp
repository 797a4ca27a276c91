#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "masim/runtime.hpp"

namespace masim {

struct GridPos {
    int x = 0;
    int y = 0;
    bool operator==(const GridPos&) const = default;
};

struct ContaminantSpec {
    AgentId id;
    GridPos pos;
    std::string disease = "flu";
};

struct IndividualSpec {
    AgentId id;
    GridPos pos;
};

struct DoctorSpec {
    AgentId id;
    std::string region = "north";
};

struct EpidemicConfig {
    int grid_width = 5;
    int grid_height = 5;
    std::vector<ContaminantSpec> contaminants;
    std::vector<IndividualSpec> individuals;
    std::vector<DoctorSpec> doctors;
    AgentId authority = AgentId{"a1"};
    double infection_probability = 0.5;
    int proximity_radius = 1;  // Chebyshev distance in cells
    int detection_threshold = 3;
    int detection_window = 5;
    std::uint64_t seed = 0;
};

World build_epidemic(const EpidemicConfig& cfg);  // throws invalid_config

/// The environment half of one epidemic round: moves contaminated agents
/// one cell and draws infections per (source, target) pair in canonical
/// order. Returns the newly infected agents. schedule_round calls this via
/// the installed environment model.
std::vector<AgentId> infection_step(World& world);

/// Agents currently carrying a disease (contaminants plus infected
/// individuals), ascending.
std::vector<AgentId> contaminated_agents(const World& world);
std::vector<AgentId> infected_individuals(const World& world);

struct RequirementSpec {
    AgentId id;
    double value = 0.5;
    AgentId target;  // the function agent it informs
};

struct ConfigurationConfig {
    std::vector<RequirementSpec> requirements;
    std::vector<AgentId> functions;
    std::vector<AgentId> solutions;
    std::vector<AgentId> constraints;
    double threshold = 0.4;
    std::vector<std::tuple<AgentId, AgentId, double>> weights;
    double inhibition_threshold = 0.1;
    int value_mtype = 2;
    std::vector<AgentId> nonresponders;  // agents built without acknowledgment rules
};

World build_configuration(const ConfigurationConfig& cfg);  // throws invalid_config

struct ProposalSpec {
    AgentId designer;
    Round round = 0;
    std::string token;
};

struct MediationConfig {
    std::vector<AgentId> designers;  // at least 2
    std::vector<ProposalSpec> proposals;
    AgentId actor = AgentId{"mediator"};
    std::vector<AgentId> nonresponders;
};

World build_mediation(const MediationConfig& cfg);  // throws invalid_config

/// Minimal level-3 detection world: scripted reporter agents deliver case
/// reports to one authority on the given rounds.
World build_detection_harness(int threshold, int window, const std::vector<Round>& report_rounds);

}  // namespace masim
