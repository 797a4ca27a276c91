#pragma once

#include <map>
#include <string>
#include <vector>

#include "masim/agent.hpp"
#include "masim/error.hpp"
#include "masim/organization.hpp"

namespace masim {

/// Allowed (sender role, receiver role, performative) triple. An empty
/// interaction list leaves communication unrestricted.
struct InteractionTriple {
    std::string sender_role;
    std::string receiver_role;
    Performative performative = Performative::inform;

    bool operator==(const InteractionTriple&) const = default;
};

struct SystemModel {
    std::map<AgentId, AgentSpec> agents;
    std::vector<InteractionTriple> interactions;
    std::map<AgentId, Role> roles;
    std::vector<Community> organizations;
    AffinityNetwork affinity;

    bool operator==(const SystemModel&) const = default;

    const Community* find_community(const std::string& name) const;
};

/// Assembles and cross-validates the system tuple. Collects every
/// diagnostic before failing.
SystemModel build_system(std::map<AgentId, AgentSpec> agents,
                         std::vector<InteractionTriple> interactions,
                         std::map<AgentId, Role> roles,
                         std::vector<Community> organizations,
                         AffinityNetwork affinity);  // throws ValidationError

/// Static checks for one rule in context: binder names, variable references,
/// receiver and community resolution, condition depth.
std::vector<Diagnostic> validate_rule(const DecisionRule& rule, const SystemModel& context,
                                      const AgentId& owner);

std::vector<Diagnostic> validate_agent(const AgentSpec& agent, const SystemModel& context);

}  // namespace masim
