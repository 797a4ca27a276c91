#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "masim/rule.hpp"

namespace masim {

/// Cooperation roles inside a collective (level 4) agent.
enum class CoopRole { observer, knowledge, control, monitoring, memorization, communication };

inline constexpr CoopRole kAllCoopRoles[] = {
    CoopRole::observer,     CoopRole::knowledge,    CoopRole::control,
    CoopRole::monitoring,   CoopRole::memorization, CoopRole::communication,
};

std::string to_string(CoopRole r);
std::optional<CoopRole> parse_coop_role(std::string_view token);

/// Reactive (level 1) stimulus-to-action mapping. First match wins.
struct ReflexEntry {
    EventPattern event;
    std::vector<ActionSpec> actions;

    bool operator==(const ReflexEntry&) const = default;
};

/// Level 3 observation interpretation: matching stimuli write the listed
/// keys into the agent's system model and report the rule's tag. The guard
/// refines the trigger (e.g. separating known from unknown codes); a rule
/// matches only when both hold.
struct InterpretationRule {
    EventPattern trigger;
    Condition guard;  // defaults to always true
    std::vector<std::pair<std::string, ValueExpr>> updates;  // key templates -> value
    std::string tag;

    bool operator==(const InterpretationRule&) const = default;
};

struct AgentSpec {
    AgentId id;
    int level = 1;  // 1 reactive, 2 routine, 3 cognitive, 4 collective
    KnowledgeBase kb;
    std::vector<ReflexEntry> reflexes;            // level 1
    std::vector<InterpretationRule> interpreter;  // level 3
    std::map<CoopRole, AgentId> members;          // level 4

    bool operator==(const AgentSpec&) const = default;
};

struct Role {
    std::string name;
    int level = 1;

    bool operator==(const Role&) const = default;
};

}  // namespace masim
