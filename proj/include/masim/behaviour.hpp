#pragma once

#include <functional>
#include <string>
#include <vector>

#include "masim/agent.hpp"
#include "masim/engine.hpp"

namespace masim {

/// Per-agent action history kept by the action manager. Rounds never
/// decrease.
struct ActionLog {
    std::vector<std::pair<Round, Effect>> entries;
};

void record_action(ActionLog& log, Round round, Effect effect);  // throws non_monotone_round

/// A knowledge write performed during a step, reported so the runtime can
/// trace it.
struct KnowledgeWrite {
    AgentId agent;
    std::string space;  // "facts" or "model"
    std::string key;
    Scalar value = 0.0;

    bool operator==(const KnowledgeWrite&) const = default;
};

/// What one step of an agent produced. Micro acts only appear for
/// collective agents; notes flag suppressed or irregular activity.
struct StepResult {
    std::vector<Effect> effects;
    std::vector<CommunicationAct> micro_acts;
    std::vector<KnowledgeWrite> writes;
    std::vector<std::string> interpretation_tags;
    std::vector<std::string> notes;
};

/// Merges the inbox and the environment view into one stimulus list:
/// inbox arrival order first, then percepts in ascending key order.
std::vector<Stimulus> observe(const AgentSpec& agent, const std::vector<CommunicationAct>& inbox,
                              const std::vector<Percept>& env_view);

/// Applies every matching interpretation rule in order, writing into the
/// agent's system model. Returns the tags of rules that fired.
std::vector<std::string> interpret(AgentSpec& agent, const std::vector<Stimulus>& stimuli,
                                   Round round,
                                   std::vector<KnowledgeWrite>* writes = nullptr);  // level >= 3

StepResult step_reactive(AgentSpec& agent, const std::vector<Stimulus>& stimuli, Round round);
StepResult step_routine(AgentSpec& agent, const std::vector<Stimulus>& stimuli, Round round);
StepResult step_cognitive(AgentSpec& agent, const std::vector<Stimulus>& stimuli, Round round);

using AgentLookup = std::function<AgentSpec&(const AgentId&)>;

/// Runs the internal member pipeline of a collective agent. Stimuli enter
/// at the observer; member-to-member acts are routed immediately inside
/// the step; the memorization member copies every internal act; only the
/// communication member's outward sends leave the actor, re-attributed to
/// the actor itself.
StepResult step_collective(AgentSpec& actor, const std::vector<Stimulus>& stimuli, Round round,
                           const AgentLookup& lookup);

/// Dispatch by agent level.
StepResult step_agent(AgentSpec& agent, const std::vector<Stimulus>& stimuli, Round round,
                      const AgentLookup& lookup);

}  // namespace masim
