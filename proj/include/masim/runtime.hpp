#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "masim/behaviour.hpp"
#include "masim/protocol.hpp"
#include "masim/system.hpp"
#include "masim/trace.hpp"

namespace masim {

struct World;

/// Scenario physics applied at the end of each round, after message
/// expansion. Receives the environment ops the agents emitted this round.
class EnvModel {
public:
    virtual ~EnvModel() = default;
    virtual void apply(World& world, const std::vector<std::pair<AgentId, EnvironmentOpEffect>>& ops) = 0;
};

struct ScriptedPercept {
    Round round = 0;
    AgentId agent;
    Percept percept;
};

struct World {
    SystemModel system;

    std::map<AgentId, std::map<std::string, Scalar>> agent_env;
    std::map<std::string, Scalar> global_env;

    std::map<AgentId, std::vector<CommunicationAct>> mailboxes;
    Round round = 0;
    std::uint64_t seed = 0;

    ConversationTracker tracker;
    std::map<std::string, AckBarrier> barriers;  // keyed by diffusion conversation
    Round obligation_timeout = 8;

    Trace trace;
    std::map<AgentId, ActionLog> action_logs;

    // Acts sent this round, delivered next round.
    std::vector<CommunicationAct> outbox;
    // Percepts queued for the next round (scripted ones carry their round).
    std::map<AgentId, std::vector<Percept>> percepts_next;
    std::vector<ScriptedPercept> script;

    std::shared_ptr<EnvModel> env_model;

    // Agents driven internally by a collective actor; skipped by the scheduler.
    std::set<AgentId> collective_members;

    std::int64_t acts_sent = 0;
    std::int64_t acts_delivered = 0;
    std::int64_t conversation_seq = 0;
};

World make_world(SystemModel system, std::uint64_t seed);

/// Writes a per-agent environment value, tracing the change. No-op when the
/// value is already current.
void set_agent_env(World& world, const AgentId& agent, const std::string& key, Scalar value);
void set_global_env(World& world, const std::string& key, Scalar value);
Scalar get_agent_env(const World& world, const AgentId& agent, const std::string& key,
                     Scalar fallback);

/// Queues a percept for delivery at the start of the next round.
void queue_percept(World& world, const AgentId& agent, Percept percept);

/// Applies one generic environment op (currently "set"). Environment models
/// delegate ops they do not handle themselves.
void apply_env_op(World& world, const AgentId& agent, const EnvironmentOpEffect& op);

/// One deterministic round: deliver last round's acts, step every agent in
/// ascending id order, then expand sends and diffusions, apply environment
/// effects, resolve protocol events and affinity outcomes.
void schedule_round(World& world);

const Trace& run(World& world, Round steps);

/// True when the run recorded protocol violations or still has overdue
/// obligations at the current round.
bool has_protocol_failures(const World& world);

}  // namespace masim
