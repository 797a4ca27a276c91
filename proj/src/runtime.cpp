#include "masim/runtime.hpp"

#include <algorithm>
#include <sstream>

#include "masim/error.hpp"

namespace masim {

World make_world(SystemModel system, std::uint64_t seed) {
    World world;
    world.system = std::move(system);
    world.seed = seed;
    for (const auto& [id, agent] : world.system.agents) {
        if (agent.level == 4) {
            for (const auto& [role, member] : agent.members) {
                world.collective_members.insert(member);
            }
        }
    }
    return world;
}

void set_agent_env(World& world, const AgentId& agent, const std::string& key, Scalar value) {
    auto& slot = world.agent_env[agent];
    auto it = slot.find(key);
    if (it != slot.end() && it->second == value) return;
    slot[key] = value;
    world.trace.append(EnvChangeRecord{world.round, agent, key, value});
}

void set_global_env(World& world, const std::string& key, Scalar value) {
    auto it = world.global_env.find(key);
    if (it != world.global_env.end() && it->second == value) return;
    world.global_env[key] = value;
    world.trace.append(EnvChangeRecord{world.round, AgentId{}, key, value});
}

Scalar get_agent_env(const World& world, const AgentId& agent, const std::string& key,
                     Scalar fallback) {
    auto slot = world.agent_env.find(agent);
    if (slot == world.agent_env.end()) return fallback;
    auto it = slot->second.find(key);
    return it == slot->second.end() ? fallback : it->second;
}

void queue_percept(World& world, const AgentId& agent, Percept percept) {
    world.percepts_next[agent].push_back(std::move(percept));
}

namespace {

std::string act_summary(const CommunicationAct& act) {
    return to_string(act.performative) + " " + act.sender.id + "->" + act.receiver.id + " conv " +
           act.conversation;
}

void trace_new_violations(World& world, std::size_t before) {
    const auto& violations = world.tracker.violations();
    for (std::size_t i = before; i < violations.size(); ++i) {
        world.trace.append(ProtocolEventRecord{world.round, "violation",
                                               violations[i].detail + " (" +
                                                   act_summary(violations[i].act) + ")"});
    }
}

struct AffinityOutcome {
    AgentId from;
    AgentId to;
    Outcome outcome;
};

void deliver_act(World& world, const CommunicationAct& act,
                 std::vector<AffinityOutcome>& outcomes) {
    if (!world.system.agents.count(act.receiver)) {
        throw SimError(Errc::unknown_agent, "delivery to unknown agent '" + act.receiver.id + "'");
    }
    world.mailboxes[act.receiver].push_back(act);
    ++world.acts_delivered;
    world.trace.append(DeliveredAct{world.round, act, false});

    std::size_t violations_before = world.tracker.violations().size();
    if (!world.tracker.table().expected(act.performative).empty()) {
        world.trace.append(
            ProtocolEventRecord{world.round, "obligation_open", act_summary(act)});
    }
    auto events = world.tracker.record_act(act, world.round);
    trace_new_violations(world, violations_before);
    for (const SatisfactionEvent& ev : events) {
        world.trace.append(ProtocolEventRecord{
            world.round, "obligation_satisfied",
            act_summary(ev.initiator) + " by " + ev.responder.id + " with " +
                to_string(ev.response)});
        if (ev.response == Performative::confirm || ev.response == Performative::accept) {
            outcomes.push_back({ev.initiator.sender, ev.responder, Outcome::success});
        } else if (ev.response == Performative::refuse) {
            outcomes.push_back({ev.initiator.sender, ev.responder, Outcome::failure});
        }
    }

    // Acknowledgment barriers listen for confirms in their diffusion's
    // conversation, addressed to the diffusing agent.
    auto barrier_it = world.barriers.find(act.conversation);
    if (barrier_it != world.barriers.end() && act.performative == Performative::confirm &&
        act.receiver == barrier_it->second.initiator.receiver) {
        AckBarrier& barrier = barrier_it->second;
        bool complete = false;
        try {
            complete = ack_barrier_step(barrier, act);
        } catch (const SimError& e) {
            world.trace.append(ProtocolEventRecord{world.round, "violation", e.what()});
        }
        if (complete) {
            if (barrier.has_held_response) {
                CommunicationAct release = barrier.held_response;
                release.round = world.round;
                world.outbox.push_back(release);
                ++world.acts_sent;
            }
            world.trace.append(ProtocolEventRecord{world.round, "barrier_complete",
                                                   act_summary(barrier.initiator)});
            world.barriers.erase(barrier_it);
        }
    }
}

std::string mint_conversation(World& world, const char* prefix, const AgentId& sender) {
    std::ostringstream os;
    os << prefix << world.round << "-" << sender.id << "-" << world.conversation_seq++;
    return os.str();
}

struct EffectBatch {
    AgentId agent;
    std::vector<Effect> effects;
};

void send_act(World& world, CommunicationAct act) {
    if (act.conversation.empty()) {
        act.conversation = mint_conversation(world, "c", act.sender);
    }
    act.round = world.round;
    world.outbox.push_back(std::move(act));
    ++world.acts_sent;
}

bool diffusion_authorized(const World& world, const AgentId& sender, const Community& community,
                          Performative performative) {
    if (community.members.count(sender)) return true;
    if (world.system.interactions.empty()) return true;
    auto role_it = world.system.roles.find(sender);
    if (role_it == world.system.roles.end()) return false;
    for (const InteractionTriple& t : world.system.interactions) {
        if (t.sender_role == role_it->second.name && t.performative == performative) return true;
    }
    return false;
}

void expand_batch(World& world, EffectBatch& batch,
                  std::vector<std::pair<AgentId, EnvironmentOpEffect>>& env_ops) {
    std::vector<AckBarrier> new_barriers;
    // Diffusions first: they decide whether this agent's own response to its
    // initiator must wait for acknowledgments.
    for (Effect& effect : batch.effects) {
        auto* diff = std::get_if<DiffusionEffect>(&effect.body);
        if (!diff) continue;
        const Community* community = world.system.find_community(diff->community);
        if (!community) {
            throw SimError(Errc::unknown_community, "UnknownCommunity(" + diff->community + ")");
        }
        if (!diffusion_authorized(world, batch.agent, *community, diff->act_template.performative)) {
            throw SimError(Errc::protocol_violation,
                           "agent '" + batch.agent.id + "' may not diffuse to '" +
                               diff->community + "'");
        }
        CommunicationAct act_template = diff->act_template;
        act_template.conversation = mint_conversation(world, "d", batch.agent);
        act_template.round = world.round;
        std::vector<CommunicationAct> acts =
            diffuse(batch.agent, *community, act_template, world.system.affinity);
        AckBarrier barrier;
        bool track_barrier =
            effect.cause && !world.tracker.table().expected(effect.cause->performative).empty();
        for (CommunicationAct& act : acts) {
            if (track_barrier) barrier.expected.insert(act.receiver);
            world.outbox.push_back(act);
            ++world.acts_sent;
        }
        if (track_barrier) {
            barrier.initiator = *effect.cause;
            barrier.conversation = act_template.conversation;
            new_barriers.push_back(std::move(barrier));
        }
    }

    for (Effect& effect : batch.effects) {
        if (auto* out = std::get_if<OutboundEffect>(&effect.body)) {
            bool held = false;
            if (effect.cause) {
                for (AckBarrier& barrier : new_barriers) {
                    if (barrier.has_held_response) continue;
                    if (barrier.initiator != *effect.cause) continue;
                    if (out->act.receiver != barrier.initiator.sender) continue;
                    if (out->act.conversation != barrier.initiator.conversation) continue;
                    if (!world.tracker.table()
                             .expected(barrier.initiator.performative)
                             .count(out->act.performative)) {
                        continue;
                    }
                    barrier.held_response = out->act;
                    barrier.held_response.round = world.round;
                    barrier.has_held_response = true;
                    held = true;
                    break;
                }
            }
            if (!held) send_act(world, out->act);
        } else if (auto* env = std::get_if<EnvironmentOpEffect>(&effect.body)) {
            env_ops.emplace_back(batch.agent, *env);
        }
    }

    for (AckBarrier& barrier : new_barriers) {
        if (barrier.expected.empty()) {
            // nothing to wait for: release immediately
            if (barrier.has_held_response) {
                world.outbox.push_back(barrier.held_response);
                ++world.acts_sent;
            }
            world.trace.append(ProtocolEventRecord{world.round, "barrier_complete",
                                                   act_summary(barrier.initiator)});
        } else {
            world.barriers.emplace(barrier.conversation, std::move(barrier));
        }
    }
}

}  // namespace

void apply_env_op(World& world, const AgentId& agent, const EnvironmentOpEffect& op) {
    if (op.op == "set") {
        auto key = op.params.find("key");
        auto value = op.params.find("value");
        if (key == op.params.end() || value == op.params.end()) {
            throw SimError(Errc::runtime_error, "env op 'set' needs key and value params");
        }
        set_agent_env(world, agent, as_string(key->second), value->second);
        return;
    }
    throw SimError(Errc::runtime_error, "no environment model handles op '" + op.op + "'");
}

void schedule_round(World& world) {
    world.trace.append(RoundMarker{world.round});

    // Phase A: deliver everything sent last round, sender ascending then
    // send order. Deliveries feed the conversation tracker and barriers.
    std::vector<CommunicationAct> to_deliver;
    to_deliver.swap(world.outbox);
    std::stable_sort(to_deliver.begin(), to_deliver.end(),
                     [](const CommunicationAct& a, const CommunicationAct& b) {
                         return a.sender < b.sender;
                     });
    std::vector<AffinityOutcome> outcomes;
    for (const CommunicationAct& act : to_deliver) {
        deliver_act(world, act, outcomes);
    }

    // Phase B: step agents in ascending id order on this round's stimuli.
    std::map<AgentId, std::vector<Percept>> percepts;
    percepts.swap(world.percepts_next);
    for (const ScriptedPercept& s : world.script) {
        if (s.round == world.round) percepts[s.agent].push_back(s.percept);
    }

    AgentLookup lookup = [&world](const AgentId& id) -> AgentSpec& {
        auto it = world.system.agents.find(id);
        if (it == world.system.agents.end()) {
            throw SimError(Errc::unknown_agent, "UnknownAgent(" + id.id + ")");
        }
        return it->second;
    };

    std::vector<EffectBatch> batches;
    for (auto& [id, agent] : world.system.agents) {
        if (world.collective_members.count(id)) continue;
        std::vector<CommunicationAct> inbox;
        if (auto mb = world.mailboxes.find(id); mb != world.mailboxes.end()) {
            inbox.swap(mb->second);
        }
        std::vector<Percept> env_view;
        if (auto pv = percepts.find(id); pv != percepts.end()) env_view = std::move(pv->second);
        if (inbox.empty() && env_view.empty()) continue;

        std::vector<Stimulus> stimuli = observe(agent, inbox, env_view);
        StepResult result;
        try {
            result = step_agent(agent, stimuli, world.round, lookup);
        } catch (const SimError& e) {
            throw SimError(e.code(), "agent '" + id.id + "' round " +
                                         std::to_string(world.round) + ": " + e.what());
        }

        for (const CommunicationAct& micro : result.micro_acts) {
            world.trace.append(DeliveredAct{world.round, micro, true});
        }
        for (const KnowledgeWrite& w : result.writes) {
            world.trace.append(KnowledgeWriteRecord{world.round, w.agent, w.space, w.key, w.value});
        }
        for (const std::string& note : result.notes) {
            world.trace.append(ProtocolEventRecord{world.round, "containment", note});
        }
        EffectBatch batch;
        batch.agent = id;
        for (Effect& effect : result.effects) {
            record_action(world.action_logs[id], world.round, effect);
            batch.effects.push_back(std::move(effect));
        }
        if (!batch.effects.empty()) batches.push_back(std::move(batch));
    }

    // Phase C: expand sends and diffusions, apply environment effects,
    // resolve timeouts, then fold this round's outcomes into the affinity
    // network.
    std::vector<std::pair<AgentId, EnvironmentOpEffect>> env_ops;
    for (EffectBatch& batch : batches) {
        try {
            expand_batch(world, batch, env_ops);
        } catch (const SimError& e) {
            throw SimError(e.code(), "agent '" + batch.agent.id + "' round " +
                                         std::to_string(world.round) + ": " + e.what());
        }
    }

    if (world.env_model) {
        world.env_model->apply(world, env_ops);
    } else {
        for (const auto& [agent, op] : env_ops) apply_env_op(world, agent, op);
    }

    for (const Obligation& ob : world.tracker.flag_timeouts(world.round, world.obligation_timeout)) {
        world.trace.append(
            ProtocolEventRecord{world.round, "overdue", act_summary(ob.act)});
        outcomes.push_back({ob.act.sender, ob.act.receiver, Outcome::failure});
    }
    for (const AffinityOutcome& o : outcomes) {
        reinforce(world.system.affinity, o.from, o.to, o.outcome);
    }

    ++world.round;
}

const Trace& run(World& world, Round steps) {
    for (Round i = 0; i < steps; ++i) schedule_round(world);
    return world.trace;
}

bool has_protocol_failures(const World& world) {
    if (!world.tracker.violations().empty()) return true;
    return !world.tracker.pending_obligations(world.round, world.obligation_timeout).empty();
}

}  // namespace masim
