#include "masim/behaviour.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "masim/error.hpp"

namespace masim {

void record_action(ActionLog& log, Round round, Effect effect) {
    if (!log.entries.empty() && round < log.entries.back().first) {
        throw SimError(Errc::non_monotone_round,
                       "round " + std::to_string(round) + " precedes last logged round " +
                           std::to_string(log.entries.back().first));
    }
    log.entries.emplace_back(round, std::move(effect));
}

std::vector<Stimulus> observe(const AgentSpec&, const std::vector<CommunicationAct>& inbox,
                              const std::vector<Percept>& env_view) {
    std::vector<Stimulus> stimuli;
    stimuli.reserve(inbox.size() + env_view.size());
    for (const CommunicationAct& act : inbox) stimuli.emplace_back(act);
    std::vector<Percept> sorted = env_view;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Percept& a, const Percept& b) { return a.key < b.key; });
    for (Percept& p : sorted) stimuli.emplace_back(std::move(p));
    return stimuli;
}

namespace {

Binding with_round(Binding b, Round round) {
    b["round"] = static_cast<double>(round);
    return b;
}

void require_level(const AgentSpec& agent, int level) {
    if (agent.level != level) {
        throw SimError(Errc::level_mismatch, "agent '" + agent.id.id + "' is level " +
                                                 std::to_string(agent.level) + ", expected " +
                                                 std::to_string(level));
    }
}

void apply_knowledge_update(AgentSpec& agent, const KnowledgeUpdateEffect& upd,
                            StepResult& result) {
    agent.kb.facts[upd.key] = upd.value;
    result.writes.push_back(KnowledgeWrite{agent.id, "facts", upd.key, upd.value});
}

void emit(AgentSpec& agent, Effect effect, const Stimulus& stimulus, StepResult& result) {
    if (const CommunicationAct* act = as_message(stimulus)) effect.cause = *act;
    if (const auto* upd = std::get_if<KnowledgeUpdateEffect>(&effect.body)) {
        apply_knowledge_update(agent, *upd, result);
    }
    result.effects.push_back(std::move(effect));
}

}  // namespace

std::vector<std::string> interpret(AgentSpec& agent, const std::vector<Stimulus>& stimuli,
                                   Round round, std::vector<KnowledgeWrite>* writes) {
    if (agent.level < 3) {
        throw SimError(Errc::level_too_low,
                       "interpretation needs level >= 3, agent '" + agent.id.id + "' is level " +
                           std::to_string(agent.level));
    }
    std::vector<std::string> tags;
    for (const Stimulus& stimulus : stimuli) {
        for (const InterpretationRule& rule : agent.interpreter) {
            std::optional<Binding> bindings = match_event(rule.trigger, stimulus);
            if (!bindings) continue;
            Binding bound = with_round(std::move(*bindings), round);
            if (!eval_condition(rule.guard, bound, agent.kb)) continue;
            for (const auto& [key_template, expr] : rule.updates) {
                std::string key = expand_key(key_template, bound);
                Scalar value = eval_value(expr, bound, agent.kb);
                agent.kb.system_model[key] = value;
                if (writes) writes->push_back(KnowledgeWrite{agent.id, "model", key, value});
            }
            tags.push_back(rule.tag);
        }
    }
    return tags;
}

StepResult step_reactive(AgentSpec& agent, const std::vector<Stimulus>& stimuli, Round round) {
    require_level(agent, 1);
    StepResult result;
    for (const Stimulus& stimulus : stimuli) {
        for (const ReflexEntry& reflex : agent.reflexes) {
            std::optional<Binding> bindings = match_event(reflex.event, stimulus);
            if (!bindings) continue;
            Binding bound = with_round(std::move(*bindings), round);
            for (const ActionSpec& action : reflex.actions) {
                emit(agent, apply_action(action, bound, agent.kb, agent.id), stimulus, result);
            }
            break;  // first matching reflex wins
        }
    }
    return result;
}

namespace {

void routine_pass(AgentSpec& agent, const std::vector<Stimulus>& stimuli, Round round,
                  StepResult& result) {
    const Binding seed{{"round", static_cast<double>(round)}};
    for (const Stimulus& stimulus : stimuli) {
        auto fired = decide(agent.kb.rules, stimulus, agent.kb, seed);
        for (auto& [rule, bindings] : fired) {
            for (const ActionSpec& action : rule->actions) {
                emit(agent, apply_action(action, bindings, agent.kb, agent.id), stimulus, result);
            }
        }
    }
}

}  // namespace

StepResult step_routine(AgentSpec& agent, const std::vector<Stimulus>& stimuli, Round round) {
    require_level(agent, 2);
    StepResult result;
    routine_pass(agent, stimuli, round, result);
    return result;
}

StepResult step_cognitive(AgentSpec& agent, const std::vector<Stimulus>& stimuli, Round round) {
    require_level(agent, 3);
    StepResult result;
    result.interpretation_tags = interpret(agent, stimuli, round, &result.writes);
    routine_pass(agent, stimuli, round, result);
    return result;
}

namespace {

StepResult step_member(AgentSpec& member, const Stimulus& stimulus, Round round) {
    std::vector<Stimulus> one{stimulus};
    switch (member.level) {
        case 1: return step_reactive(member, one, round);
        case 2: return step_routine(member, one, round);
        case 3: return step_cognitive(member, one, round);
        default:
            throw SimError(Errc::level_mismatch,
                           "collective member '" + member.id.id + "' must be level 1..3");
    }
}

}  // namespace

StepResult step_collective(AgentSpec& actor, const std::vector<Stimulus>& stimuli, Round round,
                           const AgentLookup& lookup) {
    require_level(actor, 4);
    for (CoopRole role : kAllCoopRoles) {
        if (!actor.members.count(role)) {
            throw SimError(Errc::incomplete_members,
                           "actor '" + actor.id.id + "' missing member '" + to_string(role) + "'");
        }
    }

    std::set<AgentId> member_ids;
    for (const auto& [role, id] : actor.members) member_ids.insert(id);
    const AgentId& communication = actor.members.at(CoopRole::communication);
    const AgentId& memorization = actor.members.at(CoopRole::memorization);
    const AgentId& monitoring = actor.members.at(CoopRole::monitoring);

    StepResult result;
    if (stimuli.empty()) return result;

    auto bump = [&](const AgentId& member_id, const char* counter) {
        AgentSpec& member = lookup(member_id);
        double next = 0.0;
        if (auto it = member.kb.facts.find(counter); it != member.kb.facts.end()) {
            next = as_number(it->second);
        }
        next += 1.0;
        member.kb.facts[counter] = next;
        result.writes.push_back(KnowledgeWrite{member_id, "facts", counter, next});
    };

    std::deque<std::pair<AgentId, Stimulus>> pending;
    for (const Stimulus& stimulus : stimuli) {
        pending.emplace_back(actor.members.at(CoopRole::observer), stimulus);
    }

    while (!pending.empty()) {
        auto [member_id, stimulus] = std::move(pending.front());
        pending.pop_front();
        AgentSpec& member = lookup(member_id);
        StepResult sub = step_member(member, stimulus, round);
        for (KnowledgeWrite& w : sub.writes) result.writes.push_back(std::move(w));
        for (std::string& tag : sub.interpretation_tags) {
            result.interpretation_tags.push_back(std::move(tag));
        }
        for (Effect& effect : sub.effects) {
            if (auto* out = std::get_if<OutboundEffect>(&effect.body)) {
                if (member_ids.count(out->act.receiver)) {
                    // micro-interaction: routed inside the actor, copied to memorization
                    out->act.round = round;
                    result.micro_acts.push_back(out->act);
                    bump(memorization, "copies");
                    bump(monitoring, "observed");
                    pending.emplace_back(out->act.receiver, Stimulus{out->act});
                    continue;
                }
                if (member_id != communication) {
                    result.notes.push_back("contained external send from member '" +
                                           member_id.id + "' (" + to_string(out->act.performative) +
                                           " to " + out->act.receiver.id + ")");
                    continue;
                }
                out->act.sender = actor.id;  // macro acts speak for the actor
                result.effects.push_back(std::move(effect));
                continue;
            }
            if (std::holds_alternative<DiffusionEffect>(effect.body)) {
                if (member_id != communication) {
                    result.notes.push_back("contained diffusion from member '" + member_id.id + "'");
                    continue;
                }
                std::get<DiffusionEffect>(effect.body).act_template.sender = actor.id;
                result.effects.push_back(std::move(effect));
                continue;
            }
            if (std::holds_alternative<KnowledgeUpdateEffect>(effect.body)) {
                continue;  // already applied to the member's own kb
            }
            result.notes.push_back("contained environment op from member '" + member_id.id + "'");
        }
    }
    return result;
}

StepResult step_agent(AgentSpec& agent, const std::vector<Stimulus>& stimuli, Round round,
                      const AgentLookup& lookup) {
    switch (agent.level) {
        case 1: return step_reactive(agent, stimuli, round);
        case 2: return step_routine(agent, stimuli, round);
        case 3: return step_cognitive(agent, stimuli, round);
        case 4: return step_collective(agent, stimuli, round, lookup);
        default:
            throw SimError(Errc::level_mismatch,
                           "agent '" + agent.id.id + "' has invalid level " +
                               std::to_string(agent.level));
    }
}

}  // namespace masim
