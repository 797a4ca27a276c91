#include "masim/system.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace masim {

std::string to_string(CoopRole r) {
    switch (r) {
        case CoopRole::observer: return "observer";
        case CoopRole::knowledge: return "knowledge";
        case CoopRole::control: return "control";
        case CoopRole::monitoring: return "monitoring";
        case CoopRole::memorization: return "memorization";
        case CoopRole::communication: return "communication";
    }
    return "observer";
}

std::optional<CoopRole> parse_coop_role(std::string_view token) {
    for (CoopRole r : kAllCoopRoles) {
        if (to_string(r) == token) return r;
    }
    return std::nullopt;
}

bool is_reserved_binder(const std::string& name) {
    return name == "sender" || name == "conversation" || name == "round" || name == "pkey" ||
           name == "key";
}

const Community* SystemModel::find_community(const std::string& name) const {
    for (const Community& c : organizations) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

namespace {

std::string format_pattern(const EventPattern& p) {
    std::ostringstream os;
    os << (p.source == StimulusSource::message ? "msg" : "env") << "<";
    os << (p.performative ? to_string(*p.performative) : std::string("*"));
    os << "," << (p.sender ? p.sender->id : std::string("*"));
    os << ",t=" << (p.mtype ? std::to_string(*p.mtype) : std::string("*"));
    if (p.payload_key) os << ",pkey=" << *p.payload_key;
    if (p.env_key) os << ",key=" << *p.env_key;
    if (p.binder) os << ",bind=" << *p.binder;
    os << ">";
    return os.str();
}

std::string format_payload_spec(const PayloadSpec& p) {
    std::ostringstream os;
    switch (p.kind) {
        case Payload::Kind::value: os << "value " << to_string(p.value); break;
        case Payload::Kind::assertion: os << "assert " << p.key << "=" << to_string(p.value); break;
        case Payload::Kind::question: os << "question " << p.key; break;
        case Payload::Kind::response: os << "response " << p.key << "=" << to_string(p.value); break;
        case Payload::Kind::task_ref: os << "task " << to_string(p.value); break;
    }
    return os.str();
}

std::string format_receiver(const ReceiverRef& r) {
    switch (r.kind) {
        case ReceiverRef::Kind::fixed: return r.agent.id;
        case ReceiverRef::Kind::reply_sender: return "@sender";
        case ReceiverRef::Kind::var: return "$" + r.name;
    }
    return "?";
}

std::string format_action(const ActionSpec& action) {
    std::ostringstream os;
    if (const auto* send = std::get_if<SendAction>(&action)) {
        os << "send(" << to_string(send->performative) << "," << format_receiver(send->receiver)
           << ",t=" << send->mtype << "," << format_payload_spec(send->payload)
           << (send->reply ? ",reply" : "") << ")";
    } else if (const auto* dif = std::get_if<DiffuseAction>(&action)) {
        os << "diffuse(" << to_string(dif->performative) << "," << dif->community << ",t="
           << dif->mtype << "," << format_payload_spec(dif->payload) << ")";
    } else if (const auto* upd = std::get_if<UpdateKnowledgeAction>(&action)) {
        os << "update(" << upd->key << "=" << to_string(upd->value) << ")";
    } else if (const auto* env = std::get_if<EnvironmentOpAction>(&action)) {
        os << "envop(" << env->op;
        for (const auto& [k, v] : env->params) os << "," << k << "=" << scalar_repr(v);
        os << ")";
    }
    return os.str();
}

}  // namespace

std::string format_rule(const DecisionRule& rule) {
    std::ostringstream os;
    os << rule.id << " p=" << rule.priority << " on " << format_pattern(rule.event) << " if "
       << to_string(rule.condition) << " do [";
    for (std::size_t i = 0; i < rule.actions.size(); ++i) {
        if (i) os << "; ";
        os << format_action(rule.actions[i]);
    }
    os << "]";
    return os.str();
}

std::string format_rules(const std::vector<DecisionRule>& rules) {
    std::vector<const DecisionRule*> sorted;
    sorted.reserve(rules.size());
    for (const DecisionRule& r : rules) sorted.push_back(&r);
    std::sort(sorted.begin(), sorted.end(),
              [](const DecisionRule* a, const DecisionRule* b) { return a->id < b->id; });
    std::string out;
    for (const DecisionRule* r : sorted) {
        out += format_rule(*r);
        out += "\n";
    }
    return out;
}

namespace {

void note(std::vector<Diagnostic>& diags, Errc code, std::string detail) {
    diags.push_back(Diagnostic{code, std::move(detail)});
}

std::vector<std::string> action_vars(const ActionSpec& action) {
    std::vector<std::string> vars;
    auto from_payload = [&vars](const PayloadSpec& p) { collect_vars(p.value, vars); };
    if (const auto* send = std::get_if<SendAction>(&action)) {
        from_payload(send->payload);
        if (send->receiver.kind == ReceiverRef::Kind::var) vars.push_back(send->receiver.name);
    } else if (const auto* dif = std::get_if<DiffuseAction>(&action)) {
        from_payload(dif->payload);
    } else if (const auto* upd = std::get_if<UpdateKnowledgeAction>(&action)) {
        collect_vars(upd->value, vars);
        collect_vars(ValueExpr::knowledge(upd->key), vars);  // key templates
    }
    return vars;
}

void check_pattern(const EventPattern& pattern, std::vector<Diagnostic>& diags,
                   const std::string& where) {
    if (pattern.binder && is_reserved_binder(*pattern.binder)) {
        note(diags, Errc::reserved_binder, where + ": binder '" + *pattern.binder + "' is reserved");
    }
    if (pattern.source == StimulusSource::environment &&
        (pattern.performative || pattern.sender || pattern.mtype || pattern.payload_key)) {
        note(diags, Errc::invalid_config,
             where + ": environment pattern cannot constrain performative/sender/mtype/pkey");
    }
    if (pattern.source == StimulusSource::message && pattern.env_key) {
        note(diags, Errc::invalid_config, where + ": message pattern cannot constrain env key");
    }
}

std::set<std::string> bound_names(const EventPattern& pattern) {
    std::set<std::string> bound{"round"};
    if (pattern.binder) bound.insert(*pattern.binder);
    if (pattern.source == StimulusSource::message) {
        bound.insert("sender");
        bound.insert("conversation");
        bound.insert("pkey");
    } else {
        bound.insert("key");
    }
    return bound;
}

void check_unbound(const std::set<std::string>& bound, std::vector<std::string> used,
                   std::vector<Diagnostic>& diags, const std::string& where) {
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    for (const std::string& v : used) {
        if (!bound.count(v)) {
            note(diags, Errc::unbound_variable, where + ": UnboundVariable(" + v + ")");
        }
    }
}

void check_action_names(const ActionSpec& action, const SystemModel& context,
                        const AgentId& owner, std::vector<Diagnostic>& diags,
                        const std::string& where) {
    if (const auto* send = std::get_if<SendAction>(&action)) {
        if (send->receiver.kind == ReceiverRef::Kind::fixed) {
            if (!context.agents.count(send->receiver.agent)) {
                note(diags, Errc::unknown_agent,
                     where + ": receiver '" + send->receiver.agent.id + "' is not in the system");
            } else if (send->receiver.agent == owner) {
                note(diags, Errc::self_message, where + ": agent cannot send to itself");
            }
        }
    } else if (const auto* dif = std::get_if<DiffuseAction>(&action)) {
        if (!context.find_community(dif->community)) {
            note(diags, Errc::unknown_community,
                 where + ": UnknownCommunity(" + dif->community + ")");
        }
    }
}

}  // namespace

std::vector<Diagnostic> validate_rule(const DecisionRule& rule, const SystemModel& context,
                                      const AgentId& owner) {
    std::vector<Diagnostic> diags;
    const std::string where = "rule '" + rule.id + "'";

    if (rule.actions.empty()) {
        note(diags, Errc::invalid_config, where + ": actions must be nonempty");
    }
    if (rule.id.empty()) {
        note(diags, Errc::invalid_config, "rule id must be nonempty");
    }
    check_pattern(rule.event, diags, where);

    if (condition_depth(rule.condition) > kMaxConditionDepth) {
        note(diags, Errc::invalid_config, where + ": condition deeper than 16");
    }

    std::vector<std::string> used;
    collect_vars(rule.condition, used);
    for (const ActionSpec& action : rule.actions) {
        for (std::string& v : action_vars(action)) used.push_back(std::move(v));
        check_action_names(action, context, owner, diags, where);
        if (rule.event.source == StimulusSource::environment) {
            if (const auto* send = std::get_if<SendAction>(&action);
                send && send->receiver.kind == ReceiverRef::Kind::reply_sender) {
                note(diags, Errc::invalid_config,
                     where + ": reply-to-sender needs a message event");
            }
        }
    }
    check_unbound(bound_names(rule.event), std::move(used), diags, where);
    return diags;
}

std::vector<Diagnostic> validate_agent(const AgentSpec& agent, const SystemModel& context) {
    std::vector<Diagnostic> diags;
    const std::string where = "agent '" + agent.id.id + "'";

    if (agent.id.empty()) note(diags, Errc::invalid_config, "agent id must be nonempty");
    if (agent.level < 1 || agent.level > 4) {
        note(diags, Errc::invalid_config, where + ": level must be in 1..4");
    }
    if (agent.level == 2 && agent.kb.rules.empty()) {
        note(diags, Errc::invalid_config, where + ": routine agent needs decision rules");
    }
    if (agent.level == 3) {
        if (agent.kb.rules.empty()) {
            note(diags, Errc::invalid_config, where + ": cognitive agent needs decision rules");
        }
        if (agent.interpreter.empty()) {
            note(diags, Errc::invalid_config, where + ": cognitive agent needs interpretation rules");
        }
    }
    if (agent.level == 4) {
        for (CoopRole r : kAllCoopRoles) {
            auto it = agent.members.find(r);
            if (it == agent.members.end()) {
                note(diags, Errc::incomplete_members,
                     where + ": missing member role '" + to_string(r) + "'");
            } else if (!context.agents.count(it->second)) {
                note(diags, Errc::unknown_agent,
                     where + ": member '" + it->second.id + "' is not in the system");
            }
        }
    }

    std::set<std::string> rule_ids;
    for (const DecisionRule& rule : agent.kb.rules) {
        if (!rule_ids.insert(rule.id).second) {
            note(diags, Errc::invalid_config, where + ": duplicate rule id '" + rule.id + "'");
        }
        for (Diagnostic& d : validate_rule(rule, context, agent.id)) diags.push_back(std::move(d));
    }
    for (const ReflexEntry& reflex : agent.reflexes) {
        check_pattern(reflex.event, diags, where + " reflex");
        for (const ActionSpec& action : reflex.actions) {
            check_action_names(action, context, agent.id, diags, where + " reflex");
        }
    }
    for (const InterpretationRule& ir : agent.interpreter) {
        check_pattern(ir.trigger, diags, where + " interpreter");
        if (condition_depth(ir.guard) > kMaxConditionDepth) {
            note(diags, Errc::invalid_config, where + ": interpreter guard deeper than 16");
        }
        std::vector<std::string> used;
        collect_vars(ir.guard, used);
        for (const auto& [key, expr] : ir.updates) {
            collect_vars(expr, used);
            collect_vars(ValueExpr::knowledge(key), used);
        }
        check_unbound(bound_names(ir.trigger), std::move(used), diags, where + " interpreter");
    }
    for (const AgentId& acq : agent.kb.acquaintances) {
        if (!context.agents.count(acq)) {
            note(diags, Errc::unknown_agent, where + ": acquaintance '" + acq.id + "' unknown");
        }
    }
    return diags;
}

SystemModel build_system(std::map<AgentId, AgentSpec> agents,
                         std::vector<InteractionTriple> interactions,
                         std::map<AgentId, Role> roles, std::vector<Community> organizations,
                         AffinityNetwork affinity) {
    SystemModel model;
    model.agents = std::move(agents);
    model.interactions = std::move(interactions);
    model.roles = std::move(roles);
    model.organizations = std::move(organizations);
    model.affinity = std::move(affinity);

    std::vector<Diagnostic> diags;

    std::set<std::string> community_names;
    for (const Community& c : model.organizations) {
        if (!community_names.insert(c.name).second) {
            note(diags, Errc::duplicate_community, "DuplicateCommunity(" + c.name + ")");
        }
        if (c.members.empty()) {
            note(diags, Errc::invalid_config, "community '" + c.name + "' has no members");
        }
        for (const AgentId& m : c.members) {
            if (!model.agents.count(m)) {
                note(diags, Errc::unknown_agent,
                     "community '" + c.name + "' names absent agent '" + m.id + "'");
            }
        }
    }

    for (const auto& [id, agent] : model.agents) {
        if (agent.id != id) {
            note(diags, Errc::invalid_config, "agent map key '" + id.id + "' does not match spec id");
        }
        auto role = model.roles.find(id);
        if (role == model.roles.end()) {
            note(diags, Errc::missing_role, "MissingRole(" + id.id + ")");
        } else if (role->second.level != agent.level) {
            note(diags, Errc::level_mismatch,
                 "agent '" + id.id + "' level disagrees with role '" + role->second.name + "'");
        }
        for (Diagnostic& d : validate_agent(agent, model)) diags.push_back(std::move(d));
    }

    if (model.affinity.inhibition_threshold < 0.0 || model.affinity.inhibition_threshold >= 1.0) {
        note(diags, Errc::out_of_range, "inhibition threshold outside [0,1)");
    }
    for (const auto& [pair, w] : model.affinity.weights) {
        if (w < 0.0 || w > 1.0) {
            note(diags, Errc::out_of_range,
                 "affinity weight " + pair.first.id + "->" + pair.second.id + " outside [0,1]");
        }
        if (!model.agents.count(pair.first) || !model.agents.count(pair.second)) {
            note(diags, Errc::unknown_agent,
                 "affinity edge names absent agent " + pair.first.id + "->" + pair.second.id);
        }
    }

    if (!diags.empty()) throw ValidationError(std::move(diags));
    return model;
}

}  // namespace masim
