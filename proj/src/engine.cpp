#include "masim/engine.hpp"

#include <algorithm>

#include "masim/error.hpp"

namespace masim {

bool is_message(const Stimulus& s) {
    return std::holds_alternative<CommunicationAct>(s);
}

const CommunicationAct* as_message(const Stimulus& s) {
    return std::get_if<CommunicationAct>(&s);
}

const Percept* as_percept(const Stimulus& s) {
    return std::get_if<Percept>(&s);
}

std::optional<Binding> match_event(const EventPattern& pattern, const Stimulus& stimulus) {
    Binding bindings;
    if (const CommunicationAct* act = as_message(stimulus)) {
        if (pattern.source != StimulusSource::message) return std::nullopt;
        if (pattern.performative && *pattern.performative != act->performative) return std::nullopt;
        if (pattern.sender && *pattern.sender != act->sender) return std::nullopt;
        if (pattern.mtype && *pattern.mtype != act->mtype.code) return std::nullopt;
        if (pattern.payload_key && *pattern.payload_key != act->payload.key) return std::nullopt;
        bindings["sender"] = act->sender.id;
        bindings["conversation"] = act->conversation;
        if (!act->payload.key.empty()) bindings["pkey"] = act->payload.key;
        if (pattern.binder) bindings[*pattern.binder] = payload_scalar(act->payload);
        return bindings;
    }
    const Percept& percept = *as_percept(stimulus);
    if (pattern.source != StimulusSource::environment) return std::nullopt;
    if (pattern.env_key && *pattern.env_key != percept.key) return std::nullopt;
    bindings["key"] = percept.key;
    if (pattern.binder) bindings[*pattern.binder] = percept.value;
    return bindings;
}

std::string expand_key(const std::string& key_template, const Binding& bindings) {
    std::string out;
    out.reserve(key_template.size());
    std::size_t pos = 0;
    while (pos < key_template.size()) {
        if (key_template[pos] == '{') {
            std::size_t end = key_template.find('}', pos);
            if (end == std::string::npos) {
                out += key_template.substr(pos);
                break;
            }
            std::string var = key_template.substr(pos + 1, end - pos - 1);
            auto it = bindings.find(var);
            if (it == bindings.end()) {
                throw SimError(Errc::missing_binding, "key template references unbound '" + var + "'");
            }
            out += scalar_repr(it->second);
            pos = end + 1;
        } else {
            out += key_template[pos++];
        }
    }
    return out;
}

namespace {

const Scalar* lookup(const KnowledgeBase& kb, const std::string& key) {
    if (auto it = kb.facts.find(key); it != kb.facts.end()) return &it->second;
    if (auto it = kb.system_model.find(key); it != kb.system_model.end()) return &it->second;
    return nullptr;
}

}  // namespace

Scalar eval_value(const ValueExpr& expr, const Binding& bindings, const KnowledgeBase& kb) {
    switch (expr.kind) {
        case ValueExpr::Kind::literal:
            return expr.literal;
        case ValueExpr::Kind::var: {
            auto it = bindings.find(expr.name);
            if (it == bindings.end()) {
                throw SimError(Errc::missing_binding, "MissingBinding(" + expr.name + ")");
            }
            return it->second;
        }
        case ValueExpr::Kind::knowledge: {
            std::string key = expand_key(expr.name, bindings);
            if (const Scalar* v = lookup(kb, key)) return *v;
            throw SimError(Errc::missing_knowledge_key, "MissingKnowledgeKey(" + key + ")");
        }
        case ValueExpr::Kind::knowledge_or: {
            std::string key = expand_key(expr.name, bindings);
            if (const Scalar* v = lookup(kb, key)) return *v;
            return expr.literal;
        }
        case ValueExpr::Kind::add:
        case ValueExpr::Kind::sub: {
            double a = as_number(eval_value(expr.args[0], bindings, kb));
            double b = as_number(eval_value(expr.args[1], bindings, kb));
            return expr.kind == ValueExpr::Kind::add ? a + b : a - b;
        }
        case ValueExpr::Kind::recent_count: {
            auto it = bindings.find("round");
            if (it == bindings.end()) {
                throw SimError(Errc::missing_binding, "recent_count needs the round binding");
            }
            Round now = static_cast<Round>(as_number(it->second));
            double sum = 0.0;
            for (Round r = std::max<Round>(0, now - expr.window + 1); r <= now; ++r) {
                std::string key = expr.name + "." + std::to_string(r);
                if (const Scalar* v = lookup(kb, key)) sum += as_number(*v);
            }
            return sum;
        }
    }
    return 0.0;
}

namespace {

bool compare_scalars(CompareOp op, const Scalar& lhs, const Scalar& rhs) {
    if (op == CompareOp::eq) {
        if (lhs.index() != rhs.index()) return false;
        return lhs == rhs;
    }
    double a = as_number(lhs);
    double b = as_number(rhs);
    switch (op) {
        case CompareOp::gt: return a > b;
        case CompareOp::ge: return a >= b;
        case CompareOp::lt: return a < b;
        case CompareOp::le: return a <= b;
        case CompareOp::eq: return a == b;
    }
    return false;
}

}  // namespace

bool eval_condition(const Condition& cond, const Binding& bindings, const KnowledgeBase& kb) {
    switch (cond.kind) {
        case Condition::Kind::always_true:
            return true;
        case Condition::Kind::compare:
            return compare_scalars(cond.op, eval_value(cond.lhs, bindings, kb),
                                   eval_value(cond.rhs, bindings, kb));
        case Condition::Kind::conj:
            return std::all_of(cond.children.begin(), cond.children.end(),
                               [&](const Condition& c) { return eval_condition(c, bindings, kb); });
        case Condition::Kind::disj:
            return std::any_of(cond.children.begin(), cond.children.end(),
                               [&](const Condition& c) { return eval_condition(c, bindings, kb); });
        case Condition::Kind::negation:
            return !eval_condition(cond.children.front(), bindings, kb);
    }
    return false;
}

std::vector<std::pair<const DecisionRule*, Binding>> decide(const std::vector<DecisionRule>& rules,
                                                            const Stimulus& stimulus,
                                                            const KnowledgeBase& kb,
                                                            const Binding& seed_bindings) {
    std::vector<std::pair<const DecisionRule*, Binding>> fired;
    for (const DecisionRule& rule : rules) {
        std::optional<Binding> bindings = match_event(rule.event, stimulus);
        if (!bindings) continue;
        for (const auto& [name, value] : seed_bindings) bindings->emplace(name, value);
        try {
            if (eval_condition(rule.condition, *bindings, kb)) {
                fired.emplace_back(&rule, std::move(*bindings));
            }
        } catch (const SimError& e) {
            throw SimError(Errc::rule_error, "rule '" + rule.id + "': " + e.what());
        }
    }
    std::stable_sort(fired.begin(), fired.end(), [](const auto& a, const auto& b) {
        if (a.first->priority != b.first->priority) return a.first->priority > b.first->priority;
        return a.first->id < b.first->id;
    });
    return fired;
}

Payload eval_payload(const PayloadSpec& spec, const Binding& bindings, const KnowledgeBase& kb) {
    switch (spec.kind) {
        case Payload::Kind::value:
            return value_payload(as_number(eval_value(spec.value, bindings, kb)));
        case Payload::Kind::assertion:
            return assertion_payload(expand_key(spec.key, bindings),
                                     eval_value(spec.value, bindings, kb));
        case Payload::Kind::question:
            return question_payload(expand_key(spec.key, bindings));
        case Payload::Kind::response:
            return response_payload(expand_key(spec.key, bindings),
                                    eval_value(spec.value, bindings, kb));
        case Payload::Kind::task_ref: {
            Scalar token = eval_value(spec.value, bindings, kb);
            return task_ref_payload(scalar_repr(token));
        }
    }
    return value_payload(0.0);
}

Effect apply_action(const ActionSpec& action, const Binding& bindings, const KnowledgeBase& kb,
                    const AgentId& self) {
    if (const auto* send = std::get_if<SendAction>(&action)) {
        AgentId receiver;
        bool reply = send->reply;
        switch (send->receiver.kind) {
            case ReceiverRef::Kind::fixed:
                receiver = send->receiver.agent;
                break;
            case ReceiverRef::Kind::reply_sender: {
                auto it = bindings.find("sender");
                if (it == bindings.end()) {
                    throw SimError(Errc::missing_binding, "MissingBinding(sender)");
                }
                receiver = AgentId{as_string(it->second)};
                reply = true;
                break;
            }
            case ReceiverRef::Kind::var: {
                auto it = bindings.find(send->receiver.name);
                if (it == bindings.end()) {
                    throw SimError(Errc::missing_binding,
                                   "MissingBinding(" + send->receiver.name + ")");
                }
                receiver = AgentId{as_string(it->second)};
                break;
            }
        }
        std::string conversation;
        if (reply) {
            if (auto it = bindings.find("conversation"); it != bindings.end()) {
                conversation = as_string(it->second);
            }
        }
        CommunicationAct act;
        act.performative = send->performative;
        act.sender = self;
        act.receiver = receiver;
        act.mtype = MessageType{send->mtype, ""};
        act.payload = eval_payload(send->payload, bindings, kb);
        act.conversation = std::move(conversation);  // empty: runtime mints one at send
        if (act.sender == act.receiver) {
            throw SimError(Errc::self_message, "agent " + self.id + " cannot message itself");
        }
        return Effect{OutboundEffect{std::move(act)}, std::nullopt};
    }
    if (const auto* dif = std::get_if<DiffuseAction>(&action)) {
        CommunicationAct act_template;
        act_template.performative = dif->performative;
        act_template.sender = self;
        act_template.mtype = MessageType{dif->mtype, ""};
        act_template.payload = eval_payload(dif->payload, bindings, kb);
        return Effect{DiffusionEffect{dif->community, std::move(act_template)}, std::nullopt};
    }
    if (const auto* upd = std::get_if<UpdateKnowledgeAction>(&action)) {
        return Effect{KnowledgeUpdateEffect{expand_key(upd->key, bindings),
                                            eval_value(upd->value, bindings, kb)},
                      std::nullopt};
    }
    const auto& env = std::get<EnvironmentOpAction>(action);
    return Effect{EnvironmentOpEffect{env.op, env.params}, std::nullopt};
}

}  // namespace masim
