#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "masim/rule.hpp"

namespace masim {

/// A change an agent can perceive: a delivered act or an environment value.
struct Percept {
    std::string key;
    Scalar value = 0.0;

    bool operator==(const Percept&) const = default;
};

using Stimulus = std::variant<CommunicationAct, Percept>;

bool is_message(const Stimulus& s);
const CommunicationAct* as_message(const Stimulus& s);
const Percept* as_percept(const Stimulus& s);

/// Variable bindings produced by event matching. Each variable is bound
/// at most once.
using Binding = std::map<std::string, Scalar>;

struct OutboundEffect {
    CommunicationAct act;  // round stamped and empty conversation minted at send

    bool operator==(const OutboundEffect&) const = default;
};

struct DiffusionEffect {
    std::string community;
    CommunicationAct act_template;  // receiver filled per member at expansion

    bool operator==(const DiffusionEffect&) const = default;
};

struct KnowledgeUpdateEffect {
    std::string key;
    Scalar value = 0.0;

    bool operator==(const KnowledgeUpdateEffect&) const = default;
};

struct EnvironmentOpEffect {
    std::string op;
    std::map<std::string, Scalar> params;

    bool operator==(const EnvironmentOpEffect&) const = default;
};

using EffectBody = std::variant<OutboundEffect, DiffusionEffect, KnowledgeUpdateEffect, EnvironmentOpEffect>;

struct Effect {
    EffectBody body;
    // The act that led to this effect, when the triggering stimulus was a
    // message. Drives response conversations and acknowledgment barriers.
    std::optional<CommunicationAct> cause;

    bool operator==(const Effect&) const = default;
};

/// Pattern matching. On success returns the bindings: the declared binder,
/// plus "sender"/"conversation"/"pkey" for messages and "key" for percepts.
std::optional<Binding> match_event(const EventPattern& pattern, const Stimulus& stimulus);

/// Expression evaluation against bindings and a knowledge base. Lookups
/// read facts first, then the system model. Key templates ("{var}") are
/// substituted from bindings before lookup.
Scalar eval_value(const ValueExpr& expr, const Binding& bindings, const KnowledgeBase& kb);
bool eval_condition(const Condition& cond, const Binding& bindings, const KnowledgeBase& kb);
std::string expand_key(const std::string& key_template, const Binding& bindings);

/// Every rule whose event matches and whose condition holds, ordered by
/// (priority desc, id asc). Errors are rethrown tagged with the rule id.
/// seed_bindings are merged under the match bindings (the step layer passes
/// the current round here).
std::vector<std::pair<const DecisionRule*, Binding>> decide(const std::vector<DecisionRule>& rules,
                                                            const Stimulus& stimulus,
                                                            const KnowledgeBase& kb,
                                                            const Binding& seed_bindings = {});

/// Instantiates one action under the bindings. Knowledge updates are not
/// applied here; the behaviour layer owns that.
Effect apply_action(const ActionSpec& action, const Binding& bindings, const KnowledgeBase& kb,
                    const AgentId& self);

Payload eval_payload(const PayloadSpec& spec, const Binding& bindings, const KnowledgeBase& kb);

}  // namespace masim
