#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "masim/expr.hpp"
#include "masim/model.hpp"

namespace masim {

enum class StimulusSource { message, environment };

/// Event side of a decision rule. Unset optionals are wildcards. Message
/// patterns match communication acts; environment patterns match percepts
/// by key. The binder captures the payload (or percept value) into a
/// variable; matching also binds the implicit variables "sender",
/// "conversation", "pkey" (payload key) and "key" (percept key).
struct EventPattern {
    StimulusSource source = StimulusSource::message;
    std::optional<Performative> performative;
    std::optional<AgentId> sender;
    std::optional<int> mtype;
    std::optional<std::string> payload_key;  // assertion/question/response key
    std::optional<std::string> env_key;
    std::optional<std::string> binder;

    bool operator==(const EventPattern&) const = default;
};

/// Binder names the engine assigns implicitly; rules may not reuse them.
bool is_reserved_binder(const std::string& name);

/// How a send action picks its receiver: a fixed agent, the sender of the
/// triggering act, or an agent id held in a bound variable.
struct ReceiverRef {
    enum class Kind { fixed, reply_sender, var };

    Kind kind = Kind::fixed;
    AgentId agent;     // fixed
    std::string name;  // var

    bool operator==(const ReceiverRef&) const = default;

    static ReceiverRef fixed(AgentId a) { return {Kind::fixed, std::move(a), {}}; }
    static ReceiverRef reply_sender() { return {Kind::reply_sender, {}, {}}; }
    static ReceiverRef var(std::string n) { return {Kind::var, {}, std::move(n)}; }
};

/// Payload template evaluated against bindings when an action fires.
struct PayloadSpec {
    Payload::Kind kind = Payload::Kind::value;
    std::string key;  // assertion/question/response key
    ValueExpr value;  // value/assertion/response value, task token

    bool operator==(const PayloadSpec&) const = default;
};

struct SendAction {
    Performative performative = Performative::inform;
    ReceiverRef receiver;
    int mtype = 0;
    PayloadSpec payload;
    // Responses inherit the triggering act's conversation; otherwise the
    // runtime mints a fresh token at send time. reply_sender receivers
    // always inherit.
    bool reply = false;

    bool operator==(const SendAction&) const = default;
};

struct DiffuseAction {
    Performative performative = Performative::diffuse;
    std::string community;
    int mtype = 0;
    PayloadSpec payload;

    bool operator==(const DiffuseAction&) const = default;
};

struct UpdateKnowledgeAction {
    std::string key;  // may contain {var} templates
    ValueExpr value;

    bool operator==(const UpdateKnowledgeAction&) const = default;
};

struct EnvironmentOpAction {
    std::string op;
    std::map<std::string, Scalar> params;

    bool operator==(const EnvironmentOpAction&) const = default;
};

using ActionSpec = std::variant<SendAction, DiffuseAction, UpdateKnowledgeAction, EnvironmentOpAction>;

struct DecisionRule {
    std::string id;
    EventPattern event;
    Condition condition;
    std::vector<ActionSpec> actions;  // nonempty
    int priority = 0;

    bool operator==(const DecisionRule&) const = default;
};

/// One rule per line, canonical form, for diffing in tests.
std::string format_rule(const DecisionRule& rule);
std::string format_rules(const std::vector<DecisionRule>& rules);  // sorted by id

struct KnowledgeBase {
    std::map<std::string, Scalar> facts;         // domain knowledge + internal state
    std::map<std::string, Scalar> system_model;  // beliefs about system state
    std::vector<DecisionRule> rules;
    std::vector<AgentId> acquaintances;
    std::map<std::string, Scalar> interaction_config;

    bool operator==(const KnowledgeBase&) const = default;
};

}  // namespace masim
