#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include "masim/scalar.hpp"

namespace masim {

using Round = std::int64_t;

struct AgentId {
    std::string id;

    AgentId() = default;
    AgentId(std::string s) : id(std::move(s)) {}
    AgentId(const char* s) : id(s) {}

    bool empty() const { return id.empty(); }
    auto operator<=>(const AgentId&) const = default;
};

/// Closed performative lexicon. Parsing any other token fails.
enum class Performative {
    inform,
    diffuse,
    ask,
    answer,
    confirm,
    propose,
    against_propose,
    refuse,
    accept,
    order,
    agree,
    disagree,
    evaluate,
};

inline constexpr Performative kAllPerformatives[] = {
    Performative::inform,   Performative::diffuse,  Performative::ask,
    Performative::answer,   Performative::confirm,  Performative::propose,
    Performative::against_propose, Performative::refuse, Performative::accept,
    Performative::order,    Performative::agree,    Performative::disagree,
    Performative::evaluate,
};

std::string to_string(Performative p);
std::optional<Performative> parse_performative(std::string_view token);

struct MessageType {
    int code = 0;
    std::string label;

    auto operator<=>(const MessageType&) const = default;
};

MessageType make_message_type(int code, std::string label = "");  // throws out_of_range

/// Message content variants. Values are scalars in [0, 1].
struct Payload {
    enum class Kind { value, assertion, question, response, task_ref };

    Kind kind = Kind::value;
    std::string key;   // assertion/question/response key, task token
    Scalar value = 0.0;

    bool operator==(const Payload&) const = default;
};

Payload value_payload(double v);                              // throws out_of_range
Payload assertion_payload(std::string key, Scalar value);     // throws invalid_config on empty key
Payload question_payload(std::string key);
Payload response_payload(std::string key, Scalar value);
Payload task_ref_payload(std::string token);

/// The scalar an event binder captures from a payload: the value for
/// value/assertion/response, the key for questions, the token for task refs.
Scalar payload_scalar(const Payload& p);

std::string to_string(const Payload& p);

struct CommunicationAct {
    Performative performative = Performative::inform;
    AgentId sender;
    AgentId receiver;
    MessageType mtype;
    Payload payload;
    std::string conversation;
    Round round = 0;  // stamped by the runtime at send time

    bool operator==(const CommunicationAct&) const = default;
};

CommunicationAct make_act(Performative performative, AgentId sender, AgentId receiver,
                          MessageType mtype, Payload payload, std::string conversation,
                          Round round = 0);  // throws self_message / empty_conversation

std::string to_string(const CommunicationAct& act);

}  // namespace masim
