#include "masim/model.hpp"

#include <sstream>

#include "masim/error.hpp"

namespace masim {

std::string to_string(Performative p) {
    switch (p) {
        case Performative::inform: return "inform";
        case Performative::diffuse: return "diffuse";
        case Performative::ask: return "ask";
        case Performative::answer: return "answer";
        case Performative::confirm: return "confirm";
        case Performative::propose: return "propose";
        case Performative::against_propose: return "against_propose";
        case Performative::refuse: return "refuse";
        case Performative::accept: return "accept";
        case Performative::order: return "order";
        case Performative::agree: return "agree";
        case Performative::disagree: return "disagree";
        case Performative::evaluate: return "evaluate";
    }
    return "inform";
}

std::optional<Performative> parse_performative(std::string_view token) {
    for (Performative p : kAllPerformatives) {
        if (to_string(p) == token) return p;
    }
    return std::nullopt;
}

MessageType make_message_type(int code, std::string label) {
    if (code < 0) throw SimError(Errc::out_of_range, "message type code must be >= 0");
    return MessageType{code, std::move(label)};
}

Payload value_payload(double v) {
    if (v < 0.0 || v > 1.0) {
        throw SimError(Errc::out_of_range, "payload value " + std::to_string(v) + " outside [0,1]");
    }
    return Payload{Payload::Kind::value, "", v};
}

static void require_key(const std::string& key, const char* what) {
    if (key.empty()) throw SimError(Errc::invalid_config, std::string(what) + " key must be nonempty");
}

Payload assertion_payload(std::string key, Scalar value) {
    require_key(key, "assertion");
    return Payload{Payload::Kind::assertion, std::move(key), std::move(value)};
}

Payload question_payload(std::string key) {
    require_key(key, "question");
    return Payload{Payload::Kind::question, std::move(key), 0.0};
}

Payload response_payload(std::string key, Scalar value) {
    require_key(key, "response");
    return Payload{Payload::Kind::response, std::move(key), std::move(value)};
}

Payload task_ref_payload(std::string token) {
    require_key(token, "task");
    return Payload{Payload::Kind::task_ref, std::move(token), 0.0};
}

Scalar payload_scalar(const Payload& p) {
    switch (p.kind) {
        case Payload::Kind::value:
        case Payload::Kind::assertion:
        case Payload::Kind::response:
            return p.value;
        case Payload::Kind::question:
        case Payload::Kind::task_ref:
            return p.key;
    }
    return p.value;
}

std::string to_string(const Payload& p) {
    switch (p.kind) {
        case Payload::Kind::value: return "value " + scalar_repr(p.value);
        case Payload::Kind::assertion: return "assert " + p.key + "=" + scalar_repr(p.value);
        case Payload::Kind::question: return "question " + p.key;
        case Payload::Kind::response: return "response " + p.key + "=" + scalar_repr(p.value);
        case Payload::Kind::task_ref: return "task " + p.key;
    }
    return "";
}

CommunicationAct make_act(Performative performative, AgentId sender, AgentId receiver,
                          MessageType mtype, Payload payload, std::string conversation,
                          Round round) {
    if (sender == receiver) {
        throw SimError(Errc::self_message, "agent " + sender.id + " cannot message itself");
    }
    if (conversation.empty()) {
        throw SimError(Errc::empty_conversation, "conversation token must be nonempty");
    }
    return CommunicationAct{performative, std::move(sender),   std::move(receiver), mtype,
                            std::move(payload), std::move(conversation), round};
}

std::string to_string(const CommunicationAct& act) {
    std::ostringstream os;
    os << to_string(act.performative) << "(" << act.sender.id << " -> " << act.receiver.id
       << ", t=" << act.mtype.code << ", " << to_string(act.payload) << ", conv=" << act.conversation
       << ", r=" << act.round << ")";
    return os.str();
}

}  // namespace masim
