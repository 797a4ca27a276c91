#pragma once

#include <map>
#include <vector>

#include "masim/system.hpp"

namespace masim::testing {

// delta1 from the worked product-configuration rule: on inform of type 2
// binding V, if V > threshold, diffuse V to community F.
inline DecisionRule make_delta1(double threshold = 0.4, std::string community = "F") {
    DecisionRule rule;
    rule.id = "delta1";
    rule.priority = 1;
    rule.event.source = StimulusSource::message;
    rule.event.performative = Performative::inform;
    rule.event.mtype = 2;
    rule.event.binder = "V";
    rule.condition = Condition::compare(CompareOp::gt, ValueExpr::var("V"), ValueExpr::lit(threshold));
    DiffuseAction diffuse;
    diffuse.performative = Performative::diffuse;
    diffuse.community = std::move(community);
    diffuse.mtype = 2;
    diffuse.payload = PayloadSpec{Payload::Kind::value, "", ValueExpr::var("V")};
    rule.actions.emplace_back(std::move(diffuse));
    return rule;
}

inline AgentSpec routine_agent(AgentId id, std::vector<DecisionRule> rules) {
    AgentSpec agent;
    agent.id = std::move(id);
    agent.level = 2;
    agent.kb.rules = std::move(rules);
    return agent;
}

inline AgentSpec reactive_agent(AgentId id, std::vector<ReflexEntry> reflexes = {}) {
    AgentSpec agent;
    agent.id = std::move(id);
    agent.level = 1;
    agent.reflexes = std::move(reflexes);
    return agent;
}

inline CommunicationAct inform_value(AgentId sender, AgentId receiver, double value,
                                     std::string conversation = "c1", int mtype = 2) {
    return make_act(Performative::inform, std::move(sender), std::move(receiver),
                    MessageType{mtype, ""}, value_payload(value), std::move(conversation));
}

// Five-agent model mirroring the configuration example: two requirement
// agents informing, three function agents relaying.
inline SystemModel small_config_model() {
    std::map<AgentId, AgentSpec> agents;
    std::map<AgentId, Role> roles;
    Community community_r{"R", {}};
    Community community_f{"F", {}};
    for (const char* id : {"r1", "r2"}) {
        DecisionRule announce;
        announce.id = "announce";
        announce.event.source = StimulusSource::environment;
        announce.event.env_key = "start";
        announce.event.binder = "V";
        SendAction send;
        send.performative = Performative::inform;
        send.receiver = ReceiverRef::fixed(AgentId{"f1"});
        send.mtype = 2;
        send.payload = PayloadSpec{Payload::Kind::value, "", ValueExpr::var("V")};
        announce.actions.emplace_back(std::move(send));
        agents.emplace(AgentId{id}, routine_agent(AgentId{id}, {std::move(announce)}));
        roles[AgentId{id}] = Role{"requirement", 2};
        community_r.members.insert(AgentId{id});
    }
    for (const char* id : {"f1", "f2", "f3"}) {
        agents.emplace(AgentId{id}, routine_agent(AgentId{id}, {make_delta1()}));
        roles[AgentId{id}] = Role{"function", 2};
        community_f.members.insert(AgentId{id});
    }
    return build_system(std::move(agents), {}, std::move(roles), {community_r, community_f}, {});
}

inline bool has_diag(const std::vector<Diagnostic>& diags, Errc code) {
    for (const Diagnostic& d : diags) {
        if (d.code == code) return true;
    }
    return false;
}

}  // namespace masim::testing
