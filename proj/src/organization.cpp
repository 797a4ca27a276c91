#include "masim/organization.hpp"

#include <algorithm>

#include "masim/error.hpp"

namespace masim {

double AffinityNetwork::weight(const AgentId& a, const AgentId& b) const {
    auto it = weights.find({a, b});
    return it == weights.end() ? 1.0 : it->second;
}

void set_affinity(AffinityNetwork& net, const AgentId& a, const AgentId& b, double w) {
    if (a == b) throw SimError(Errc::self_edge, "SelfEdge(" + a.id + ")");
    if (w < 0.0 || w > 1.0) {
        throw SimError(Errc::out_of_range, "weight " + std::to_string(w) + " outside [0,1]");
    }
    net.weights[{a, b}] = w;
}

void reinforce(AffinityNetwork& net, const AgentId& a, const AgentId& b, Outcome outcome) {
    if (a == b) throw SimError(Errc::self_edge, "SelfEdge(" + a.id + ")");
    double w = net.weight(a, b);
    if (outcome == Outcome::success) {
        w = std::min(1.0, w + net.reinforce_delta);
    } else {
        w = std::max(0.0, w - net.decay_delta);
    }
    net.weights[{a, b}] = w;
}

std::vector<CommunicationAct> diffuse(const AgentId& sender, const Community& community,
                                      const CommunicationAct& act_template,
                                      const AffinityNetwork& net) {
    std::vector<CommunicationAct> acts;
    for (const AgentId& member : community.members) {  // std::set: ascending order
        if (member == sender) continue;
        if (net.weight(sender, member) <= net.inhibition_threshold) continue;
        CommunicationAct act = act_template;
        act.sender = sender;
        act.receiver = member;
        acts.push_back(std::move(act));
    }
    return acts;
}

}  // namespace masim
