#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "masim/model.hpp"

namespace masim {

struct Community {
    std::string name;
    std::set<AgentId> members;  // nonempty

    bool operator==(const Community&) const = default;
};

/// Directed fuzzy-weighted links between agents. Missing pairs default to
/// full weight 1.0. Weights gate message delivery: diffusion skips
/// receivers at or below the inhibition threshold.
struct AffinityNetwork {
    std::map<std::pair<AgentId, AgentId>, double> weights;
    double inhibition_threshold = 0.1;
    double reinforce_delta = 0.05;
    double decay_delta = 0.05;

    double weight(const AgentId& a, const AgentId& b) const;

    bool operator==(const AffinityNetwork&) const = default;
};

void set_affinity(AffinityNetwork& net, const AgentId& a, const AgentId& b,
                  double w);  // throws out_of_range / self_edge

enum class Outcome { success, failure };

/// Emergence rule: successful exchanges strengthen the directed link,
/// failures and timeouts weaken it. Weights stay clamped to [0, 1].
void reinforce(AffinityNetwork& net, const AgentId& a, const AgentId& b,
               Outcome outcome);  // throws self_edge

/// One act per community member above the inhibition threshold, sender
/// excluded, in ascending AgentId order. Every act carries the template's
/// conversation token and round.
std::vector<CommunicationAct> diffuse(const AgentId& sender, const Community& community,
                                      const CommunicationAct& act_template,
                                      const AffinityNetwork& net);

}  // namespace masim
