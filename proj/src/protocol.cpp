#include "masim/protocol.hpp"

#include "masim/error.hpp"

namespace masim {

const std::set<Performative>& ObligationTable::expected(Performative p) const {
    static const std::set<Performative> empty;
    auto it = responses.find(p);
    return it == responses.end() ? empty : it->second;
}

ObligationTable default_obligation_table() {
    ObligationTable t;
    t.responses[Performative::inform] = {Performative::confirm};
    t.responses[Performative::diffuse] = {Performative::confirm};
    t.responses[Performative::ask] = {Performative::accept, Performative::refuse};
    t.responses[Performative::answer] = {Performative::confirm};
    t.responses[Performative::propose] = {Performative::confirm, Performative::refuse};
    t.responses[Performative::against_propose] = {Performative::accept, Performative::refuse};
    t.responses[Performative::order] = {Performative::confirm};
    t.responses[Performative::evaluate] = {Performative::agree, Performative::disagree};
    t.responses[Performative::confirm] = {};
    t.responses[Performative::accept] = {};
    t.responses[Performative::refuse] = {};
    t.responses[Performative::agree] = {};
    t.responses[Performative::disagree] = {};
    return t;
}

std::vector<SatisfactionEvent> ConversationTracker::record_act(const CommunicationAct& act,
                                                               Round round) {
    std::vector<SatisfactionEvent> events;
    auto& obligations = by_conversation_[act.conversation];

    // A response discharges the oldest open obligation it validly answers:
    // same conversation, responder is the original receiver, performative in
    // the acceptable set. Answering an addressed obligation with a
    // performative outside its set is a violation.
    Obligation* addressed_open = nullptr;
    Obligation* satisfiable = nullptr;
    for (Obligation& ob : obligations) {
        if (ob.act.receiver != act.sender || ob.act.sender != act.receiver) continue;
        if (ob.satisfied) continue;
        if (!addressed_open) addressed_open = &ob;
        if (!satisfiable && table_.expected(ob.act.performative).count(act.performative)) {
            satisfiable = &ob;
        }
    }
    if (satisfiable) {
        Obligation& ob = *satisfiable;
        ob.satisfied = true;
        ob.satisfied_round = round;
        ob.satisfied_by = act.sender;
        ob.response = act.performative;
        ++satisfied_total_;
        auto pair_it = pending_pairs_.find({ob.act.sender, ob.act.receiver});
        if (pair_it != pending_pairs_.end() && pair_it->second > 0) --pair_it->second;
        events.push_back(SatisfactionEvent{ob.act, act.sender, act.performative, round});
    } else if (addressed_open) {
        violations_.push_back(ProtocolViolationRecord{
            round, act,
            "response '" + to_string(act.performative) + "' not acceptable for '" +
                to_string(addressed_open->act.performative) + "'"});
    }

    const std::set<Performative>& required = table_.expected(act.performative);
    if (!required.empty()) {
        Obligation ob;
        ob.act = act;
        ob.opened_round = round;
        obligations.push_back(std::move(ob));
        ++pending_pairs_[{act.sender, act.receiver}];
        ++opened_total_;
    } else if (!satisfiable && !addressed_open) {
        // terminal act that answers nothing in its conversation
        violations_.push_back(ProtocolViolationRecord{
            round, act, "unmatched response '" + to_string(act.performative) + "'"});
    }
    return events;
}

std::vector<Obligation> ConversationTracker::pending_obligations(Round current_round,
                                                                 Round timeout_rounds) const {
    std::vector<Obligation> overdue;
    for (const auto& [conversation, obligations] : by_conversation_) {
        for (const Obligation& ob : obligations) {
            if (!ob.satisfied && current_round - ob.opened_round > timeout_rounds) {
                overdue.push_back(ob);
            }
        }
    }
    return overdue;
}

std::vector<Obligation> ConversationTracker::open_obligations() const {
    std::vector<Obligation> open;
    for (const auto& [conversation, obligations] : by_conversation_) {
        for (const Obligation& ob : obligations) {
            if (!ob.satisfied) open.push_back(ob);
        }
    }
    return open;
}

std::vector<Obligation> ConversationTracker::flag_timeouts(Round current_round,
                                                           Round timeout_rounds) {
    std::vector<Obligation> fresh;
    for (auto& [conversation, obligations] : by_conversation_) {
        for (Obligation& ob : obligations) {
            if (!ob.satisfied && !ob.timeout_flagged &&
                current_round - ob.opened_round > timeout_rounds) {
                ob.timeout_flagged = true;
                fresh.push_back(ob);
            }
        }
    }
    return fresh;
}

int ConversationTracker::pending_count(const AgentId& from, const AgentId& to) const {
    auto it = pending_pairs_.find({from, to});
    return it == pending_pairs_.end() ? 0 : it->second;
}

bool ack_barrier_step(AckBarrier& barrier, const CommunicationAct& incoming) {
    if (!barrier.expected.count(incoming.sender)) {
        throw SimError(Errc::unexpected_responder,
                       "UnexpectedResponder(" + incoming.sender.id + ")");
    }
    if (!barrier.received.insert(incoming.sender).second) {
        throw SimError(Errc::duplicate_ack, "DuplicateAck(" + incoming.sender.id + ")");
    }
    return barrier.received.size() == barrier.expected.size();
}

}  // namespace masim
