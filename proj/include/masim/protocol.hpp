#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "masim/model.hpp"

namespace masim {

/// Which performatives demand a response, and which responses discharge
/// them. Total over the lexicon; terminal acts map to the empty set.
struct ObligationTable {
    std::map<Performative, std::set<Performative>> responses;

    const std::set<Performative>& expected(Performative p) const;

    bool operator==(const ObligationTable&) const = default;
};

ObligationTable default_obligation_table();

struct Obligation {
    CommunicationAct act;  // the initiating act
    Round opened_round = 0;
    bool satisfied = false;
    Round satisfied_round = 0;
    AgentId satisfied_by;
    Performative response = Performative::confirm;
    bool timeout_flagged = false;  // failure outcome already applied

    bool operator==(const Obligation&) const = default;
};

struct ProtocolViolationRecord {
    Round round = 0;
    CommunicationAct act;
    std::string detail;
};

struct SatisfactionEvent {
    CommunicationAct initiator;
    AgentId responder;
    Performative response = Performative::confirm;
    Round round = 0;
};

/// Conversation bookkeeping for the whole run. An obligation is satisfied
/// by exactly one act in the same conversation, sent by the original
/// receiver back to the original sender, with an acceptable performative.
class ConversationTracker {
public:
    explicit ConversationTracker(ObligationTable table = default_obligation_table())
        : table_(std::move(table)) {}

    /// Feeds one delivered act. Returns satisfaction events for outcome
    /// mapping; violations are recorded, not thrown.
    std::vector<SatisfactionEvent> record_act(const CommunicationAct& act, Round round);

    std::vector<Obligation> pending_obligations(Round current_round, Round timeout_rounds) const;
    std::vector<Obligation> open_obligations() const;

    /// Marks newly overdue obligations and returns them (once each).
    std::vector<Obligation> flag_timeouts(Round current_round, Round timeout_rounds);

    int pending_count(const AgentId& from, const AgentId& to) const;
    const std::vector<ProtocolViolationRecord>& violations() const { return violations_; }
    const ObligationTable& table() const { return table_; }

    int opened_total() const { return opened_total_; }
    int satisfied_total() const { return satisfied_total_; }

private:
    ObligationTable table_;
    std::map<std::string, std::vector<Obligation>> by_conversation_;
    std::map<std::pair<AgentId, AgentId>, int> pending_pairs_;
    std::vector<ProtocolViolationRecord> violations_;
    int opened_total_ = 0;
    int satisfied_total_ = 0;
};

/// Deferred acknowledgment: an agent that relayed a message by diffusion
/// answers its own initiator only after every diffusion receiver has
/// acknowledged.
struct AckBarrier {
    CommunicationAct initiator;          // the act awaiting the deferred response
    CommunicationAct held_response;      // released when the barrier completes
    bool has_held_response = false;
    std::string conversation;            // the diffusion's conversation token
    std::set<AgentId> expected;
    std::set<AgentId> received;
};

/// Adds one incoming confirm to the barrier. Returns true when every
/// expected responder has acknowledged.
bool ack_barrier_step(AckBarrier& barrier,
                      const CommunicationAct& incoming);  // throws duplicate_ack / unexpected_responder

}  // namespace masim
