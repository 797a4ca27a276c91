#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "masim/model.hpp"

namespace masim {

struct RoundMarker {
    Round round = 0;
    bool operator==(const RoundMarker&) const = default;
};

struct DeliveredAct {
    Round round = 0;
    CommunicationAct act;
    bool micro = false;
    bool operator==(const DeliveredAct&) const = default;
};

struct KnowledgeWriteRecord {
    Round round = 0;
    AgentId agent;
    std::string space;  // "facts" or "model"
    std::string key;
    Scalar value = 0.0;
    bool operator==(const KnowledgeWriteRecord&) const = default;
};

struct EnvChangeRecord {
    Round round = 0;
    AgentId agent;  // empty for global keys
    std::string key;
    Scalar value = 0.0;
    bool operator==(const EnvChangeRecord&) const = default;
};

struct ProtocolEventRecord {
    Round round = 0;
    std::string kind;  // obligation_open, obligation_satisfied, violation, overdue, barrier_complete
    std::string detail;
    bool operator==(const ProtocolEventRecord&) const = default;
};

using TraceRecord =
    std::variant<RoundMarker, DeliveredAct, KnowledgeWriteRecord, EnvChangeRecord, ProtocolEventRecord>;

/// Append-only, replayable run log. Record rounds never decrease.
struct Trace {
    std::vector<TraceRecord> records;

    void append(TraceRecord r);  // throws non_monotone_round
    bool operator==(const Trace&) const = default;

private:
    Round last_round_ = 0;
};

/// Canonical JSON-lines form; one record per line, fixed field order.
std::string trace_record_to_json(const TraceRecord& r);
std::string trace_to_jsonl(const Trace& t);
void write_trace(const Trace& t, std::ostream& out);

Trace parse_trace_jsonl(std::istream& in);  // throws parse_error

/// FNV-1a 64 over the canonical serialization, as 16 hex digits.
std::string trace_digest(const Trace& t);

}  // namespace masim
