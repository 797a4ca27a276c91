#pragma once

#include <map>
#include <string>

#include "masim/trace.hpp"

namespace masim {

struct TraceStats {
    std::int64_t rounds = 0;
    std::int64_t delivered_total = 0;
    std::int64_t micro = 0;
    std::int64_t macro = 0;
    std::map<std::string, std::int64_t> by_performative;
    std::map<Round, std::map<std::string, std::int64_t>> per_round;
    std::int64_t infections = 0;
    std::int64_t knowledge_writes = 0;
    std::int64_t env_changes = 0;
    std::int64_t obligations_opened = 0;
    std::int64_t obligations_satisfied = 0;
    std::int64_t violations = 0;
    std::int64_t overdue = 0;
};

TraceStats summarize(const Trace& trace);
std::string format_stats(const TraceStats& stats);

}  // namespace masim
