#include "masim/stats.hpp"

#include <sstream>

namespace masim {

TraceStats summarize(const Trace& trace) {
    TraceStats stats;
    for (const TraceRecord& record : trace.records) {
        if (std::holds_alternative<RoundMarker>(record)) {
            ++stats.rounds;
        } else if (const auto* act = std::get_if<DeliveredAct>(&record)) {
            ++stats.delivered_total;
            ++(act->micro ? stats.micro : stats.macro);
            ++stats.by_performative[to_string(act->act.performative)];
            ++stats.per_round[act->round][to_string(act->act.performative)];
        } else if (std::holds_alternative<KnowledgeWriteRecord>(record)) {
            ++stats.knowledge_writes;
        } else if (const auto* env = std::get_if<EnvChangeRecord>(&record)) {
            ++stats.env_changes;
            if (env->key == "state" && env->value == Scalar{std::string("infected")}) {
                ++stats.infections;
            }
        } else if (const auto* p = std::get_if<ProtocolEventRecord>(&record)) {
            if (p->kind == "obligation_open") ++stats.obligations_opened;
            if (p->kind == "obligation_satisfied") ++stats.obligations_satisfied;
            if (p->kind == "violation") ++stats.violations;
            if (p->kind == "overdue") ++stats.overdue;
        }
    }
    return stats;
}

std::string format_stats(const TraceStats& stats) {
    std::ostringstream os;
    os << "rounds: " << stats.rounds << "\n";
    os << "delivered acts: " << stats.delivered_total << " (macro " << stats.macro << ", micro "
       << stats.micro << ")\n";
    os << "by performative:\n";
    for (const auto& [name, count] : stats.by_performative) {
        os << "  " << name << ": " << count << "\n";
    }
    os << "per round:\n";
    for (const auto& [round, counts] : stats.per_round) {
        std::int64_t total = 0;
        for (const auto& [name, count] : counts) total += count;
        os << "  round " << round << ": " << total;
        for (const auto& [name, count] : counts) os << " " << name << "=" << count;
        os << "\n";
    }
    os << "infections: " << stats.infections << "\n";
    os << "knowledge writes: " << stats.knowledge_writes << "\n";
    os << "environment changes: " << stats.env_changes << "\n";
    os << "obligations opened: " << stats.obligations_opened << ", satisfied: "
       << stats.obligations_satisfied << "\n";
    os << "violations: " << stats.violations << ", overdue: " << stats.overdue << "\n";
    return os.str();
}

}  // namespace masim
