#include "masim/trace.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "masim/error.hpp"
#include "masim/rng.hpp"

namespace masim {

using ordered_json = nlohmann::ordered_json;

void Trace::append(TraceRecord r) {
    Round round = std::visit([](const auto& rec) { return rec.round; }, r);
    if (round < last_round_) {
        throw SimError(Errc::non_monotone_round,
                       "trace round " + std::to_string(round) + " precedes " +
                           std::to_string(last_round_));
    }
    last_round_ = round;
    records.push_back(std::move(r));
}

namespace {

ordered_json scalar_to_json(const Scalar& v) {
    if (const double* d = std::get_if<double>(&v)) return *d;
    if (const std::string* s = std::get_if<std::string>(&v)) return *s;
    return std::get<bool>(v);
}

Scalar scalar_from_json(const ordered_json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return j.get<std::string>();
    if (j.is_boolean()) return j.get<bool>();
    throw SimError(Errc::parse_error, "scalar expected, got " + j.dump());
}

ordered_json payload_to_json(const Payload& p) {
    ordered_json j;
    switch (p.kind) {
        case Payload::Kind::value:
            j["kind"] = "value";
            j["value"] = scalar_to_json(p.value);
            break;
        case Payload::Kind::assertion:
            j["kind"] = "assertion";
            j["key"] = p.key;
            j["value"] = scalar_to_json(p.value);
            break;
        case Payload::Kind::question:
            j["kind"] = "question";
            j["key"] = p.key;
            break;
        case Payload::Kind::response:
            j["kind"] = "response";
            j["key"] = p.key;
            j["value"] = scalar_to_json(p.value);
            break;
        case Payload::Kind::task_ref:
            j["kind"] = "task";
            j["token"] = p.key;
            break;
    }
    return j;
}

Payload payload_from_json(const ordered_json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "value") return value_payload(j.at("value").get<double>());
    if (kind == "assertion") {
        return assertion_payload(j.at("key").get<std::string>(), scalar_from_json(j.at("value")));
    }
    if (kind == "question") return question_payload(j.at("key").get<std::string>());
    if (kind == "response") {
        return response_payload(j.at("key").get<std::string>(), scalar_from_json(j.at("value")));
    }
    if (kind == "task") return task_ref_payload(j.at("token").get<std::string>());
    throw SimError(Errc::parse_error, "unknown payload kind '" + kind + "'");
}

}  // namespace

std::string trace_record_to_json(const TraceRecord& record) {
    ordered_json j;
    if (const auto* r = std::get_if<RoundMarker>(&record)) {
        j["t"] = "round";
        j["round"] = r->round;
    } else if (const auto* a = std::get_if<DeliveredAct>(&record)) {
        j["t"] = "act";
        j["round"] = a->round;
        j["scope"] = a->micro ? "micro" : "macro";
        j["performative"] = to_string(a->act.performative);
        j["sender"] = a->act.sender.id;
        j["receiver"] = a->act.receiver.id;
        j["mtype"] = a->act.mtype.code;
        j["payload"] = payload_to_json(a->act.payload);
        j["conversation"] = a->act.conversation;
        j["sent"] = a->act.round;
    } else if (const auto* k = std::get_if<KnowledgeWriteRecord>(&record)) {
        j["t"] = "kw";
        j["round"] = k->round;
        j["agent"] = k->agent.id;
        j["space"] = k->space;
        j["key"] = k->key;
        j["value"] = scalar_to_json(k->value);
    } else if (const auto* e = std::get_if<EnvChangeRecord>(&record)) {
        j["t"] = "env";
        j["round"] = e->round;
        j["agent"] = e->agent.id;
        j["key"] = e->key;
        j["value"] = scalar_to_json(e->value);
    } else if (const auto* p = std::get_if<ProtocolEventRecord>(&record)) {
        j["t"] = "protocol";
        j["round"] = p->round;
        j["kind"] = p->kind;
        j["detail"] = p->detail;
    }
    return j.dump();
}

std::string trace_to_jsonl(const Trace& t) {
    std::string out;
    for (const TraceRecord& r : t.records) {
        out += trace_record_to_json(r);
        out += '\n';
    }
    return out;
}

void write_trace(const Trace& t, std::ostream& out) {
    out << trace_to_jsonl(t);
}

Trace parse_trace_jsonl(std::istream& in) {
    Trace trace;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        ordered_json j;
        try {
            j = ordered_json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw SimError(Errc::parse_error,
                           "trace line " + std::to_string(lineno) + ": " + e.what());
        }
        try {
            std::string t = j.at("t").get<std::string>();
            Round round = j.at("round").get<Round>();
            if (t == "round") {
                trace.append(RoundMarker{round});
            } else if (t == "act") {
                DeliveredAct rec;
                rec.round = round;
                rec.micro = j.at("scope").get<std::string>() == "micro";
                auto p = parse_performative(j.at("performative").get<std::string>());
                if (!p) throw SimError(Errc::parse_error, "unknown performative");
                rec.act.performative = *p;
                rec.act.sender = AgentId{j.at("sender").get<std::string>()};
                rec.act.receiver = AgentId{j.at("receiver").get<std::string>()};
                rec.act.mtype = MessageType{j.at("mtype").get<int>(), ""};
                rec.act.payload = payload_from_json(j.at("payload"));
                rec.act.conversation = j.at("conversation").get<std::string>();
                rec.act.round = j.at("sent").get<Round>();
                trace.append(std::move(rec));
            } else if (t == "kw") {
                trace.append(KnowledgeWriteRecord{round, AgentId{j.at("agent").get<std::string>()},
                                                  j.at("space").get<std::string>(),
                                                  j.at("key").get<std::string>(),
                                                  scalar_from_json(j.at("value"))});
            } else if (t == "env") {
                trace.append(EnvChangeRecord{round, AgentId{j.at("agent").get<std::string>()},
                                             j.at("key").get<std::string>(),
                                             scalar_from_json(j.at("value"))});
            } else if (t == "protocol") {
                trace.append(ProtocolEventRecord{round, j.at("kind").get<std::string>(),
                                                 j.at("detail").get<std::string>()});
            } else {
                throw SimError(Errc::parse_error, "unknown record type '" + t + "'");
            }
        } catch (const nlohmann::json::exception& e) {
            throw SimError(Errc::parse_error,
                           "trace line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return trace;
}

std::string trace_digest(const Trace& t) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto feed = [&h](std::string_view s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
    };
    for (const TraceRecord& r : t.records) {
        feed(trace_record_to_json(r));
        feed("\n");
    }
    static const char* digits = "0123456789abcdef";
    std::string hex(16, '0');
    for (int i = 15; i >= 0; --i) {
        hex[i] = digits[h & 0xf];
        h >>= 4;
    }
    return hex;
}

}  // namespace masim
