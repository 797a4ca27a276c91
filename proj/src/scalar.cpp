#include "masim/scalar.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "masim/error.hpp"

namespace masim {

bool is_number(const Scalar& v) {
    return std::holds_alternative<double>(v);
}

double as_number(const Scalar& v) {
    if (const double* d = std::get_if<double>(&v)) return *d;
    throw SimError(Errc::type_mismatch, "expected a number, got " + scalar_repr(v));
}

std::string as_string(const Scalar& v) {
    if (const std::string* s = std::get_if<std::string>(&v)) return *s;
    throw SimError(Errc::type_mismatch, "expected a string, got " + scalar_repr(v));
}

bool scalar_equal(const Scalar& a, const Scalar& b) {
    return a == b;
}

std::string scalar_repr(const Scalar& v) {
    if (const double* d = std::get_if<double>(&v)) {
        double i = 0.0;
        if (std::modf(*d, &i) == 0.0 && std::abs(*d) < 1e15) {
            return std::to_string(static_cast<long long>(*d));
        }
        char buf[32];  // shortest round-trip form
        auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), *d);
        return std::string(buf, end);
    }
    if (const std::string* s = std::get_if<std::string>(&v)) return *s;
    return std::get<bool>(v) ? "true" : "false";
}

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::unknown_agent: return "UnknownAgent";
        case Errc::missing_role: return "MissingRole";
        case Errc::duplicate_community: return "DuplicateCommunity";
        case Errc::self_message: return "SelfMessage";
        case Errc::empty_conversation: return "EmptyConversation";
        case Errc::out_of_range: return "OutOfRange";
        case Errc::self_edge: return "SelfEdge";
        case Errc::unknown_community: return "UnknownCommunity";
        case Errc::unbound_variable: return "UnboundVariable";
        case Errc::reserved_binder: return "ReservedBinder";
        case Errc::missing_binding: return "MissingBinding";
        case Errc::missing_knowledge_key: return "MissingKnowledgeKey";
        case Errc::type_mismatch: return "TypeMismatch";
        case Errc::level_mismatch: return "LevelMismatch";
        case Errc::level_too_low: return "LevelTooLow";
        case Errc::incomplete_members: return "IncompleteMembers";
        case Errc::non_monotone_round: return "NonMonotoneRound";
        case Errc::protocol_violation: return "ProtocolViolation";
        case Errc::duplicate_ack: return "DuplicateAck";
        case Errc::unexpected_responder: return "UnexpectedResponder";
        case Errc::invalid_config: return "InvalidConfig";
        case Errc::file_not_found: return "FileNotFound";
        case Errc::parse_error: return "ParseError";
        case Errc::rule_error: return "RuleError";
        case Errc::runtime_error: return "RuntimeError";
    }
    return "Error";
}

std::string ValidationError::summarize(const std::vector<Diagnostic>& diags) {
    if (diags.empty()) return "validation failed";
    std::ostringstream os;
    os << diags.size() << " diagnostic(s); first: " << diags.front().detail;
    return os.str();
}

}  // namespace masim
