#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace masim {

enum class Errc {
    unknown_agent,
    missing_role,
    duplicate_community,
    self_message,
    empty_conversation,
    out_of_range,
    self_edge,
    unknown_community,
    unbound_variable,
    reserved_binder,
    missing_binding,
    missing_knowledge_key,
    type_mismatch,
    level_mismatch,
    level_too_low,
    incomplete_members,
    non_monotone_round,
    protocol_violation,
    duplicate_ack,
    unexpected_responder,
    invalid_config,
    file_not_found,
    parse_error,
    rule_error,
    runtime_error,
};

const char* errc_name(Errc code);

class SimError : public std::runtime_error {
public:
    SimError(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

/// One validation finding. Validation collects all of them instead of
/// stopping at the first.
struct Diagnostic {
    Errc code;
    std::string detail;

    bool operator==(const Diagnostic&) const = default;
};

class ValidationError : public SimError {
public:
    explicit ValidationError(std::vector<Diagnostic> diagnostics)
        : SimError(diagnostics.empty() ? Errc::invalid_config : diagnostics.front().code,
                   summarize(diagnostics)),
          diagnostics_(std::move(diagnostics)) {}

    const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

private:
    static std::string summarize(const std::vector<Diagnostic>& diags);
    std::vector<Diagnostic> diagnostics_;
};

}  // namespace masim
