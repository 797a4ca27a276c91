#pragma once

#include <string>
#include <vector>

#include "masim/scalar.hpp"

namespace masim {

/// Value expression used in conditions, payloads and knowledge updates.
/// Variables come from event bindings; knowledge lookups read the owning
/// agent's facts first, then its system model.
struct ValueExpr {
    enum class Kind {
        literal,        // literal scalar
        var,            // bound variable
        knowledge,      // knowledge lookup, missing key is an error
        knowledge_or,   // knowledge lookup with a default
        add,
        sub,
        recent_count,   // sum of keys "<name>.<r>" for r in (round-window, round]
    };

    Kind kind = Kind::literal;
    Scalar literal = 0.0;        // literal value / knowledge_or default
    std::string name;            // var name, knowledge key (may contain {var} templates),
                                 // recent_count key prefix
    int window = 0;              // recent_count window in rounds

    std::vector<ValueExpr> args;  // add/sub operands

    bool operator==(const ValueExpr&) const;

    static ValueExpr lit(Scalar v);
    static ValueExpr var(std::string name);
    static ValueExpr knowledge(std::string key);
    static ValueExpr knowledge_or(std::string key, Scalar fallback);
    static ValueExpr add(ValueExpr a, ValueExpr b);
    static ValueExpr sub(ValueExpr a, ValueExpr b);
    static ValueExpr recent_count(std::string prefix, int window);
};

enum class CompareOp { gt, ge, lt, le, eq };

std::string to_string(CompareOp op);

/// Boolean expression tree over value comparisons. Depth is capped at 16.
struct Condition {
    enum class Kind { always_true, compare, conj, disj, negation };

    Kind kind = Kind::always_true;
    CompareOp op = CompareOp::eq;
    ValueExpr lhs, rhs;              // compare
    std::vector<Condition> children;  // conj/disj/negation

    bool operator==(const Condition&) const;

    static Condition always();
    static Condition compare(CompareOp op, ValueExpr lhs, ValueExpr rhs);
    static Condition all_of(std::vector<Condition> cs);
    static Condition any_of(std::vector<Condition> cs);
    static Condition negate(Condition c);
};

int condition_depth(const Condition& c);
inline constexpr int kMaxConditionDepth = 16;

/// Variable names referenced by the expression (knowledge keys excluded).
void collect_vars(const ValueExpr& e, std::vector<std::string>& out);
void collect_vars(const Condition& c, std::vector<std::string>& out);

std::string to_string(const ValueExpr& e);
std::string to_string(const Condition& c);

}  // namespace masim
