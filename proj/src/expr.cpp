#include "masim/expr.hpp"

#include <algorithm>
#include <sstream>

namespace masim {

bool ValueExpr::operator==(const ValueExpr& o) const {
    return kind == o.kind && literal == o.literal && name == o.name && window == o.window &&
           args == o.args;
}

ValueExpr ValueExpr::lit(Scalar v) {
    ValueExpr e;
    e.kind = Kind::literal;
    e.literal = std::move(v);
    return e;
}

ValueExpr ValueExpr::var(std::string name) {
    ValueExpr e;
    e.kind = Kind::var;
    e.name = std::move(name);
    return e;
}

ValueExpr ValueExpr::knowledge(std::string key) {
    ValueExpr e;
    e.kind = Kind::knowledge;
    e.name = std::move(key);
    return e;
}

ValueExpr ValueExpr::knowledge_or(std::string key, Scalar fallback) {
    ValueExpr e;
    e.kind = Kind::knowledge_or;
    e.name = std::move(key);
    e.literal = std::move(fallback);
    return e;
}

ValueExpr ValueExpr::add(ValueExpr a, ValueExpr b) {
    ValueExpr e;
    e.kind = Kind::add;
    e.args.push_back(std::move(a));
    e.args.push_back(std::move(b));
    return e;
}

ValueExpr ValueExpr::sub(ValueExpr a, ValueExpr b) {
    ValueExpr e;
    e.kind = Kind::sub;
    e.args.push_back(std::move(a));
    e.args.push_back(std::move(b));
    return e;
}

ValueExpr ValueExpr::recent_count(std::string prefix, int window) {
    ValueExpr e;
    e.kind = Kind::recent_count;
    e.name = std::move(prefix);
    e.window = window;
    return e;
}

std::string to_string(CompareOp op) {
    switch (op) {
        case CompareOp::gt: return ">";
        case CompareOp::ge: return ">=";
        case CompareOp::lt: return "<";
        case CompareOp::le: return "<=";
        case CompareOp::eq: return "=";
    }
    return "=";
}

bool Condition::operator==(const Condition& o) const {
    return kind == o.kind && op == o.op && lhs == o.lhs && rhs == o.rhs && children == o.children;
}

Condition Condition::always() {
    return Condition{};
}

Condition Condition::compare(CompareOp op, ValueExpr lhs, ValueExpr rhs) {
    Condition c;
    c.kind = Kind::compare;
    c.op = op;
    c.lhs = std::move(lhs);
    c.rhs = std::move(rhs);
    return c;
}

Condition Condition::all_of(std::vector<Condition> cs) {
    Condition c;
    c.kind = Kind::conj;
    c.children = std::move(cs);
    return c;
}

Condition Condition::any_of(std::vector<Condition> cs) {
    Condition c;
    c.kind = Kind::disj;
    c.children = std::move(cs);
    return c;
}

Condition Condition::negate(Condition inner) {
    Condition c;
    c.kind = Kind::negation;
    c.children.push_back(std::move(inner));
    return c;
}

int condition_depth(const Condition& c) {
    int deepest = 0;
    for (const Condition& child : c.children) {
        deepest = std::max(deepest, condition_depth(child));
    }
    return 1 + deepest;
}

void collect_vars(const ValueExpr& e, std::vector<std::string>& out) {
    if (e.kind == ValueExpr::Kind::var) out.push_back(e.name);
    for (const ValueExpr& a : e.args) collect_vars(a, out);
    // {var} templates inside knowledge keys reference bindings too
    if (e.kind == ValueExpr::Kind::knowledge || e.kind == ValueExpr::Kind::knowledge_or) {
        std::size_t pos = 0;
        while ((pos = e.name.find('{', pos)) != std::string::npos) {
            std::size_t end = e.name.find('}', pos);
            if (end == std::string::npos) break;
            out.push_back(e.name.substr(pos + 1, end - pos - 1));
            pos = end + 1;
        }
    }
}

void collect_vars(const Condition& c, std::vector<std::string>& out) {
    if (c.kind == Condition::Kind::compare) {
        collect_vars(c.lhs, out);
        collect_vars(c.rhs, out);
    }
    for (const Condition& child : c.children) collect_vars(child, out);
}

std::string to_string(const ValueExpr& e) {
    switch (e.kind) {
        case ValueExpr::Kind::literal: return scalar_repr(e.literal);
        case ValueExpr::Kind::var: return "$" + e.name;
        case ValueExpr::Kind::knowledge: return "kb:" + e.name;
        case ValueExpr::Kind::knowledge_or:
            return "kb:" + e.name + "?" + scalar_repr(e.literal);
        case ValueExpr::Kind::add:
            return "(" + to_string(e.args[0]) + " + " + to_string(e.args[1]) + ")";
        case ValueExpr::Kind::sub:
            return "(" + to_string(e.args[0]) + " - " + to_string(e.args[1]) + ")";
        case ValueExpr::Kind::recent_count:
            return "recent(" + e.name + "," + std::to_string(e.window) + ")";
    }
    return "";
}

std::string to_string(const Condition& c) {
    switch (c.kind) {
        case Condition::Kind::always_true: return "true";
        case Condition::Kind::compare:
            return "(" + to_string(c.lhs) + " " + to_string(c.op) + " " + to_string(c.rhs) + ")";
        case Condition::Kind::conj:
        case Condition::Kind::disj: {
            std::ostringstream os;
            os << (c.kind == Condition::Kind::conj ? "(and" : "(or");
            for (const Condition& child : c.children) os << " " << to_string(child);
            os << ")";
            return os.str();
        }
        case Condition::Kind::negation:
            return "(not " + to_string(c.children.front()) + ")";
    }
    return "true";
}

}  // namespace masim
