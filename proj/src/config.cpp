#include "masim/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "masim/error.hpp"

namespace masim {

using ordered_json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& what) {
    throw SimError(Errc::parse_error, what);
}

ordered_json scalar_to_json(const Scalar& v) {
    if (const double* d = std::get_if<double>(&v)) return *d;
    if (const std::string* s = std::get_if<std::string>(&v)) return *s;
    return std::get<bool>(v);
}

Scalar scalar_from_json(const ordered_json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return j.get<std::string>();
    if (j.is_boolean()) return j.get<bool>();
    fail("expected a scalar, got " + j.dump());
}

ordered_json expr_to_json(const ValueExpr& e) {
    switch (e.kind) {
        case ValueExpr::Kind::literal:
            return scalar_to_json(e.literal);
        case ValueExpr::Kind::var:
            return ordered_json{{"var", e.name}};
        case ValueExpr::Kind::knowledge:
            return ordered_json{{"kb", e.name}};
        case ValueExpr::Kind::knowledge_or:
            return ordered_json{{"kb_or", ordered_json::array({e.name, scalar_to_json(e.literal)})}};
        case ValueExpr::Kind::add:
            return ordered_json{
                {"add", ordered_json::array({expr_to_json(e.args[0]), expr_to_json(e.args[1])})}};
        case ValueExpr::Kind::sub:
            return ordered_json{
                {"sub", ordered_json::array({expr_to_json(e.args[0]), expr_to_json(e.args[1])})}};
        case ValueExpr::Kind::recent_count:
            return ordered_json{{"recent_count", ordered_json::array({e.name, e.window})}};
    }
    return nullptr;
}

ValueExpr expr_from_json(const ordered_json& j) {
    if (j.is_number() || j.is_string() || j.is_boolean()) {
        return ValueExpr::lit(scalar_from_json(j));
    }
    if (!j.is_object() || j.size() != 1) fail("malformed expression " + j.dump());
    if (j.contains("var")) return ValueExpr::var(j.at("var").get<std::string>());
    if (j.contains("kb")) return ValueExpr::knowledge(j.at("kb").get<std::string>());
    if (j.contains("kb_or")) {
        const auto& a = j.at("kb_or");
        if (!a.is_array() || a.size() != 2) fail("kb_or expects [key, default]");
        return ValueExpr::knowledge_or(a[0].get<std::string>(), scalar_from_json(a[1]));
    }
    if (j.contains("add")) {
        const auto& a = j.at("add");
        if (!a.is_array() || a.size() != 2) fail("add expects two operands");
        return ValueExpr::add(expr_from_json(a[0]), expr_from_json(a[1]));
    }
    if (j.contains("sub")) {
        const auto& a = j.at("sub");
        if (!a.is_array() || a.size() != 2) fail("sub expects two operands");
        return ValueExpr::sub(expr_from_json(a[0]), expr_from_json(a[1]));
    }
    if (j.contains("recent_count")) {
        const auto& a = j.at("recent_count");
        if (!a.is_array() || a.size() != 2) fail("recent_count expects [prefix, window]");
        return ValueExpr::recent_count(a[0].get<std::string>(), a[1].get<int>());
    }
    fail("unknown expression " + j.dump());
}

ordered_json condition_to_json(const Condition& c) {
    switch (c.kind) {
        case Condition::Kind::always_true:
            return true;
        case Condition::Kind::compare:
            return ordered_json{
                {"op", to_string(c.op)}, {"lhs", expr_to_json(c.lhs)}, {"rhs", expr_to_json(c.rhs)}};
        case Condition::Kind::conj: {
            ordered_json arr = ordered_json::array();
            for (const Condition& child : c.children) arr.push_back(condition_to_json(child));
            return ordered_json{{"all", arr}};
        }
        case Condition::Kind::disj: {
            ordered_json arr = ordered_json::array();
            for (const Condition& child : c.children) arr.push_back(condition_to_json(child));
            return ordered_json{{"any", arr}};
        }
        case Condition::Kind::negation:
            return ordered_json{{"not", condition_to_json(c.children.front())}};
    }
    return true;
}

CompareOp compare_op_from_string(const std::string& s) {
    if (s == ">") return CompareOp::gt;
    if (s == ">=") return CompareOp::ge;
    if (s == "<") return CompareOp::lt;
    if (s == "<=") return CompareOp::le;
    if (s == "=" || s == "==") return CompareOp::eq;
    fail("unknown comparison operator '" + s + "'");
}

Condition condition_from_json(const ordered_json& j) {
    if (j.is_boolean()) {
        if (j.get<bool>()) return Condition::always();
        fail("literal false condition is not expressible");
    }
    if (!j.is_object()) fail("malformed condition " + j.dump());
    if (j.contains("op")) {
        return Condition::compare(compare_op_from_string(j.at("op").get<std::string>()),
                                  expr_from_json(j.at("lhs")), expr_from_json(j.at("rhs")));
    }
    if (j.contains("all")) {
        std::vector<Condition> children;
        for (const auto& child : j.at("all")) children.push_back(condition_from_json(child));
        return Condition::all_of(std::move(children));
    }
    if (j.contains("any")) {
        std::vector<Condition> children;
        for (const auto& child : j.at("any")) children.push_back(condition_from_json(child));
        return Condition::any_of(std::move(children));
    }
    if (j.contains("not")) return Condition::negate(condition_from_json(j.at("not")));
    fail("unknown condition " + j.dump());
}

ordered_json pattern_to_json(const EventPattern& p) {
    ordered_json j;
    j["source"] = p.source == StimulusSource::message ? "message" : "environment";
    if (p.performative) j["performative"] = to_string(*p.performative);
    if (p.sender) j["sender"] = p.sender->id;
    if (p.mtype) j["mtype"] = *p.mtype;
    if (p.payload_key) j["pkey"] = *p.payload_key;
    if (p.env_key) j["key"] = *p.env_key;
    if (p.binder) j["bind"] = *p.binder;
    return j;
}

EventPattern pattern_from_json(const ordered_json& j) {
    EventPattern p;
    std::string source = j.value("source", std::string("message"));
    if (source == "message") {
        p.source = StimulusSource::message;
    } else if (source == "environment") {
        p.source = StimulusSource::environment;
    } else {
        fail("unknown stimulus source '" + source + "'");
    }
    if (j.contains("performative")) {
        auto perf = parse_performative(j.at("performative").get<std::string>());
        if (!perf) fail("unknown performative '" + j.at("performative").get<std::string>() + "'");
        p.performative = *perf;
    }
    if (j.contains("sender")) p.sender = AgentId{j.at("sender").get<std::string>()};
    if (j.contains("mtype")) p.mtype = j.at("mtype").get<int>();
    if (j.contains("pkey")) p.payload_key = j.at("pkey").get<std::string>();
    if (j.contains("key")) p.env_key = j.at("key").get<std::string>();
    if (j.contains("bind")) p.binder = j.at("bind").get<std::string>();
    return p;
}

ordered_json payload_spec_to_json(const PayloadSpec& p) {
    ordered_json j;
    switch (p.kind) {
        case Payload::Kind::value:
            j["kind"] = "value";
            j["value"] = expr_to_json(p.value);
            break;
        case Payload::Kind::assertion:
            j["kind"] = "assertion";
            j["key"] = p.key;
            j["value"] = expr_to_json(p.value);
            break;
        case Payload::Kind::question:
            j["kind"] = "question";
            j["key"] = p.key;
            break;
        case Payload::Kind::response:
            j["kind"] = "response";
            j["key"] = p.key;
            j["value"] = expr_to_json(p.value);
            break;
        case Payload::Kind::task_ref:
            j["kind"] = "task";
            j["token"] = expr_to_json(p.value);
            break;
    }
    return j;
}

PayloadSpec payload_spec_from_json(const ordered_json& j) {
    PayloadSpec p;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "value") {
        p.kind = Payload::Kind::value;
        p.value = expr_from_json(j.at("value"));
    } else if (kind == "assertion") {
        p.kind = Payload::Kind::assertion;
        p.key = j.at("key").get<std::string>();
        p.value = expr_from_json(j.at("value"));
    } else if (kind == "question") {
        p.kind = Payload::Kind::question;
        p.key = j.at("key").get<std::string>();
    } else if (kind == "response") {
        p.kind = Payload::Kind::response;
        p.key = j.at("key").get<std::string>();
        p.value = expr_from_json(j.at("value"));
    } else if (kind == "task") {
        p.kind = Payload::Kind::task_ref;
        p.value = expr_from_json(j.at("token"));
    } else {
        fail("unknown payload kind '" + kind + "'");
    }
    return p;
}

ordered_json action_to_json(const ActionSpec& action) {
    ordered_json j;
    if (const auto* send = std::get_if<SendAction>(&action)) {
        j["do"] = "send";
        j["performative"] = to_string(send->performative);
        switch (send->receiver.kind) {
            case ReceiverRef::Kind::fixed: j["to"] = send->receiver.agent.id; break;
            case ReceiverRef::Kind::reply_sender: j["to"] = "@sender"; break;
            case ReceiverRef::Kind::var: j["to"] = ordered_json{{"var", send->receiver.name}}; break;
        }
        j["mtype"] = send->mtype;
        j["payload"] = payload_spec_to_json(send->payload);
        if (send->reply) j["reply"] = true;
    } else if (const auto* dif = std::get_if<DiffuseAction>(&action)) {
        j["do"] = "diffuse";
        j["performative"] = to_string(dif->performative);
        j["community"] = dif->community;
        j["mtype"] = dif->mtype;
        j["payload"] = payload_spec_to_json(dif->payload);
    } else if (const auto* upd = std::get_if<UpdateKnowledgeAction>(&action)) {
        j["do"] = "update";
        j["key"] = upd->key;
        j["value"] = expr_to_json(upd->value);
    } else if (const auto* env = std::get_if<EnvironmentOpAction>(&action)) {
        j["do"] = "env";
        j["op"] = env->op;
        ordered_json params;
        for (const auto& [k, v] : env->params) params[k] = scalar_to_json(v);
        j["params"] = params;
    }
    return j;
}

ActionSpec action_from_json(const ordered_json& j) {
    std::string kind = j.at("do").get<std::string>();
    if (kind == "send") {
        SendAction send;
        auto perf = parse_performative(j.at("performative").get<std::string>());
        if (!perf) fail("unknown performative in send action");
        send.performative = *perf;
        const auto& to = j.at("to");
        if (to.is_string()) {
            std::string target = to.get<std::string>();
            send.receiver = target == "@sender" ? ReceiverRef::reply_sender()
                                                : ReceiverRef::fixed(AgentId{target});
        } else if (to.is_object() && to.contains("var")) {
            send.receiver = ReceiverRef::var(to.at("var").get<std::string>());
        } else {
            fail("malformed send receiver " + to.dump());
        }
        send.mtype = j.value("mtype", 0);
        send.payload = payload_spec_from_json(j.at("payload"));
        send.reply = j.value("reply", false);
        return send;
    }
    if (kind == "diffuse") {
        DiffuseAction dif;
        auto perf = parse_performative(j.value("performative", std::string("diffuse")));
        if (!perf) fail("unknown performative in diffuse action");
        dif.performative = *perf;
        dif.community = j.at("community").get<std::string>();
        dif.mtype = j.value("mtype", 0);
        dif.payload = payload_spec_from_json(j.at("payload"));
        return dif;
    }
    if (kind == "update") {
        UpdateKnowledgeAction upd;
        upd.key = j.at("key").get<std::string>();
        upd.value = expr_from_json(j.at("value"));
        return upd;
    }
    if (kind == "env") {
        EnvironmentOpAction env;
        env.op = j.at("op").get<std::string>();
        if (j.contains("params")) {
            for (const auto& [k, v] : j.at("params").items()) env.params[k] = scalar_from_json(v);
        }
        return env;
    }
    fail("unknown action kind '" + kind + "'");
}

ordered_json rule_to_json(const DecisionRule& rule) {
    ordered_json j;
    j["id"] = rule.id;
    if (rule.priority != 0) j["priority"] = rule.priority;
    j["event"] = pattern_to_json(rule.event);
    j["condition"] = condition_to_json(rule.condition);
    ordered_json actions = ordered_json::array();
    for (const ActionSpec& action : rule.actions) actions.push_back(action_to_json(action));
    j["actions"] = actions;
    return j;
}

DecisionRule rule_from_json(const ordered_json& j) {
    DecisionRule rule;
    rule.id = j.at("id").get<std::string>();
    rule.priority = j.value("priority", 0);
    rule.event = pattern_from_json(j.at("event"));
    rule.condition = j.contains("condition") ? condition_from_json(j.at("condition"))
                                             : Condition::always();
    for (const auto& action : j.at("actions")) rule.actions.push_back(action_from_json(action));
    return rule;
}

ordered_json kv_to_json(const std::map<std::string, Scalar>& m) {
    ordered_json j = ordered_json::object();
    for (const auto& [k, v] : m) j[k] = scalar_to_json(v);
    return j;
}

std::map<std::string, Scalar> kv_from_json(const ordered_json& j) {
    std::map<std::string, Scalar> m;
    for (const auto& [k, v] : j.items()) m[k] = scalar_from_json(v);
    return m;
}

ordered_json agent_to_json(const AgentSpec& agent, const Role& role) {
    ordered_json j;
    j["id"] = agent.id.id;
    j["level"] = agent.level;
    j["role"] = role.name;
    if (!agent.kb.facts.empty()) j["facts"] = kv_to_json(agent.kb.facts);
    if (!agent.kb.system_model.empty()) j["system_model"] = kv_to_json(agent.kb.system_model);
    if (!agent.kb.interaction_config.empty()) {
        j["interaction_config"] = kv_to_json(agent.kb.interaction_config);
    }
    if (!agent.kb.acquaintances.empty()) {
        ordered_json arr = ordered_json::array();
        for (const AgentId& a : agent.kb.acquaintances) arr.push_back(a.id);
        j["acquaintances"] = arr;
    }
    if (!agent.kb.rules.empty()) {
        ordered_json arr = ordered_json::array();
        for (const DecisionRule& rule : agent.kb.rules) arr.push_back(rule_to_json(rule));
        j["rules"] = arr;
    }
    if (!agent.reflexes.empty()) {
        ordered_json arr = ordered_json::array();
        for (const ReflexEntry& reflex : agent.reflexes) {
            ordered_json r;
            r["event"] = pattern_to_json(reflex.event);
            ordered_json actions = ordered_json::array();
            for (const ActionSpec& action : reflex.actions) actions.push_back(action_to_json(action));
            r["actions"] = actions;
            arr.push_back(r);
        }
        j["reflexes"] = arr;
    }
    if (!agent.interpreter.empty()) {
        ordered_json arr = ordered_json::array();
        for (const InterpretationRule& ir : agent.interpreter) {
            ordered_json r;
            r["trigger"] = pattern_to_json(ir.trigger);
            if (ir.guard != Condition::always()) r["guard"] = condition_to_json(ir.guard);
            r["tag"] = ir.tag;
            ordered_json updates = ordered_json::array();
            for (const auto& [key, expr] : ir.updates) {
                updates.push_back(ordered_json{{"key", key}, {"value", expr_to_json(expr)}});
            }
            r["updates"] = updates;
            arr.push_back(r);
        }
        j["interpreter"] = arr;
    }
    if (!agent.members.empty()) {
        ordered_json members;
        for (const auto& [role_name, id] : agent.members) members[to_string(role_name)] = id.id;
        j["members"] = members;
    }
    return j;
}

std::pair<AgentSpec, Role> agent_from_json(const ordered_json& j) {
    AgentSpec agent;
    agent.id = AgentId{j.at("id").get<std::string>()};
    agent.level = j.at("level").get<int>();
    Role role{j.value("role", std::string("agent")), agent.level};
    if (j.contains("facts")) agent.kb.facts = kv_from_json(j.at("facts"));
    if (j.contains("system_model")) agent.kb.system_model = kv_from_json(j.at("system_model"));
    if (j.contains("interaction_config")) {
        agent.kb.interaction_config = kv_from_json(j.at("interaction_config"));
    }
    if (j.contains("acquaintances")) {
        for (const auto& a : j.at("acquaintances")) {
            agent.kb.acquaintances.push_back(AgentId{a.get<std::string>()});
        }
    }
    if (j.contains("rules")) {
        for (const auto& rule : j.at("rules")) agent.kb.rules.push_back(rule_from_json(rule));
    }
    if (j.contains("reflexes")) {
        for (const auto& r : j.at("reflexes")) {
            ReflexEntry reflex;
            reflex.event = pattern_from_json(r.at("event"));
            for (const auto& action : r.at("actions")) {
                reflex.actions.push_back(action_from_json(action));
            }
            agent.reflexes.push_back(std::move(reflex));
        }
    }
    if (j.contains("interpreter")) {
        for (const auto& r : j.at("interpreter")) {
            InterpretationRule ir;
            ir.trigger = pattern_from_json(r.at("trigger"));
            if (r.contains("guard")) ir.guard = condition_from_json(r.at("guard"));
            ir.tag = r.value("tag", std::string());
            if (r.contains("updates")) {
                for (const auto& u : r.at("updates")) {
                    ir.updates.emplace_back(u.at("key").get<std::string>(),
                                            expr_from_json(u.at("value")));
                }
            }
            agent.interpreter.push_back(std::move(ir));
        }
    }
    if (j.contains("members")) {
        for (const auto& [role_name, id] : j.at("members").items()) {
            auto coop = parse_coop_role(role_name);
            if (!coop) fail("unknown member role '" + role_name + "'");
            agent.members[*coop] = AgentId{id.get<std::string>()};
        }
    }
    return {std::move(agent), std::move(role)};
}

ordered_json system_to_json(const SystemModel& model) {
    ordered_json j;
    ordered_json agents = ordered_json::array();
    for (const auto& [id, agent] : model.agents) {
        agents.push_back(agent_to_json(agent, model.roles.at(id)));
    }
    j["agents"] = agents;
    if (!model.interactions.empty()) {
        ordered_json arr = ordered_json::array();
        for (const InteractionTriple& t : model.interactions) {
            arr.push_back(ordered_json{{"sender_role", t.sender_role},
                                       {"receiver_role", t.receiver_role},
                                       {"performative", to_string(t.performative)}});
        }
        j["interactions"] = arr;
    }
    if (!model.organizations.empty()) {
        ordered_json arr = ordered_json::array();
        for (const Community& c : model.organizations) {
            ordered_json members = ordered_json::array();
            for (const AgentId& m : c.members) members.push_back(m.id);
            arr.push_back(ordered_json{{"name", c.name}, {"members", members}});
        }
        j["communities"] = arr;
    }
    ordered_json affinity;
    affinity["inhibition_threshold"] = model.affinity.inhibition_threshold;
    affinity["reinforce_delta"] = model.affinity.reinforce_delta;
    affinity["decay_delta"] = model.affinity.decay_delta;
    if (!model.affinity.weights.empty()) {
        ordered_json weights = ordered_json::array();
        for (const auto& [pair, w] : model.affinity.weights) {
            weights.push_back(
                ordered_json{{"from", pair.first.id}, {"to", pair.second.id}, {"weight", w}});
        }
        affinity["weights"] = weights;
    }
    j["affinity"] = affinity;
    return j;
}

SystemModel system_from_json(const ordered_json& j) {
    std::map<AgentId, AgentSpec> agents;
    std::map<AgentId, Role> roles;
    for (const auto& a : j.at("agents")) {
        auto [agent, role] = agent_from_json(a);
        AgentId id = agent.id;
        roles[id] = std::move(role);
        if (!agents.emplace(id, std::move(agent)).second) {
            fail("duplicate agent id '" + id.id + "'");
        }
    }
    std::vector<InteractionTriple> interactions;
    if (j.contains("interactions")) {
        for (const auto& t : j.at("interactions")) {
            auto perf = parse_performative(t.at("performative").get<std::string>());
            if (!perf) fail("unknown performative in interaction triple");
            interactions.push_back(InteractionTriple{t.at("sender_role").get<std::string>(),
                                                     t.at("receiver_role").get<std::string>(),
                                                     *perf});
        }
    }
    std::vector<Community> organizations;
    if (j.contains("communities")) {
        for (const auto& c : j.at("communities")) {
            Community community;
            community.name = c.at("name").get<std::string>();
            for (const auto& m : c.at("members")) {
                community.members.insert(AgentId{m.get<std::string>()});
            }
            organizations.push_back(std::move(community));
        }
    }
    AffinityNetwork affinity;
    if (j.contains("affinity")) {
        const auto& a = j.at("affinity");
        affinity.inhibition_threshold = a.value("inhibition_threshold", 0.1);
        affinity.reinforce_delta = a.value("reinforce_delta", 0.05);
        affinity.decay_delta = a.value("decay_delta", 0.05);
        if (a.contains("weights")) {
            for (const auto& w : a.at("weights")) {
                affinity.weights[{AgentId{w.at("from").get<std::string>()},
                                  AgentId{w.at("to").get<std::string>()}}] =
                    w.at("weight").get<double>();
            }
        }
    }
    return build_system(std::move(agents), std::move(interactions), std::move(roles),
                        std::move(organizations), std::move(affinity));
}

ordered_json parse_json(const std::string& text) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SimError(Errc::parse_error, e.what());  // message carries line and column
    }
}

GridPos grid_pos_from_json(const ordered_json& j) {
    return GridPos{j.at("x").get<int>(), j.at("y").get<int>()};
}

EpidemicConfig epidemic_from_json(const ordered_json& j) {
    EpidemicConfig cfg;
    if (j.contains("grid")) {
        cfg.grid_width = j.at("grid").value("width", 5);
        cfg.grid_height = j.at("grid").value("height", 5);
    }
    if (j.contains("contaminants")) {
        for (const auto& c : j.at("contaminants")) {
            cfg.contaminants.push_back(ContaminantSpec{AgentId{c.at("id").get<std::string>()},
                                                       grid_pos_from_json(c),
                                                       c.value("disease", std::string("flu"))});
        }
    }
    if (j.contains("individuals")) {
        for (const auto& c : j.at("individuals")) {
            cfg.individuals.push_back(
                IndividualSpec{AgentId{c.at("id").get<std::string>()}, grid_pos_from_json(c)});
        }
    }
    if (j.contains("doctors")) {
        for (const auto& d : j.at("doctors")) {
            cfg.doctors.push_back(DoctorSpec{AgentId{d.at("id").get<std::string>()},
                                             d.value("region", std::string("north"))});
        }
    }
    if (j.contains("authority")) cfg.authority = AgentId{j.at("authority").get<std::string>()};
    cfg.infection_probability = j.value("infection_probability", 0.5);
    cfg.proximity_radius = j.value("proximity_radius", 1);
    cfg.detection_threshold = j.value("detection_threshold", 3);
    cfg.detection_window = j.value("detection_window", 5);
    return cfg;
}

ConfigurationConfig configuration_from_json(const ordered_json& j) {
    ConfigurationConfig cfg;
    for (const auto& r : j.at("requirements")) {
        cfg.requirements.push_back(RequirementSpec{AgentId{r.at("id").get<std::string>()},
                                                   r.at("value").get<double>(),
                                                   AgentId{r.at("target").get<std::string>()}});
    }
    for (const auto& f : j.at("functions")) cfg.functions.push_back(AgentId{f.get<std::string>()});
    for (const auto& s : j.at("solutions")) cfg.solutions.push_back(AgentId{s.get<std::string>()});
    for (const auto& c : j.at("constraints")) {
        cfg.constraints.push_back(AgentId{c.get<std::string>()});
    }
    cfg.threshold = j.value("threshold", 0.4);
    cfg.inhibition_threshold = j.value("inhibition_threshold", 0.1);
    cfg.value_mtype = j.value("value_mtype", 2);
    if (j.contains("weights")) {
        for (const auto& w : j.at("weights")) {
            cfg.weights.emplace_back(AgentId{w.at("from").get<std::string>()},
                                     AgentId{w.at("to").get<std::string>()},
                                     w.at("weight").get<double>());
        }
    }
    if (j.contains("nonresponders")) {
        for (const auto& n : j.at("nonresponders")) {
            cfg.nonresponders.push_back(AgentId{n.get<std::string>()});
        }
    }
    return cfg;
}

MediationConfig mediation_from_json(const ordered_json& j) {
    MediationConfig cfg;
    for (const auto& d : j.at("designers")) cfg.designers.push_back(AgentId{d.get<std::string>()});
    if (j.contains("actor")) cfg.actor = AgentId{j.at("actor").get<std::string>()};
    if (j.contains("proposals")) {
        for (const auto& p : j.at("proposals")) {
            cfg.proposals.push_back(ProposalSpec{AgentId{p.at("designer").get<std::string>()},
                                                 p.at("round").get<Round>(),
                                                 p.at("token").get<std::string>()});
        }
    }
    if (j.contains("nonresponders")) {
        for (const auto& n : j.at("nonresponders")) {
            cfg.nonresponders.push_back(AgentId{n.get<std::string>()});
        }
    }
    return cfg;
}

}  // namespace

std::string save_system(const SystemModel& model) {
    return system_to_json(model).dump(2) + "\n";
}

SystemModel load_system(const std::string& json_text) {
    return system_from_json(parse_json(json_text));
}

RunSpec load_run_spec(const std::string& json_text) {
    ordered_json j = parse_json(json_text);
    RunSpec spec;
    spec.scenario = j.value("scenario", std::string());
    spec.seed = j.value("seed", std::uint64_t{0});
    spec.steps = j.value("steps", Round{20});
    spec.obligation_timeout = j.value("timeout", Round{8});
    try {
        if (spec.scenario == "epidemic") {
            spec.epidemic = epidemic_from_json(j);
            spec.epidemic->seed = spec.seed;
        } else if (spec.scenario == "configuration") {
            spec.configuration = configuration_from_json(j);
        } else if (spec.scenario == "mediation") {
            spec.mediation = mediation_from_json(j);
        } else if (spec.scenario.empty()) {
            if (!j.contains("system")) {
                fail("config needs either a 'scenario' name or an inline 'system'");
            }
            spec.system = system_from_json(j.at("system"));
        } else {
            fail("unknown scenario '" + spec.scenario + "'");
        }
        if (j.contains("script")) {
            for (const auto& s : j.at("script")) {
                spec.script.push_back(ScriptedPercept{
                    s.at("round").get<Round>(), AgentId{s.at("agent").get<std::string>()},
                    Percept{s.at("key").get<std::string>(), scalar_from_json(s.at("value"))}});
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw SimError(Errc::parse_error, e.what());
    }
    return spec;
}

RunSpec load_run_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SimError(Errc::file_not_found, "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return load_run_spec(buffer.str());
}

World build_world(const RunSpec& spec) {
    World world;
    if (spec.epidemic) {
        world = build_epidemic(*spec.epidemic);
    } else if (spec.configuration) {
        world = build_configuration(*spec.configuration);
    } else if (spec.mediation) {
        world = build_mediation(*spec.mediation);
    } else if (spec.system) {
        world = make_world(*spec.system, spec.seed);
    } else {
        throw SimError(Errc::invalid_config, "run spec selects no scenario and no system");
    }
    world.seed = spec.seed;
    world.obligation_timeout = spec.obligation_timeout;
    for (const ScriptedPercept& s : spec.script) world.script.push_back(s);
    return world;
}

}  // namespace masim
