#include "masim/scenarios.hpp"

#include <algorithm>
#include <set>

#include "masim/error.hpp"
#include "masim/rng.hpp"

namespace masim {

namespace {

constexpr int kConsultType = 3;
constexpr int kReportType = 4;
constexpr int kAlertType = 5;
constexpr int kProposalType = 6;
constexpr int kInternalType = 7;

EventPattern message_pattern(std::optional<Performative> performative, std::optional<int> mtype,
                             std::optional<std::string> binder = std::nullopt) {
    EventPattern p;
    p.source = StimulusSource::message;
    p.performative = performative;
    p.mtype = mtype;
    p.binder = std::move(binder);
    return p;
}

EventPattern env_pattern(std::string key, std::optional<std::string> binder = std::nullopt) {
    EventPattern p;
    p.source = StimulusSource::environment;
    p.env_key = std::move(key);
    p.binder = std::move(binder);
    return p;
}

SendAction confirm_back(int mtype) {
    SendAction send;
    send.performative = Performative::confirm;
    send.receiver = ReceiverRef::reply_sender();
    send.mtype = mtype;
    send.payload = PayloadSpec{Payload::Kind::response, "ack", ValueExpr::lit(1.0)};
    send.reply = true;
    return send;
}

DecisionRule ack_rule(std::string id, Performative trigger, std::optional<int> trigger_mtype,
                      int reply_mtype) {
    DecisionRule rule;
    rule.id = std::move(id);
    rule.event = message_pattern(trigger, trigger_mtype);
    rule.condition = Condition::always();
    rule.actions.push_back(confirm_back(reply_mtype));
    rule.priority = 0;
    return rule;
}

void check(bool ok, const std::string& what) {
    if (!ok) throw SimError(Errc::invalid_config, what);
}

void place(World& world, const AgentId& id, GridPos pos, const std::string& state,
           bool contagious) {
    auto& env = world.agent_env[id];
    env["x"] = static_cast<double>(pos.x);
    env["y"] = static_cast<double>(pos.y);
    env["state"] = state;
    env["contagious"] = contagious;
}

struct EpidemicEnvModel : EnvModel {
    int width;
    int height;
    double infection_probability;
    int radius;

    EpidemicEnvModel(int w, int h, double p, int r)
        : width(w), height(h), infection_probability(p), radius(r) {}

    void apply(World& world, const std::vector<std::pair<AgentId, EnvironmentOpEffect>>& ops) override;
};

std::vector<AgentId> epidemic_phase(World& world, const std::set<AgentId>& movers, int width,
                                    int height, double p, int radius) {
    auto pos_of = [&world](const AgentId& id) {
        GridPos pos;
        pos.x = static_cast<int>(as_number(get_agent_env(world, id, "x", 0.0)));
        pos.y = static_cast<int>(as_number(get_agent_env(world, id, "y", 0.0)));
        return pos;
    };

    // carriers at the start of this phase; new infections join next round
    std::vector<AgentId> sources;
    std::vector<AgentId> healthy;
    for (const auto& [id, env] : world.agent_env) {
        auto contagious = env.find("contagious");
        if (contagious != env.end() && contagious->second == Scalar{true}) sources.push_back(id);
        auto state = env.find("state");
        if (state != env.end() && state->second == Scalar{std::string("healthy")}) {
            healthy.push_back(id);
        }
    }

    for (const AgentId& mover : movers) {
        GridPos pos = pos_of(mover);
        std::uint64_t draw = rng::derive(world.seed,
                                         "move/" + mover.id + "/" + std::to_string(world.round));
        int idx = static_cast<int>(draw % 9);
        int nx = std::clamp(pos.x + idx % 3 - 1, 0, width - 1);
        int ny = std::clamp(pos.y + idx / 3 - 1, 0, height - 1);
        set_agent_env(world, mover, "x", static_cast<double>(nx));
        set_agent_env(world, mover, "y", static_cast<double>(ny));
    }

    // one independent draw per (source, target) pair, canonical order
    std::vector<AgentId> infected;
    for (const AgentId& target : healthy) {
        GridPos tpos = pos_of(target);
        bool hit = false;
        for (const AgentId& source : sources) {
            GridPos spos = pos_of(source);
            int dist = std::max(std::abs(spos.x - tpos.x), std::abs(spos.y - tpos.y));
            if (dist > radius) continue;
            double u = rng::unit_double(rng::derive(
                world.seed, "infect/" + source.id + "/" + target.id + "/" +
                                std::to_string(world.round)));
            if (u < p) hit = true;
        }
        if (hit) infected.push_back(target);
    }
    for (const AgentId& target : infected) {
        set_agent_env(world, target, "state", std::string("infected"));
        set_agent_env(world, target, "contagious", true);
        queue_percept(world, target, Percept{"contaminated", true});
    }
    return infected;
}

void EpidemicEnvModel::apply(World& world,
                             const std::vector<std::pair<AgentId, EnvironmentOpEffect>>& ops) {
    std::set<AgentId> movers;
    for (const auto& [agent, op] : ops) {
        if (op.op == "move_random") {
            movers.insert(agent);
        } else {
            apply_env_op(world, agent, op);
        }
    }
    epidemic_phase(world, movers, width, height, infection_probability, radius);
    for (const auto& [id, env] : world.agent_env) {
        auto contagious = env.find("contagious");
        if (contagious != env.end() && contagious->second == Scalar{true}) {
            queue_percept(world, id, Percept{"tick", static_cast<double>(world.round + 1)});
        }
    }
}

AgentSpec make_authority(const AgentId& id, int threshold, int window,
                         const std::string& alert_community) {
    AgentSpec authority;
    authority.id = id;
    authority.level = 3;

    InterpretationRule count_case;
    count_case.trigger = message_pattern(Performative::inform, kReportType, "n");
    count_case.updates.emplace_back(
        "cases.{pkey}", ValueExpr::add(ValueExpr::knowledge_or("cases.{pkey}", 0.0),
                                       ValueExpr::lit(1.0)));
    count_case.updates.emplace_back(
        "cases_r.{round}", ValueExpr::add(ValueExpr::knowledge_or("cases_r.{round}", 0.0),
                                          ValueExpr::lit(1.0)));
    count_case.tag = "case_counted";
    authority.interpreter.push_back(std::move(count_case));

    DecisionRule declare;
    declare.id = "declare_epidemic";
    declare.priority = 1;
    declare.event = message_pattern(Performative::inform, kReportType);
    declare.condition = Condition::all_of(
        {Condition::compare(CompareOp::ge,
                            ValueExpr::recent_count("cases_r", window),
                            ValueExpr::lit(static_cast<double>(threshold))),
         Condition::compare(CompareOp::eq, ValueExpr::knowledge_or("alerted", 0.0),
                            ValueExpr::lit(0.0))});
    UpdateKnowledgeAction mark;
    mark.key = "alerted";
    mark.value = ValueExpr::lit(1.0);
    declare.actions.emplace_back(std::move(mark));
    DiffuseAction alert;
    alert.performative = Performative::diffuse;
    alert.community = alert_community;
    alert.mtype = kAlertType;
    alert.payload = PayloadSpec{Payload::Kind::assertion, "epidemic_alert", ValueExpr::lit(1.0)};
    declare.actions.emplace_back(std::move(alert));
    authority.kb.rules.push_back(std::move(declare));

    authority.kb.rules.push_back(
        ack_rule("ack_report", Performative::inform, kReportType, kReportType));
    return authority;
}

}  // namespace

World build_epidemic(const EpidemicConfig& cfg) {
    check(cfg.grid_width > 0 && cfg.grid_height > 0, "grid must be nonempty");
    check(cfg.infection_probability >= 0.0 && cfg.infection_probability <= 1.0,
          "infection probability outside [0,1]");
    check(cfg.proximity_radius >= 0, "proximity radius must be >= 0");
    check(cfg.detection_threshold >= 1, "detection threshold must be >= 1");
    check(cfg.detection_window >= 1, "detection window must be >= 1");
    check(!cfg.doctors.empty(), "at least one doctor required");
    check(!cfg.authority.empty(), "authority id required");
    auto in_grid = [&cfg](GridPos p) {
        return p.x >= 0 && p.x < cfg.grid_width && p.y >= 0 && p.y < cfg.grid_height;
    };

    std::map<AgentId, AgentSpec> agents;
    std::map<AgentId, Role> roles;

    for (const ContaminantSpec& c : cfg.contaminants) {
        check(in_grid(c.pos), "contaminant '" + c.id.id + "' outside grid");
        AgentSpec agent;
        agent.id = c.id;
        agent.level = 1;
        ReflexEntry move;
        move.event = env_pattern("tick");
        move.actions.emplace_back(EnvironmentOpAction{"move_random", {}});
        agent.reflexes.push_back(std::move(move));
        roles[c.id] = Role{"contaminant", 1};
        check(agents.emplace(c.id, std::move(agent)).second, "duplicate agent id " + c.id.id);
    }

    for (std::size_t i = 0; i < cfg.individuals.size(); ++i) {
        const IndividualSpec& ind = cfg.individuals[i];
        check(in_grid(ind.pos), "individual '" + ind.id.id + "' outside grid");
        const AgentId& doctor = cfg.doctors[i % cfg.doctors.size()].id;
        AgentSpec agent;
        agent.id = ind.id;
        agent.level = 1;

        ReflexEntry consult;
        consult.event = env_pattern("contaminated");
        UpdateKnowledgeAction become_patient;
        become_patient.key = "state";
        become_patient.value = ValueExpr::lit(std::string("patient"));
        consult.actions.emplace_back(std::move(become_patient));
        SendAction ask;
        ask.performative = Performative::ask;
        ask.receiver = ReceiverRef::fixed(doctor);
        ask.mtype = kConsultType;
        ask.payload = PayloadSpec{Payload::Kind::question, "consult", ValueExpr::lit(0.0)};
        consult.actions.emplace_back(std::move(ask));
        agent.reflexes.push_back(std::move(consult));

        ReflexEntry move;
        move.event = env_pattern("tick");
        move.actions.emplace_back(EnvironmentOpAction{"move_random", {}});
        agent.reflexes.push_back(std::move(move));

        agent.kb.acquaintances.push_back(doctor);
        roles[ind.id] = Role{"individual", 1};
        check(agents.emplace(ind.id, std::move(agent)).second, "duplicate agent id " + ind.id.id);
    }

    Community medical;
    medical.name = "medical";
    for (const DoctorSpec& d : cfg.doctors) {
        AgentSpec doctor;
        doctor.id = d.id;
        doctor.level = 3;

        InterpretationRule seen;
        seen.trigger = message_pattern(Performative::ask, kConsultType);
        seen.updates.emplace_back("cases_seen",
                                  ValueExpr::add(ValueExpr::knowledge_or("cases_seen", 0.0),
                                                 ValueExpr::lit(1.0)));
        seen.tag = "case_seen";
        doctor.interpreter.push_back(std::move(seen));

        DecisionRule consult;
        consult.id = "consult_and_report";
        consult.priority = 1;
        consult.event = message_pattern(Performative::ask, kConsultType);
        consult.condition = Condition::always();
        SendAction accept;
        accept.performative = Performative::accept;
        accept.receiver = ReceiverRef::reply_sender();
        accept.mtype = kConsultType;
        accept.payload =
            PayloadSpec{Payload::Kind::response, "consult", ValueExpr::lit(std::string("seen"))};
        accept.reply = true;
        consult.actions.emplace_back(std::move(accept));
        SendAction report;
        report.performative = Performative::inform;
        report.receiver = ReceiverRef::fixed(cfg.authority);
        report.mtype = kReportType;
        report.payload = PayloadSpec{Payload::Kind::assertion, d.region, ValueExpr::lit(1.0)};
        consult.actions.emplace_back(std::move(report));
        doctor.kb.rules.push_back(std::move(consult));

        doctor.kb.rules.push_back(
            ack_rule("ack_alert", Performative::diffuse, kAlertType, kAlertType));
        doctor.kb.facts["region"] = d.region;
        roles[d.id] = Role{"doctor", 3};
        medical.members.insert(d.id);
        check(agents.emplace(d.id, std::move(doctor)).second, "duplicate agent id " + d.id.id);
    }

    AgentSpec authority =
        make_authority(cfg.authority, cfg.detection_threshold, cfg.detection_window, "medical");
    roles[cfg.authority] = Role{"authority", 3};
    medical.members.insert(cfg.authority);
    check(agents.emplace(cfg.authority, std::move(authority)).second,
          "duplicate agent id " + cfg.authority.id);

    SystemModel system = build_system(std::move(agents), {}, std::move(roles), {medical}, {});
    World world = make_world(std::move(system), cfg.seed);
    world.env_model = std::make_shared<EpidemicEnvModel>(
        cfg.grid_width, cfg.grid_height, cfg.infection_probability, cfg.proximity_radius);

    for (const ContaminantSpec& c : cfg.contaminants) {
        place(world, c.id, c.pos, "carrier", true);
        world.agent_env[c.id]["disease"] = c.disease;
        queue_percept(world, c.id, Percept{"tick", 0.0});
    }
    for (const IndividualSpec& ind : cfg.individuals) {
        place(world, ind.id, ind.pos, "healthy", false);
    }
    return world;
}

std::vector<AgentId> infection_step(World& world) {
    auto* model = dynamic_cast<EpidemicEnvModel*>(world.env_model.get());
    if (!model) {
        throw SimError(Errc::runtime_error, "world has no epidemic environment");
    }
    std::set<AgentId> movers;
    for (const AgentId& id : contaminated_agents(world)) movers.insert(id);
    return epidemic_phase(world, movers, model->width, model->height,
                          model->infection_probability, model->radius);
}

std::vector<AgentId> contaminated_agents(const World& world) {
    std::vector<AgentId> out;
    for (const auto& [id, env] : world.agent_env) {
        auto it = env.find("contagious");
        if (it != env.end() && it->second == Scalar{true}) out.push_back(id);
    }
    return out;
}

std::vector<AgentId> infected_individuals(const World& world) {
    std::vector<AgentId> out;
    for (const auto& [id, env] : world.agent_env) {
        auto it = env.find("state");
        if (it != env.end() && it->second == Scalar{std::string("infected")}) out.push_back(id);
    }
    return out;
}

World build_configuration(const ConfigurationConfig& cfg) {
    check(!cfg.requirements.empty(), "at least one requirement agent required");
    check(!cfg.functions.empty(), "at least one function agent required");
    check(!cfg.solutions.empty(), "at least one solution agent required");
    check(!cfg.constraints.empty(), "at least one constraint agent required");
    check(cfg.threshold >= 0.0 && cfg.threshold <= 1.0, "threshold outside [0,1]");

    std::set<AgentId> nonresponders(cfg.nonresponders.begin(), cfg.nonresponders.end());
    std::map<AgentId, AgentSpec> agents;
    std::map<AgentId, Role> roles;
    Community community_r{"R", {}};
    Community community_f{"F", {}};
    Community community_s{"S", {}};
    Community community_c{"C", {}};

    std::set<AgentId> functions(cfg.functions.begin(), cfg.functions.end());
    std::vector<ScriptedPercept> script;

    for (const RequirementSpec& req : cfg.requirements) {
        check(req.value >= 0.0 && req.value <= 1.0,
              "requirement '" + req.id.id + "' value outside [0,1]");
        check(functions.count(req.target),
              "requirement '" + req.id.id + "' targets unknown function '" + req.target.id + "'");
        AgentSpec agent;
        agent.id = req.id;
        agent.level = 2;
        DecisionRule seed_rule;
        seed_rule.id = "announce_value";
        seed_rule.event = env_pattern("start", "V");
        seed_rule.condition = Condition::always();
        SendAction inform;
        inform.performative = Performative::inform;
        inform.receiver = ReceiverRef::fixed(req.target);
        inform.mtype = cfg.value_mtype;
        inform.payload = PayloadSpec{Payload::Kind::value, "", ValueExpr::var("V")};
        seed_rule.actions.emplace_back(std::move(inform));
        agent.kb.rules.push_back(std::move(seed_rule));
        agent.kb.facts["value"] = req.value;
        roles[req.id] = Role{"requirement", 2};
        community_r.members.insert(req.id);
        check(agents.emplace(req.id, std::move(agent)).second, "duplicate agent id " + req.id.id);
        script.push_back(ScriptedPercept{0, req.id, Percept{"start", req.value}});
    }

    for (const AgentId& id : cfg.functions) {
        AgentSpec agent;
        agent.id = id;
        agent.level = 2;
        DecisionRule delta1;
        delta1.id = "relay_value";
        delta1.priority = 1;
        delta1.event = message_pattern(Performative::inform, cfg.value_mtype, "V");
        delta1.condition =
            Condition::compare(CompareOp::gt, ValueExpr::var("V"), ValueExpr::lit(cfg.threshold));
        DiffuseAction relay;
        relay.performative = Performative::diffuse;
        relay.community = "F";
        relay.mtype = cfg.value_mtype;
        relay.payload = PayloadSpec{Payload::Kind::value, "", ValueExpr::var("V")};
        delta1.actions.emplace_back(std::move(relay));
        agent.kb.rules.push_back(std::move(delta1));
        if (!nonresponders.count(id)) {
            agent.kb.rules.push_back(
                ack_rule("ack_value", Performative::inform, cfg.value_mtype, cfg.value_mtype));
            agent.kb.rules.push_back(
                ack_rule("ack_diffusion", Performative::diffuse, cfg.value_mtype, cfg.value_mtype));
        }
        roles[id] = Role{"function", 2};
        community_f.members.insert(id);
        check(agents.emplace(id, std::move(agent)).second, "duplicate agent id " + id.id);
    }

    auto passive_agent = [&](const AgentId& id, const char* role_name, Community& community) {
        AgentSpec agent;
        agent.id = id;
        agent.level = 2;
        agent.kb.rules.push_back(ack_rule("ack_inform", Performative::inform, std::nullopt,
                                          cfg.value_mtype));
        agent.kb.rules.push_back(ack_rule("ack_diffusion", Performative::diffuse, std::nullopt,
                                          cfg.value_mtype));
        roles[id] = Role{role_name, 2};
        community.members.insert(id);
        check(agents.emplace(id, std::move(agent)).second, "duplicate agent id " + id.id);
    };
    for (const AgentId& id : cfg.solutions) passive_agent(id, "solution", community_s);
    for (const AgentId& id : cfg.constraints) passive_agent(id, "constraint", community_c);

    AffinityNetwork affinity;
    affinity.inhibition_threshold = cfg.inhibition_threshold;
    for (const auto& [from, to, weight] : cfg.weights) {
        set_affinity(affinity, from, to, weight);
    }

    SystemModel system = build_system(
        std::move(agents), {}, std::move(roles),
        {community_r, community_f, community_s, community_c}, std::move(affinity));
    World world = make_world(std::move(system), 0);
    world.script = std::move(script);
    return world;
}

World build_mediation(const MediationConfig& cfg) {
    check(cfg.designers.size() >= 2, "mediation needs at least 2 designer agents");
    check(!cfg.actor.empty(), "actor id required");

    std::set<AgentId> nonresponders(cfg.nonresponders.begin(), cfg.nonresponders.end());
    std::map<AgentId, AgentSpec> agents;
    std::map<AgentId, Role> roles;

    for (const AgentId& id : cfg.designers) {
        AgentSpec designer;
        designer.id = id;
        designer.level = 1;
        ReflexEntry propose;
        propose.event = env_pattern("proposal", "P");
        SendAction send;
        send.performative = Performative::propose;
        send.receiver = ReceiverRef::fixed(cfg.actor);
        send.mtype = kProposalType;
        send.payload = PayloadSpec{Payload::Kind::task_ref, "", ValueExpr::var("P")};
        propose.actions.emplace_back(std::move(send));
        designer.reflexes.push_back(std::move(propose));
        roles[id] = Role{"designer", 1};
        check(agents.emplace(id, std::move(designer)).second, "duplicate agent id " + id.id);
    }

    auto member_id = [&cfg](CoopRole role) { return AgentId{cfg.actor.id + "_" + to_string(role)}; };

    auto forward_rule = [](std::string id, std::optional<Performative> trigger,
                           const AgentId& next) {
        DecisionRule rule;
        rule.id = std::move(id);
        rule.event = message_pattern(trigger, std::nullopt, "P");
        rule.condition = Condition::always();
        SendAction send;
        send.performative = Performative::inform;
        send.receiver = ReceiverRef::fixed(next);
        send.mtype = kInternalType;
        send.payload = PayloadSpec{Payload::Kind::assertion, "origin", ValueExpr::var("sender")};
        send.reply = true;
        rule.actions.emplace_back(std::move(send));
        return rule;
    };

    auto routine_member = [&](CoopRole role, DecisionRule rule) {
        AgentSpec member;
        member.id = member_id(role);
        member.level = 2;
        member.kb.rules.push_back(std::move(rule));
        roles[member.id] = Role{"member", 2};
        check(agents.emplace(member.id, std::move(member)).second,
              "duplicate agent id " + member.id.id);
    };
    auto tap_member = [&](CoopRole role) {
        AgentSpec member;
        member.id = member_id(role);
        member.level = 1;
        roles[member.id] = Role{"member", 1};
        check(agents.emplace(member.id, std::move(member)).second,
              "duplicate agent id " + member.id.id);
    };

    routine_member(CoopRole::observer,
                   forward_rule("observe_proposal", Performative::propose,
                                member_id(CoopRole::knowledge)));
    // knowledge and control pass the interpreted origin down the chain
    {
        DecisionRule rule;
        rule.id = "interpret_observation";
        rule.event = message_pattern(Performative::inform, kInternalType, "O");
        rule.condition = Condition::always();
        SendAction send;
        send.performative = Performative::inform;
        send.receiver = ReceiverRef::fixed(member_id(CoopRole::control));
        send.mtype = kInternalType;
        send.payload = PayloadSpec{Payload::Kind::assertion, "origin", ValueExpr::var("O")};
        send.reply = true;
        rule.actions.emplace_back(std::move(send));
        routine_member(CoopRole::knowledge, std::move(rule));
    }
    {
        DecisionRule rule;
        rule.id = "decide_reply";
        rule.event = message_pattern(Performative::inform, kInternalType, "O");
        rule.condition = Condition::always();
        SendAction send;
        send.performative = Performative::inform;
        send.receiver = ReceiverRef::fixed(member_id(CoopRole::communication));
        send.mtype = kInternalType;
        send.payload = PayloadSpec{Payload::Kind::assertion, "origin", ValueExpr::var("O")};
        send.reply = true;
        rule.actions.emplace_back(std::move(send));
        routine_member(CoopRole::control, std::move(rule));
    }
    {
        DecisionRule rule;
        rule.id = "answer_designer";
        rule.event = message_pattern(Performative::inform, kInternalType, "O");
        rule.condition = Condition::always();
        if (nonresponders.count(cfg.actor)) {
            UpdateKnowledgeAction swallow;
            swallow.key = "swallowed";
            swallow.value = ValueExpr::add(ValueExpr::knowledge_or("swallowed", 0.0),
                                           ValueExpr::lit(1.0));
            rule.actions.emplace_back(std::move(swallow));
        } else {
            SendAction send;
            send.performative = Performative::confirm;
            send.receiver = ReceiverRef::var("O");
            send.mtype = kProposalType;
            send.payload = PayloadSpec{Payload::Kind::response, "ack", ValueExpr::lit(1.0)};
            send.reply = true;
            rule.actions.emplace_back(std::move(send));
        }
        routine_member(CoopRole::communication, std::move(rule));
    }
    tap_member(CoopRole::monitoring);
    tap_member(CoopRole::memorization);

    AgentSpec actor;
    actor.id = cfg.actor;
    actor.level = 4;
    for (CoopRole role : kAllCoopRoles) actor.members[role] = member_id(role);
    roles[cfg.actor] = Role{"mediator", 4};
    check(agents.emplace(cfg.actor, std::move(actor)).second, "duplicate agent id " + cfg.actor.id);

    SystemModel system = build_system(std::move(agents), {}, std::move(roles), {}, {});
    World world = make_world(std::move(system), 0);
    for (const ProposalSpec& proposal : cfg.proposals) {
        check(world.system.agents.count(proposal.designer),
              "proposal names unknown designer '" + proposal.designer.id + "'");
        check(proposal.round >= 0, "proposal round must be >= 0");
        world.script.push_back(
            ScriptedPercept{proposal.round, proposal.designer, Percept{"proposal", proposal.token}});
    }
    return world;
}

World build_detection_harness(int threshold, int window, const std::vector<Round>& report_rounds) {
    check(threshold >= 1, "detection threshold must be >= 1");
    check(window >= 1, "detection window must be >= 1");

    std::map<AgentId, AgentSpec> agents;
    std::map<AgentId, Role> roles;
    AgentId reporter{"reporter"};
    AgentId authority{"authority"};

    AgentSpec rep;
    rep.id = reporter;
    rep.level = 1;
    ReflexEntry report;
    report.event = env_pattern("report");
    SendAction send;
    send.performative = Performative::inform;
    send.receiver = ReceiverRef::fixed(authority);
    send.mtype = kReportType;
    send.payload = PayloadSpec{Payload::Kind::assertion, "north", ValueExpr::lit(1.0)};
    report.actions.emplace_back(std::move(send));
    rep.reflexes.push_back(std::move(report));
    ReflexEntry ack;
    ack.event = message_pattern(Performative::diffuse, std::nullopt);
    ack.actions.emplace_back(confirm_back(kAlertType));
    rep.reflexes.push_back(std::move(ack));
    roles[reporter] = Role{"doctor", 1};
    agents.emplace(reporter, std::move(rep));

    agents.emplace(authority, make_authority(authority, threshold, window, "medical"));
    roles[authority] = Role{"authority", 3};

    Community medical{"medical", {reporter, authority}};
    SystemModel system = build_system(std::move(agents), {}, std::move(roles), {medical}, {});
    World world = make_world(std::move(system), 0);
    for (Round r : report_rounds) {
        check(r >= 1, "report rounds must be >= 1 (delivery takes one round)");
        world.script.push_back(ScriptedPercept{r - 1, reporter, Percept{"report", 1.0}});
    }
    return world;
}

}  // namespace masim
