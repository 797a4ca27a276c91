// Acceptance suite. Runs each shipped criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exits nonzero if any fail.
//
// Usage: masim_acceptance <path-to-masim-cli> <configs-dir>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "epidemic_oracle.hpp"
#include "masim/behaviour.hpp"
#include "masim/config.hpp"
#include "masim/rng.hpp"
#include "masim/scenarios.hpp"

using namespace masim;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& name, bool pass, const std::string& detail = "") {
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << criterion << ": " << name;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

DecisionRule delta1_rule() {
    DecisionRule rule;
    rule.id = "delta1";
    rule.event.performative = Performative::inform;
    rule.event.mtype = 2;
    rule.event.binder = "V";
    rule.condition = Condition::compare(CompareOp::gt, ValueExpr::var("V"), ValueExpr::lit(0.4));
    DiffuseAction diffuse;
    diffuse.community = "F";
    diffuse.mtype = 2;
    diffuse.payload = PayloadSpec{Payload::Kind::value, "", ValueExpr::var("V")};
    rule.actions.emplace_back(std::move(diffuse));
    return rule;
}

// 1. The worked rule fires iff V > 0.4, across the whole 0.05 sweep.
void criterion_delta1() {
    auto start = std::chrono::steady_clock::now();
    AgentSpec agent;
    agent.id = "f1";
    agent.level = 2;
    agent.kb.rules.push_back(delta1_rule());

    int correct = 0;
    for (int i = 0; i <= 20; ++i) {
        double v = i / 20.0;
        CommunicationAct act = make_act(Performative::inform, "r1", "f1", MessageType{2, ""},
                                        value_payload(v), "c" + std::to_string(i));
        auto result = step_routine(agent, {Stimulus{act}}, 0);
        bool diffused = !result.effects.empty();
        if (diffused == (v > 0.4)) ++correct;
    }
    double elapsed = seconds_since(start);
    report(1, "threshold rule fires iff V > 0.4 over the sweep",
           correct == 21 && elapsed < 1.0,
           std::to_string(correct) + "/21 cases, " + std::to_string(elapsed) + "s");
}

std::int64_t delivered_count(const Trace& trace) {
    std::int64_t n = 0;
    for (const TraceRecord& r : trace.records) {
        if (std::holds_alternative<DeliveredAct>(r)) ++n;
    }
    return n;
}

// 2. One above-threshold inform produces exactly 2|F| delivered acts.
void criterion_handshake() {
    auto start = std::chrono::steady_clock::now();
    bool pass = true;
    std::string detail;
    for (int size : {2, 3, 5, 8}) {
        ConfigurationConfig cfg;
        cfg.requirements = {RequirementSpec{"r1", 0.6, "f1"}};
        for (int i = 1; i <= size; ++i) cfg.functions.push_back(AgentId{"f" + std::to_string(i)});
        cfg.solutions = {"s1"};
        cfg.constraints = {"k1"};
        World world = build_configuration(cfg);
        run(world, 10);
        std::int64_t got = delivered_count(world.trace);
        detail += "|F|=" + std::to_string(size) + ":" + std::to_string(got) + " ";
        if (got != 2 * size) pass = false;
        if (!world.tracker.open_obligations().empty()) pass = false;
    }
    double elapsed = seconds_since(start);
    report(2, "diffusion handshake delivers 2*|F| acts for |F| in {2,3,5,8}",
           pass && elapsed < 1.0, detail + std::to_string(elapsed) + "s");
}

// 3. Clean scenarios settle their obligations; an injected non-responder is
//    detected through the CLI with exit code 2.
void criterion_conformance(const std::string& cli, const std::string& configs_dir) {
    ConfigurationConfig ccfg;
    ccfg.requirements = {RequirementSpec{"r1", 0.6, "f1"}};
    ccfg.functions = {"f1", "f2", "f3"};
    ccfg.solutions = {"s1"};
    ccfg.constraints = {"k1"};
    World configuration = build_configuration(ccfg);
    run(configuration, 12);
    bool config_clean = !has_protocol_failures(configuration) &&
                        configuration.tracker.open_obligations().empty();

    MediationConfig mcfg;
    mcfg.designers = {"designer_a", "designer_b"};
    mcfg.proposals = {ProposalSpec{"designer_a", 0, "prop-1"}};
    World mediation = build_mediation(mcfg);
    run(mediation, 8);
    bool mediation_clean =
        !has_protocol_failures(mediation) && mediation.tracker.open_obligations().empty();

    // CLI leg: shipped config passes conformance, injected non-responder exits 2
    namespace fs = std::filesystem;
    fs::path tmp = fs::temp_directory_path() / "masim_acceptance";
    fs::create_directories(tmp);
    fs::path bad_config = tmp / "nonresponder.json";
    {
        std::ofstream out(bad_config);
        out << R"({"scenario": "configuration",
                   "requirements": [{"id": "r1", "value": 0.6, "target": "f1"}],
                   "functions": ["f1", "f2", "f3"], "solutions": ["s1"],
                   "constraints": ["k1"], "nonresponders": ["f2"], "steps": 15})";
    }
    auto exit_code = [](int status) {
#ifdef _WIN32
        return status;
#else
        return WEXITSTATUS(status);
#endif
    };
    std::string quiet = " > /dev/null 2>&1";
    int good = std::system((cli + " run --config " + configs_dir + "/configuration.json" +
                            " --conformance --out " + (tmp / "good.jsonl").string() + quiet)
                               .c_str());
    int bad = std::system((cli + " run --config " + bad_config.string() + " --conformance --out " +
                           (tmp / "bad.jsonl").string() + quiet)
                              .c_str());

    bool pass = config_clean && mediation_clean && exit_code(good) == 0 && exit_code(bad) == 2;
    report(3, "scenarios settle obligations; a non-responder exits with code 2", pass,
           "clean=" + std::to_string(config_clean) + "," + std::to_string(mediation_clean) +
               " cli_exit=" + std::to_string(exit_code(good)) + "," +
               std::to_string(exit_code(bad)));
}

EpidemicConfig determinism_config(std::uint64_t seed) {
    EpidemicConfig cfg;
    cfg.grid_width = 10;
    cfg.grid_height = 10;
    cfg.contaminants = {ContaminantSpec{"c1", {2, 2}, "flu"},
                        ContaminantSpec{"c2", {7, 7}, "flu"}};
    cfg.individuals = {IndividualSpec{"i1", {2, 3}}, IndividualSpec{"i2", {4, 4}},
                       IndividualSpec{"i3", {6, 7}}, IndividualSpec{"i4", {0, 9}},
                       IndividualSpec{"i5", {9, 0}}};
    cfg.doctors = {DoctorSpec{"d1", "north"}, DoctorSpec{"d2", "south"}};
    cfg.authority = "a1";
    cfg.infection_probability = 0.5;
    cfg.proximity_radius = 1;
    cfg.detection_threshold = 3;
    cfg.detection_window = 5;
    cfg.seed = seed;
    return cfg;
}

// 4. 1000 rounds on a 10x10 grid with 10 agents: identical digests, < 10 s.
void criterion_determinism() {
    auto run_once = [](std::string& digest) {
        World world = build_epidemic(determinism_config(424242));
        run(world, 1000);
        digest = trace_digest(world.trace);
    };
    std::string first, second;
    auto start = std::chrono::steady_clock::now();
    run_once(first);
    double first_elapsed = seconds_since(start);
    start = std::chrono::steady_clock::now();
    run_once(second);
    double second_elapsed = seconds_since(start);

    bool pass = first == second && first_elapsed < 10.0 && second_elapsed < 10.0;
    report(4, "1000-round epidemic run is digest-identical under one seed", pass,
           first + " vs " + second + ", " + std::to_string(first_elapsed) + "s/" +
               std::to_string(second_elapsed) + "s");
}

// 5. Infected sets match the straight-line oracle on every round of 100 seeds.
void criterion_oracle() {
    auto start = std::chrono::steady_clock::now();
    int matching_seeds = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        EpidemicConfig cfg;
        cfg.grid_width = 5;
        cfg.grid_height = 5;
        cfg.contaminants = {ContaminantSpec{"c1", {2, 2}, "flu"}};
        cfg.individuals = {IndividualSpec{"i1", {2, 3}}, IndividualSpec{"i2", {4, 4}},
                           IndividualSpec{"i3", {0, 1}}};
        cfg.doctors = {DoctorSpec{"d1", "north"}};
        cfg.authority = "a1";
        cfg.infection_probability = 0.5;
        cfg.proximity_radius = 1;
        cfg.seed = seed;

        World world = build_epidemic(cfg);
        epidemic_oracle::Model oracle;
        oracle.width = 5;
        oracle.height = 5;
        oracle.p = 0.5;
        oracle.radius = 1;
        oracle.seed = seed;
        oracle.add_contaminant("c1", 2, 2);
        oracle.add_individual("i1", 2, 3);
        oracle.add_individual("i2", 4, 4);
        oracle.add_individual("i3", 0, 1);

        bool all_rounds_equal = true;
        for (int round = 0; round < 20; ++round) {
            schedule_round(world);
            oracle.step();
            std::set<std::string> got;
            for (const AgentId& id : infected_individuals(world)) got.insert(id.id);
            if (got != oracle.infected_set()) all_rounds_equal = false;
        }
        if (all_rounds_equal) ++matching_seeds;
    }
    double elapsed = seconds_since(start);
    report(5, "infected-set-per-round equals the brute-force oracle on 100 seeds",
           matching_seeds == 100 && elapsed < 30.0,
           std::to_string(matching_seeds) + "/100 seeds, " + std::to_string(elapsed) + "s");
}

// 6. A reflex map and its rule transcription act identically on an
//    exhaustively enumerated stimulus set.
void criterion_level_equivalence() {
    const Performative performatives[] = {Performative::inform, Performative::ask,
                                          Performative::propose, Performative::order};
    AgentSpec reactive;
    reactive.id = "x";
    reactive.level = 1;
    AgentSpec routine;
    routine.id = "x";
    routine.level = 2;

    int seq = 0;
    for (Performative p : performatives) {
        ReflexEntry reflex;
        reflex.event.performative = p;
        reflex.event.binder = "V";
        SendAction send;
        send.performative = Performative::answer;
        send.receiver = ReceiverRef::fixed(AgentId{"sink"});
        send.mtype = 9;
        send.payload = PayloadSpec{Payload::Kind::value, "", ValueExpr::var("V")};
        reflex.actions.emplace_back(send);
        reactive.reflexes.push_back(reflex);

        DecisionRule rule;
        rule.id = "r" + std::to_string(seq++);
        rule.event = reflex.event;
        rule.condition = Condition::always();
        rule.actions = reflex.actions;
        routine.kb.rules.push_back(rule);
    }

    std::vector<Stimulus> stimuli;
    int conv = 0;
    for (Performative p : performatives) {
        for (double v : {0.0, 0.25, 0.5, 1.0}) {
            stimuli.emplace_back(make_act(p, "peer", "x", MessageType{1, ""}, value_payload(v),
                                          "c" + std::to_string(conv++)));
        }
    }

    bool pass = stimuli.size() == 16;
    for (const Stimulus& stimulus : stimuli) {
        auto a = step_reactive(reactive, {stimulus}, 0);
        auto b = step_routine(routine, {stimulus}, 0);
        if (!(a.effects == b.effects)) pass = false;
    }
    auto a_all = step_reactive(reactive, stimuli, 1);
    auto b_all = step_routine(routine, stimuli, 1);
    if (!(a_all.effects == b_all.effects)) pass = false;

    report(6, "reactive and routine encodings produce identical effect sequences", pass,
           std::to_string(stimuli.size()) + " stimuli");
}

// 7. Sliding-window detection: alert exactly at the oracle-computed round,
//    and never without threshold support.
void criterion_detection() {
    auto alert_round = [](World& world) {
        Round found = -1;
        for (const TraceRecord& r : world.trace.records) {
            if (const auto* kw = std::get_if<KnowledgeWriteRecord>(&r)) {
                if (kw->agent == AgentId{"authority"} && kw->key == "alerted" && found < 0) {
                    found = kw->round;
                }
            }
        }
        return found;
    };

    // oracle: first report round whose trailing 5-round window holds 3 reports
    auto oracle_alert = [](const std::vector<Round>& reports, int k, int w) {
        for (Round now : reports) {
            int in_window = 0;
            for (Round r : reports) {
                if (r > now - w && r <= now) ++in_window;
            }
            if (in_window >= k) return now;
        }
        return Round{-1};
    };

    World firing = build_detection_harness(3, 5, {1, 2, 4});
    run(firing, 12);
    Round expected = oracle_alert({1, 2, 4}, 3, 5);
    Round got = alert_round(firing);

    World quiet = build_detection_harness(3, 5, {1, 2, 9});
    run(quiet, 16);
    Round none = alert_round(quiet);

    bool pass = expected == 4 && got == expected && none == -1 &&
                !has_protocol_failures(firing) && !has_protocol_failures(quiet);
    report(7, "alert fires in the third report's interpretation round and only then", pass,
           "alert@" + std::to_string(got) + " expected@" + std::to_string(expected) +
               " quiet=" + std::to_string(none));
}

// 8. Affinity weights stay in [0,1] under 10,000 random reinforcements, and
//    diffusion delivery shrinks monotonically with the inhibition threshold.
void criterion_organization() {
    AffinityNetwork net;
    const AgentId ids[] = {"a", "b", "c", "d", "e"};
    std::uint64_t state = 31337;
    bool in_range = true;
    for (int i = 0; i < 10000; ++i) {
        std::uint64_t r = rng::splitmix64_next(state);
        const AgentId& from = ids[r % 5];
        const AgentId& to = ids[(r >> 8) % 5];
        if (from == to) continue;
        reinforce(net, from, to, (r >> 16) % 2 ? Outcome::success : Outcome::failure);
    }
    for (const auto& [pair, w] : net.weights) {
        if (w < 0.0 || w > 1.0) in_range = false;
    }

    Community community{"F", {}};
    for (int i = 1; i <= 8; ++i) community.members.insert(AgentId{"f" + std::to_string(i)});
    AffinityNetwork gates;
    std::uint64_t wstate = 99;
    for (const AgentId& member : community.members) {
        if (member == AgentId{"f1"}) continue;
        set_affinity(gates, "f1", member, rng::unit_double(rng::splitmix64_next(wstate)));
    }
    CommunicationAct act_template;
    act_template.performative = Performative::diffuse;
    act_template.sender = "f1";
    act_template.mtype = MessageType{2, ""};
    act_template.payload = value_payload(0.6);
    act_template.conversation = "d";

    bool monotone = true;
    std::size_t previous = community.members.size();
    for (double threshold = 0.0; threshold < 1.0; threshold += 0.05) {
        gates.inhibition_threshold = threshold;
        std::size_t count = diffuse("f1", community, act_template, gates).size();
        if (count > previous) monotone = false;
        previous = count;
    }

    report(8, "10k reinforcements stay in [0,1]; delivery is monotone in the threshold",
           in_range && monotone);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: masim_acceptance <masim-cli> <configs-dir>\n";
        return 2;
    }
    const std::string cli = argv[1];
    const std::string configs_dir = argv[2];

    criterion_delta1();
    criterion_handshake();
    criterion_conformance(cli, configs_dir);
    criterion_determinism();
    criterion_oracle();
    criterion_level_equivalence();
    criterion_detection();
    criterion_organization();

    if (g_failures > 0) {
        std::cout << g_failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all criteria passed" << std::endl;
    return 0;
}
