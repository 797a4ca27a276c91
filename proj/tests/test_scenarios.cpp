#include <doctest.h>

#include <set>

#include "epidemic_oracle.hpp"
#include "helpers.hpp"
#include "masim/scenarios.hpp"

using namespace masim;
using namespace masim::testing;

namespace {

EpidemicConfig small_epidemic(std::uint64_t seed) {
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
    cfg.detection_threshold = 3;
    cfg.detection_window = 5;
    cfg.seed = seed;
    return cfg;
}

epidemic_oracle::Model oracle_for(const EpidemicConfig& cfg) {
    epidemic_oracle::Model model;
    model.width = cfg.grid_width;
    model.height = cfg.grid_height;
    model.p = cfg.infection_probability;
    model.radius = cfg.proximity_radius;
    model.seed = cfg.seed;
    for (const ContaminantSpec& c : cfg.contaminants) {
        model.add_contaminant(c.id.id, c.pos.x, c.pos.y);
    }
    for (const IndividualSpec& i : cfg.individuals) {
        model.add_individual(i.id.id, i.pos.x, i.pos.y);
    }
    return model;
}

std::set<std::string> framework_infected(const World& world) {
    std::set<std::string> out;
    for (const AgentId& id : infected_individuals(world)) out.insert(id.id);
    return out;
}

std::vector<const DeliveredAct*> delivered_acts(const Trace& trace) {
    std::vector<const DeliveredAct*> out;
    for (const TraceRecord& r : trace.records) {
        if (const auto* act = std::get_if<DeliveredAct>(&r)) out.push_back(act);
    }
    return out;
}

}  // namespace

TEST_CASE("build_epidemic assembles the configured population") {
    EpidemicConfig cfg = small_epidemic(1);
    cfg.individuals.resize(2);
    World world = build_epidemic(cfg);
    CHECK(world.system.agents.size() == 5);  // 1 contaminant + 2 individuals + doctor + authority
    CHECK(world.system.find_community("medical") != nullptr);
    CHECK(world.system.agents.at("a1").level == 3);
    CHECK(get_agent_env(world, "c1", "state", 0.0) == Scalar{std::string("carrier")});
    CHECK(get_agent_env(world, "i1", "state", 0.0) == Scalar{std::string("healthy")});
}

TEST_CASE("build_epidemic rejects invalid configurations") {
    EpidemicConfig off_grid = small_epidemic(1);
    off_grid.contaminants[0].pos = {9, 9};
    CHECK_THROWS_AS(build_epidemic(off_grid), SimError);

    EpidemicConfig no_threshold = small_epidemic(1);
    no_threshold.detection_threshold = 0;
    CHECK_THROWS_AS(build_epidemic(no_threshold), SimError);

    EpidemicConfig bad_p = small_epidemic(1);
    bad_p.infection_probability = 1.5;
    CHECK_THROWS_AS(build_epidemic(bad_p), SimError);
}

TEST_CASE("zero infection probability means zero infections") {
    EpidemicConfig cfg = small_epidemic(3);
    cfg.infection_probability = 0.0;
    World world = build_epidemic(cfg);
    run(world, 30);
    CHECK(framework_infected(world).empty());
}

TEST_CASE("infection_step respects the proximity radius") {
    // seed 4 makes the contaminant stay on (2,2): (2,3) is at Chebyshev 1,
    // (4,4) at Chebyshev 2
    EpidemicConfig cfg = small_epidemic(4);
    cfg.individuals = {IndividualSpec{"i1", {2, 3}}, IndividualSpec{"i2", {4, 4}}};
    cfg.infection_probability = 1.0;

    SUBCASE("certain infection inside the radius only") {
        World world = build_epidemic(cfg);
        auto infected = infection_step(world);
        REQUIRE(infected.size() == 1);
        CHECK(infected[0] == AgentId{"i1"});
        CHECK(get_agent_env(world, "i1", "state", 0.0) == Scalar{std::string("infected")});
        CHECK(get_agent_env(world, "i2", "state", 0.0) == Scalar{std::string("healthy")});
    }
    SUBCASE("nobody in radius") {
        cfg.individuals = {IndividualSpec{"i2", {4, 4}}};
        World world = build_epidemic(cfg);
        CHECK(infection_step(world).empty());
    }
    SUBCASE("draws replay against the reference model") {
        cfg.infection_probability = 0.5;
        cfg.individuals.push_back(IndividualSpec{"i3", {1, 2}});
        World world = build_epidemic(cfg);
        epidemic_oracle::Model oracle = oracle_for(cfg);
        auto infected = infection_step(world);
        oracle.step();
        std::set<std::string> got;
        for (const AgentId& id : infected) got.insert(id.id);
        CHECK(got == oracle.infected_set());
    }
}

TEST_CASE("framework infections equal the brute-force oracle per round") {
    for (std::uint64_t seed : {1ull, 7ull, 13ull, 40ull, 97ull, 123ull, 500ull, 777ull, 901ull,
                               4242ull}) {
        EpidemicConfig cfg = small_epidemic(seed);
        World world = build_epidemic(cfg);
        epidemic_oracle::Model oracle = oracle_for(cfg);
        for (int round = 0; round < 20; ++round) {
            schedule_round(world);
            oracle.step();
            CAPTURE(seed);
            CAPTURE(round);
            REQUIRE(framework_infected(world) == oracle.infected_set());
        }
    }
}

TEST_CASE("the infected set never shrinks") {
    EpidemicConfig cfg = small_epidemic(21);
    cfg.infection_probability = 0.7;
    World world = build_epidemic(cfg);
    std::set<std::string> previous;
    for (int round = 0; round < 25; ++round) {
        schedule_round(world);
        auto current = framework_infected(world);
        CHECK(std::includes(current.begin(), current.end(), previous.begin(), previous.end()));
        previous = std::move(current);
    }
}

TEST_CASE("every infection produces a consult within two rounds") {
    EpidemicConfig cfg = small_epidemic(5);
    cfg.infection_probability = 1.0;
    World world = build_epidemic(cfg);
    run(world, 20);

    std::map<std::string, Round> infected_at;
    for (const TraceRecord& r : world.trace.records) {
        if (const auto* env = std::get_if<EnvChangeRecord>(&r)) {
            if (env->key == "state" && env->value == Scalar{std::string("infected")}) {
                infected_at[env->agent.id] = env->round;
            }
        }
    }
    REQUIRE(!infected_at.empty());
    for (const auto& [agent, round] : infected_at) {
        bool consulted = false;
        for (const DeliveredAct* act : delivered_acts(world.trace)) {
            if (act->act.performative == Performative::ask && act->act.sender == AgentId{agent} &&
                act->round <= round + 2) {
                consulted = true;
            }
        }
        CAPTURE(agent);
        CHECK(consulted);
    }
}

TEST_CASE("detection declares in the window and stays quiet outside it") {
    SUBCASE("reports at rounds 1, 2 and 4 trigger the alert at round 4") {
        World world = build_detection_harness(3, 5, {1, 2, 4});
        run(world, 12);

        // independent sliding-window count over the report rounds
        std::vector<Round> reports{1, 2, 4};
        Round expected_alert = -1;
        for (Round now : reports) {
            int in_window = 0;
            for (Round r : reports) {
                if (r > now - 5 && r <= now) ++in_window;
            }
            if (in_window >= 3 && expected_alert < 0) expected_alert = now;
        }
        REQUIRE(expected_alert == 4);

        Round alerted_round = -1;
        for (const TraceRecord& r : world.trace.records) {
            if (const auto* kw = std::get_if<KnowledgeWriteRecord>(&r)) {
                if (kw->agent == AgentId{"authority"} && kw->key == "alerted") {
                    alerted_round = kw->round;
                }
            }
        }
        CHECK(alerted_round == expected_alert);

        // the alert leaves as a diffusion and the run settles cleanly
        bool alert_delivered = false;
        for (const DeliveredAct* act : delivered_acts(world.trace)) {
            if (act->act.performative == Performative::diffuse &&
                act->act.sender == AgentId{"authority"}) {
                alert_delivered = true;
                CHECK(act->act.round == expected_alert);  // sent the round it was decided
            }
        }
        CHECK(alert_delivered);
        CHECK_FALSE(has_protocol_failures(world));
    }
    SUBCASE("reports at rounds 1, 2 and 9 never trigger") {
        World world = build_detection_harness(3, 5, {1, 2, 9});
        run(world, 16);
        for (const TraceRecord& r : world.trace.records) {
            if (const auto* kw = std::get_if<KnowledgeWriteRecord>(&r)) {
                CHECK(kw->key != "alerted");
            }
        }
        CHECK_FALSE(has_protocol_failures(world));
    }
}

TEST_CASE("configuration below the threshold stops at the acknowledgment") {
    ConfigurationConfig cfg;
    cfg.requirements = {RequirementSpec{"r1", 0.3, "f1"}};
    cfg.functions = {"f1", "f2", "f3"};
    cfg.solutions = {"s1"};
    cfg.constraints = {"k1"};
    World world = build_configuration(cfg);
    run(world, 12);

    auto acts = delivered_acts(world.trace);
    REQUIRE(acts.size() == 2);  // inform + immediate confirm, no diffusion
    CHECK(acts[0]->act.performative == Performative::inform);
    CHECK(acts[1]->act.performative == Performative::confirm);
    CHECK_FALSE(has_protocol_failures(world));
}

TEST_CASE("a threshold of one can never be exceeded") {
    ConfigurationConfig cfg;
    cfg.requirements = {RequirementSpec{"r1", 1.0, "f1"}};
    cfg.functions = {"f1", "f2"};
    cfg.solutions = {"s1"};
    cfg.constraints = {"k1"};
    cfg.threshold = 1.0;
    World world = build_configuration(cfg);
    run(world, 12);
    CHECK(delivered_acts(world.trace).size() == 2);  // V <= 1 strictly
}

TEST_CASE("an inhibited link shrinks the handshake") {
    ConfigurationConfig cfg;
    cfg.requirements = {RequirementSpec{"r1", 0.6, "f1"}};
    cfg.functions = {"f1", "f2", "f3"};
    cfg.solutions = {"s1"};
    cfg.constraints = {"k1"};
    cfg.weights = {{AgentId{"f1"}, AgentId{"f3"}, 0.0}};
    World world = build_configuration(cfg);
    run(world, 12);
    // f3 never receives the diffusion nor confirms it: 6 - 2 acts
    CHECK(delivered_acts(world.trace).size() == 4);
    CHECK_FALSE(has_protocol_failures(world));
}

TEST_CASE("a non-responding function agent is detected") {
    ConfigurationConfig cfg;
    cfg.requirements = {RequirementSpec{"r1", 0.6, "f1"}};
    cfg.functions = {"f1", "f2", "f3"};
    cfg.solutions = {"s1"};
    cfg.constraints = {"k1"};
    cfg.nonresponders = {AgentId{"f2"}};
    World world = build_configuration(cfg);
    run(world, 15);
    CHECK(has_protocol_failures(world));
    CHECK_FALSE(world.tracker.pending_obligations(world.round, world.obligation_timeout).empty());
}

TEST_CASE("mediation answers one proposal through the member chain") {
    MediationConfig cfg;
    cfg.designers = {"designer_a", "designer_b"};
    cfg.proposals = {ProposalSpec{"designer_a", 0, "prop-1"}};
    World world = build_mediation(cfg);
    run(world, 8);

    int micro = 0;
    int macro_from_actor = 0;
    for (const DeliveredAct* act : delivered_acts(world.trace)) {
        if (act->micro) {
            ++micro;
        } else if (act->act.sender == AgentId{"mediator"}) {
            ++macro_from_actor;
            CHECK(act->act.performative == Performative::confirm);
            CHECK(act->act.receiver == AgentId{"designer_a"});
        }
    }
    CHECK(micro >= 3);
    CHECK(macro_from_actor == 1);

    // the memorization member holds a copy of every micro act
    CHECK(world.system.agents.at("mediator_memorization").kb.facts.at("copies") ==
          Scalar{static_cast<double>(micro)});
    CHECK_FALSE(has_protocol_failures(world));
    CHECK(world.tracker.open_obligations().empty());
}

TEST_CASE("mediation without proposals is silent") {
    MediationConfig cfg;
    cfg.designers = {"designer_a", "designer_b"};
    World world = build_mediation(cfg);
    run(world, 6);
    CHECK(delivered_acts(world.trace).empty());
}

TEST_CASE("mediation requires two designers") {
    MediationConfig cfg;
    cfg.designers = {"designer_a"};
    CHECK_THROWS_AS(build_mediation(cfg), SimError);
}

TEST_CASE("a swallowing mediator leaves the proposal pending") {
    MediationConfig cfg;
    cfg.designers = {"designer_a", "designer_b"};
    cfg.proposals = {ProposalSpec{"designer_a", 0, "prop-1"}};
    cfg.nonresponders = {AgentId{"mediator"}};
    World world = build_mediation(cfg);
    run(world, 12);
    CHECK(has_protocol_failures(world));
}
