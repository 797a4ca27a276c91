#include <doctest.h>

#include "helpers.hpp"
#include "masim/organization.hpp"
#include "masim/rng.hpp"

using namespace masim;
using namespace masim::testing;

namespace {

CommunicationAct diffusion_template(AgentId sender) {
    CommunicationAct act;
    act.performative = Performative::diffuse;
    act.sender = std::move(sender);
    act.mtype = MessageType{2, ""};
    act.payload = value_payload(0.6);
    act.conversation = "d1";
    act.round = 3;
    return act;
}

Community community_f(std::initializer_list<const char*> ids) {
    Community c{"F", {}};
    for (const char* id : ids) c.members.insert(AgentId{id});
    return c;
}

}  // namespace

TEST_CASE("set_affinity stores weights and rejects bad input") {
    AffinityNetwork net;
    set_affinity(net, "r1", "f1", 0.7);
    CHECK(net.weight("r1", "f1") == 0.7);
    CHECK(net.weight("f1", "r1") == 1.0);  // directed; unset defaults to full weight
    CHECK(net.weight("a", "b") == 1.0);

    CHECK_THROWS_WITH_AS(set_affinity(net, "r1", "f1", 1.2), doctest::Contains("OutOfRange"),
                         SimError);
    CHECK_THROWS_WITH_AS(set_affinity(net, "r1", "f1", -0.1), doctest::Contains("OutOfRange"),
                         SimError);
    CHECK_THROWS_WITH_AS(set_affinity(net, "r1", "r1", 0.5), doctest::Contains("SelfEdge"),
                         SimError);
}

TEST_CASE("diffuse reaches every member except the sender, ascending") {
    AffinityNetwork net;
    Community f = community_f({"f1", "f2", "f3", "f4"});

    auto acts = diffuse("f1", f, diffusion_template("f1"), net);
    REQUIRE(acts.size() == 3);
    CHECK(acts[0].receiver == AgentId{"f2"});
    CHECK(acts[1].receiver == AgentId{"f3"});
    CHECK(acts[2].receiver == AgentId{"f4"});
    for (const CommunicationAct& act : acts) {
        CHECK(act.sender == AgentId{"f1"});
        CHECK(act.conversation == "d1");
        CHECK(act.round == 3);
        CHECK(act.payload.value == Scalar{0.6});
    }
}

TEST_CASE("inhibited links suppress delivery") {
    AffinityNetwork net;
    net.inhibition_threshold = 0.1;
    set_affinity(net, "f1", "f3", 0.0);
    Community f = community_f({"f1", "f2", "f3", "f4"});

    auto acts = diffuse("f1", f, diffusion_template("f1"), net);
    REQUIRE(acts.size() == 2);
    CHECK(acts[0].receiver == AgentId{"f2"});
    CHECK(acts[1].receiver == AgentId{"f4"});

    // weight exactly at the threshold is inhibited too
    set_affinity(net, "f1", "f2", 0.1);
    CHECK(diffuse("f1", f, diffusion_template("f1"), net).size() == 1);
}

TEST_CASE("diffusion in a singleton community is empty") {
    AffinityNetwork net;
    CHECK(diffuse("f1", community_f({"f1"}), diffusion_template("f1"), net).empty());
}

TEST_CASE("reinforce applies deltas with clamping") {
    AffinityNetwork net;
    set_affinity(net, "a", "b", 0.5);
    reinforce(net, "a", "b", Outcome::success);
    CHECK(net.weight("a", "b") == doctest::Approx(0.55));

    set_affinity(net, "a", "b", 1.0);
    reinforce(net, "a", "b", Outcome::success);
    CHECK(net.weight("a", "b") == 1.0);

    set_affinity(net, "a", "b", 0.02);
    reinforce(net, "a", "b", Outcome::failure);
    CHECK(net.weight("a", "b") == 0.0);

    CHECK_THROWS_AS(reinforce(net, "a", "a", Outcome::success), SimError);
}

// Weights stay in [0,1] under arbitrary reinforcement sequences.
TEST_CASE("reinforcement keeps weights in the unit interval") {
    AffinityNetwork net;
    const AgentId ids[] = {"a", "b", "c", "d"};
    std::uint64_t state = 7;
    for (int i = 0; i < 10000; ++i) {
        std::uint64_t r = rng::splitmix64_next(state);
        const AgentId& from = ids[r % 4];
        const AgentId& to = ids[(r >> 8) % 4];
        if (from == to) continue;
        reinforce(net, from, to, (r >> 16) % 2 ? Outcome::success : Outcome::failure);
    }
    for (const auto& [pair, w] : net.weights) {
        CHECK(w >= 0.0);
        CHECK(w <= 1.0);
    }
}

// Raising the inhibition threshold never increases the delivery count.
TEST_CASE("delivery count is monotone nonincreasing in the threshold") {
    AffinityNetwork net;
    Community f = community_f({"f1", "f2", "f3", "f4", "f5", "f6"});
    std::uint64_t state = 42;
    for (const AgentId& member : f.members) {
        if (member == AgentId{"f1"}) continue;
        set_affinity(net, "f1", member,
                     rng::unit_double(rng::splitmix64_next(state)));
    }

    std::size_t previous = f.members.size();
    for (double threshold = 0.0; threshold < 1.0; threshold += 0.05) {
        net.inhibition_threshold = threshold;
        std::size_t count = diffuse("f1", f, diffusion_template("f1"), net).size();
        CHECK(count <= previous);
        previous = count;
    }
}

// Uniformly lifting all weights above the threshold leaves the receiver set
// unchanged.
TEST_CASE("receiver sets are invariant under uniform weight lifts") {
    AffinityNetwork net;
    net.inhibition_threshold = 0.3;
    Community f = community_f({"f1", "f2", "f3", "f4", "f5"});
    set_affinity(net, "f1", "f2", 0.35);
    set_affinity(net, "f1", "f3", 0.6);
    set_affinity(net, "f1", "f4", 0.1);   // inhibited
    set_affinity(net, "f1", "f5", 0.05);  // inhibited

    auto receivers = [](const std::vector<CommunicationAct>& acts) {
        std::vector<AgentId> out;
        for (const CommunicationAct& act : acts) out.push_back(act.receiver);
        return out;
    };
    auto before = receivers(diffuse("f1", f, diffusion_template("f1"), net));

    // lift every above-threshold weight by the same headroom fraction
    for (auto& [pair, w] : net.weights) {
        if (w > net.inhibition_threshold) w += (1.0 - w) * 0.5;
    }
    auto after = receivers(diffuse("f1", f, diffusion_template("f1"), net));
    CHECK(before == after);
}
