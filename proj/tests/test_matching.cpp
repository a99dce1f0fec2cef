#include <doctest.h>

#include <algorithm>
#include <set>

#include "resil/matching.hpp"
#include "resil/rng.hpp"
#include "support.hpp"

using namespace resil;

namespace {

struct World {
    Ontology ontology = Ontology::care_default();
    Population agents;
    CCState cc;

    void add(const std::string& id, const std::string& role, Point at) {
        Agent a = make_agent(id, PersonaClass::HumanBeing, {Role(role)}, at);
        agents[id] = a;
        cc.registry.push_back(subscribe(a));
    }
};

Notification fall_at(Point p, const AgentId& source = "sensor") {
    Notification n;
    n.kind = "fall";
    n.source = source;
    n.location = p;
    return n;
}

RolePool pool(std::vector<AgentId> members, int lo, int hi) { return {std::move(members), lo, hi}; }

std::vector<AgentId> names(const std::string& prefix, int n) {
    std::vector<AgentId> out;
    for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

}  // namespace

TEST_CASE("eligible follows subsumption") {
    World w;
    w.add("neighbor", "informal caregiver", {1, 0});
    w.add("gp", "general practitioner", {5, 0});
    const auto all = eligible(w.cc.registry, Role("caregiver"), w.ontology, w.agents);
    CHECK(all == std::vector<AgentId>{"gp", "neighbor"});
    CHECK(eligible(w.cc.registry, Role("nurse"), w.ontology, w.agents).empty());

    w.agents["gp"].availability = Availability::Busy;
    w.agents["neighbor"].availability = Availability::Busy;
    CHECK(eligible(w.cc.registry, Role("caregiver"), w.ontology, w.agents).empty());
}

TEST_CASE("fall match picks the nearest candidates") {
    World w;
    w.add("neighbor", "informal caregiver", {1, 0});
    w.add("gp", "general practitioner", {5, 0});
    const auto p = testing::fall_protocol();
    const MatchResult m = match_notification(w.cc, fall_at({0, 0}), p, w.ontology, w.agents);
    REQUIRE(std::holds_alternative<Assignment>(m));
    CHECK(std::get<Assignment>(m) == Assignment{{"neighbor"}, {"gp"}});
}

TEST_CASE("equal distance goes to the lower id") {
    World w;
    w.add("zed", "informal caregiver", {0, 1});
    w.add("amy", "informal caregiver", {1, 0});
    w.add("gp", "general practitioner", {5, 0});
    const MatchResult m =
        match_notification(w.cc, fall_at({0, 0}), testing::fall_protocol(), w.ontology, w.agents);
    CHECK(std::get<Assignment>(m)[0] == std::vector<AgentId>{"amy"});
}

TEST_CASE("matching is all or nothing") {
    World w;
    w.add("neighbor", "informal caregiver", {1, 0});
    const MatchResult m =
        match_notification(w.cc, fall_at({0, 0}), testing::fall_protocol(), w.ontology, w.agents);
    REQUIRE(std::holds_alternative<MissingRoles>(m));
    CHECK(std::get<MissingRoles>(m) == MissingRoles{{Role("professional caregiver"), 1}});
    CHECK(w.agents.at("neighbor").availability == Availability::Idle);
}

TEST_CASE("the source never serves its own notification") {
    World w;
    w.add("neighbor", "informal caregiver", {1, 0});
    w.add("gp", "general practitioner", {5, 0});
    const MatchResult m = match_notification(w.cc, fall_at({0, 0}, "gp"), testing::fall_protocol(),
                                             w.ontology, w.agents);
    CHECK(std::holds_alternative<MissingRoles>(m));
}

TEST_CASE("dead CC and kind mismatch") {
    World w;
    w.add("gp", "general practitioner", {5, 0});
    auto n = fall_at({0, 0});
    w.cc.alive = false;
    CHECK_THROWS_AS(match_notification(w.cc, n, testing::fall_protocol(), w.ontology, w.agents), Error);
    w.cc.alive = true;
    n.kind = "flood";
    try {
        (void)match_notification(w.cc, n, testing::fall_protocol(), w.ontology, w.agents);
        FAIL("expected KindMismatch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::KindMismatch);
    }
}

TEST_CASE("random matches are sound against the closure oracle") {
    const Ontology o = Ontology::care_default();
    const std::vector<std::string> roles = {"informal caregiver", "nurse", "general practitioner",
                                            "accelerometer"};
    Rng rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        World w;
        const int n = 1 + static_cast<int>(rng.uniform_below(10));
        for (int i = 0; i < n; ++i) {
            w.add("a" + std::to_string(i), roles[rng.uniform_below(roles.size())],
                  {static_cast<double>(rng.uniform_below(10)), static_cast<double>(rng.uniform_below(10))});
            if (rng.bernoulli(0.2)) w.agents["a" + std::to_string(i)].availability = Availability::Busy;
        }
        ServicingProtocol p = testing::fall_protocol();
        p.requirements[0].min_count = static_cast<int>(rng.uniform_below(3));
        p.requirements[0].max_count = std::max(1, p.requirements[0].min_count);
        if (p.requirements[0].min_count == 0) p.requirements[0].min_count = 1;
        const MatchResult m = match_notification(w.cc, fall_at({0, 0}), p, w.ontology, w.agents);
        if (const auto* a = std::get_if<Assignment>(&m)) {
            REQUIRE(testing::assignment_sound(*a, p, o, w.agents));
            for (const auto& slot : *a) {
                for (const auto& id : slot) REQUIRE(w.agents.at(id).availability == Availability::Idle);
            }
        }
    }
}

TEST_CASE("count_teams on the six member lattice") {
    const std::vector<PoolBounds> all{{1, 0, 1}, {4, 0, 4}, {1, 0, 1}};
    const std::vector<PoolBounds> quorum{{1, 1, 1}, {4, 1, 4}, {1, 1, 1}};
    CHECK(count_teams(all) == 64);
    CHECK(count_teams(quorum) == 15);
    CHECK(count_teams(all) == testing::brute_force_teams(all));
    CHECK(count_teams(quorum) == testing::brute_force_teams(quorum));

    const std::vector<PoolBounds> bad{{0, 1, 1}};
    try {
        (void)count_teams(bad);
        FAIL("expected BadBounds");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BadBounds);
    }
}

TEST_CASE("count_teams matches brute force on every small pool vector") {
    // All vectors of up to three roles whose joint subset space is at most 2^16.
    int checked = 0;
    for (int roles = 1; roles <= 3; ++roles) {
        std::vector<int> sizes(static_cast<std::size_t>(roles), 0);
        while (true) {
            int bits = 0;
            for (int s : sizes) bits += s;
            if (bits <= 16) {
                std::vector<PoolBounds> pools;
                for (int s : sizes) pools.push_back({s, s / 3, s - s / 4});
                REQUIRE(count_teams(pools) == testing::brute_force_teams(pools));
                std::vector<PoolBounds> full;
                for (int s : sizes) full.push_back({s, 0, s});
                REQUIRE(count_teams(full) == testing::brute_force_teams(full));
                ++checked;
            }
            std::size_t i = 0;
            while (i < sizes.size() && ++sizes[i] > 8) sizes[i++] = 0;
            if (i == sizes.size()) break;
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("enumeration yields each state once in lexicographic order") {
    const std::vector<RolePool> pools{pool({"r0m0"}, 0, 1), pool(names("r1m", 4), 0, 4),
                                      pool({"r2m0"}, 0, 1)};
    const auto teams = enumerate_teams(pools);
    CHECK(teams.size() == 64);
    CHECK(std::set<TeamState>(teams.begin(), teams.end()).size() == 64);
    CHECK(std::is_sorted(teams.begin(), teams.end()));
    for (const auto& t : teams) CHECK(within_bounds(t, pools));

    const std::vector<RolePool> one{pool({"x"}, 1, 1)};
    CHECK(enumerate_teams(one).size() == 1);

    try {
        (void)enumerate_teams(pools, 10);
        FAIL("expected SpaceTooLarge");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SpaceTooLarge);
    }
}

TEST_CASE("walk_step with q=1 closes the shortfall by one") {
    const std::vector<RolePool> pools{pool(names("a", 3), 2, 3), pool(names("b", 2), 1, 2)};
    Rng rng(1);
    TeamState s{{}, {}};
    for (int step = 0; step < 3; ++step) {
        auto shortfall = [&](const TeamState& t) {
            int d = 0;
            for (std::size_t r = 0; r < t.size(); ++r) {
                d += std::max(0, pools[r].min_count - static_cast<int>(t[r].size()));
            }
            return d;
        };
        const TeamState next = walk_step(s, pools, 1.0, rng);
        CHECK(shortfall(next) == shortfall(s) - 1);
        s = next;
    }
    CHECK(within_bounds(s, pools));
}

TEST_CASE("walk_step with q=0 removes uniformly from a full lattice point") {
    // Chi-square against uniform over the 5 possible removals (4 dof).
    const std::vector<RolePool> pools{pool(names("a", 3), 0, 3), pool(names("b", 2), 0, 2)};
    const TeamState full{names("a", 3), names("b", 2)};
    std::map<std::string, int> hits;
    Rng rng(2024);
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) {
        const TeamState next = walk_step(full, pools, 0.0, rng);
        for (std::size_t r = 0; r < full.size(); ++r) {
            for (const auto& m : full[r]) {
                if (!std::binary_search(next[r].begin(), next[r].end(), m)) ++hits[m];
            }
        }
    }
    REQUIRE(hits.size() == 5);
    const double expected = draws / 5.0;
    double chi2 = 0.0;
    for (const auto& [m, h] : hits) chi2 += (h - expected) * (h - expected) / expected;
    CHECK(chi2 < 18.47);  // p = 0.001 critical value for 4 degrees of freedom
}

TEST_CASE("walk_step keeps states valid and disjoint") {
    // Overlapping pools: agent "s" is eligible for both roles.
    const std::vector<RolePool> pools{pool({"a0", "a1", "s"}, 1, 2), pool({"b0", "s"}, 1, 2)};
    Rng rng(9);
    TeamState t{{}, {}};
    for (int i = 0; i < 5000; ++i) {
        t = walk_step(t, pools, 0.5, rng);
        std::set<AgentId> seen;
        for (std::size_t r = 0; r < t.size(); ++r) {
            REQUIRE(static_cast<int>(t[r].size()) <= pools[r].max_count);
            REQUIRE(std::is_sorted(t[r].begin(), t[r].end()));
            for (const auto& m : t[r]) {
                REQUIRE(std::find(pools[r].members.begin(), pools[r].members.end(), m) !=
                        pools[r].members.end());
                REQUIRE(seen.insert(m).second);
            }
        }
    }

    const std::vector<RolePool> empty{pool({}, 0, 0)};
    const TeamState none{{}};
    CHECK(walk_step(none, empty, 0.5, rng) == none);
}

TEST_CASE("form_team") {
    const std::vector<RolePool> pools{pool(names("a", 4), 2, 3), pool(names("b", 3), 1, 3),
                                      pool(names("c", 1), 1, 1)};
    Rng rng(4);
    const FormedTeam f = form_team(pools, 1.0, 100, rng);
    REQUIRE(f.team);
    CHECK(f.steps == 4);
    CHECK(within_bounds(*f.team, pools));

    const std::vector<RolePool> short_pool{pool(names("a", 1), 2, 2)};
    CHECK_FALSE(form_team(short_pool, 1.0, 50, rng).team);
    CHECK_THROWS_AS(form_team(pools, 1.0, 0, rng), Error);

    Rng r1(77);
    Rng r2(77);
    const FormedTeam x = form_team(pools, 0.5, 500, r1);
    const FormedTeam y = form_team(pools, 0.5, 500, r2);
    CHECK(x.steps == y.steps);
    CHECK(x.team == y.team);
}
