// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <fmt/core.h>

#include <algorithm>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <map>

#include "resil/cli.hpp"
#include "resil/fso.hpp"
#include "resil/indicators.hpp"
#include "resil/simulation.hpp"
#include "support.hpp"

using namespace resil;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::vector<std::uint64_t> three_seeds = {0, 1, 2};
const std::vector<std::uint64_t> five_seeds = {0, 1, 2, 3, 4};

Scenario with_failure(Scenario s, const std::string& node, Tick at) {
    s.faults.push_back({FaultEntry::Type::Fail, at, node});
    return s;
}

// C1
Outcome spof_contrast() {
    constexpr Tick failure_at = 500;
    std::string detail;
    bool ok = true;
    for (auto seed : three_seeds) {
        const double mac =
            response_metrics(run(with_failure(testing::load_fixture("mac_basic"), "cc0", failure_at), seed),
                             failure_at)
                .service_ratio;
        const double fso =
            response_metrics(run(with_failure(testing::load_fixture("fso_3layer"), "cc1", failure_at), seed),
                             failure_at)
                .service_ratio;
        ok = ok && mac == 0.0 && fso > 0.0;
        detail += fmt::format(" seed{}: mac={:.3f} fso={:.3f}", seed, mac, fso);
    }
    return {ok, detail};
}

Scenario scaled_population(int n, OrgVariant variant, std::uint64_t layout_seed) {
    Rng rng(layout_seed);
    Scenario s;
    s.name = fmt::format("population{}", n);
    s.horizon = 1000;
    for (int i = 0; i < n; ++i) {
        Agent a = make_agent(fmt::format("m{:03}", i), PersonaClass::HumanBeing,
                             {Role((i / 3) % 3 == 0 ? "nurse" : "informal caregiver")},
                             {static_cast<double>(rng.uniform_below(100)), static_cast<double>(rng.uniform_below(100))});
        a.layer = variant == OrgVariant::Fso ? i % 3 : 0;
        s.agents.push_back(a);
    }
    s.organization.variant = variant;
    s.organization.hop_delay = 1;
    s.organization.cc_processing_time = 1;
    s.protocols = {testing::fall_protocol()};
    // One stream per 60 members keeps the total rate at n/300 per tick while
    // letting arrivals coincide.
    for (int k = 0; k < n / 60; ++k) s.workload.push_back({"fall", Arrival::geometric(0.2), {}, Severity::Alarm});
    return s;
}

// C2
Outcome scalability() {
    const std::vector<int> sizes = {60, 120, 240};
    int good = 0;
    std::string detail;
    for (auto seed : five_seeds) {
        std::vector<double> mac;
        for (int n : sizes) mac.push_back(response_metrics(run(scaled_population(n, OrgVariant::Mac, seed), seed)).mean_latency);
        const double fso = response_metrics(run(scaled_population(240, OrgVariant::Fso, seed), seed)).mean_latency;
        const bool ok = std::is_sorted(mac.begin(), mac.end()) && fso <= mac.back();
        good += ok ? 1 : 0;
        detail += fmt::format(" seed{}: mac={:.2f}/{:.2f}/{:.2f} fso240={:.2f}", seed, mac[0], mac[1], mac[2], fso);
    }
    return {good >= 4, fmt::format(" {}/5 seeds ok;", good) + detail};
}

// C3
Outcome bop_indicators() {
    const auto net = bop_index(members_at_start(run(testing::load_fixture("safety_net_basic"), 0)));
    const auto mac = bop_index(members_at_start(run(testing::load_fixture("mac_basic"), 0)));
    bool patients_six = true;
    for (const auto& [id, gap] : net.per_agent) {
        if (id.starts_with("patient") && id.find('.') == std::string::npos) patients_six = patients_six && gap == 6;
    }
    const bool ok = patients_six && net.mean > 0.0 && mac.mean == 0.0 && mac.mismatched == 0;
    return {ok, fmt::format(" safety_net bop={:.6f} patient_gap6={} mac bop={:.6f} mismatched={}", net.mean,
                            patients_six, mac.mean, mac.mismatched)};
}

// C4
Outcome lattice() {
    const std::vector<PoolBounds> all{{1, 0, 1}, {4, 0, 4}, {1, 0, 1}};
    const std::vector<PoolBounds> quorum{{1, 1, 1}, {4, 1, 4}, {1, 1, 1}};
    const auto a = count_teams(all);
    const auto q = count_teams(quorum);
    const bool ok = a == 64 && q == 15 && a == testing::brute_force_teams(all) &&
                    q == testing::brute_force_teams(quorum) &&
                    enumerate_teams(cli::synthetic_pools(all)).size() == 64;
    return {ok, fmt::format(" count={} quorum={}", a, q)};
}

// C5
Outcome escalation_fuzz() {
    constexpr int trials = 1000;
    constexpr int threshold = 3;
    const Ontology o = Ontology::care_default();
    const std::vector<std::string> roles = {"informal caregiver", "nurse", "general practitioner", "accelerometer",
                                            "sensor"};
    Rng rng(20240);
    int unsound = 0;
    int too_deep = 0;
    int resolved = 0;
    int max_depth = 0;
    for (int t = 0; t < trials; ++t) {
        std::vector<std::vector<Agent>> layers(4);
        for (int l = 0; l < 4; ++l) {
            const int n = 1 + static_cast<int>(rng.uniform_below(5));
            for (int i = 0; i < n; ++i) {
                Agent a = make_agent(fmt::format("l{}m{}", l, i), PersonaClass::HumanBeing,
                                     {Role(roles[rng.uniform_below(roles.size())])},
                                     {static_cast<double>(rng.uniform_below(20)), 0.0});
                a.layer = l;
                if (rng.bernoulli(0.15)) a.availability = Availability::Busy;
                layers[static_cast<std::size_t>(l)].push_back(a);
            }
        }
        const Organization org = build_fso(layers, 0, 1);
        OrgState st = OrgState::initial(org);
        for (int l = 1; l < 4; ++l) {
            if (rng.bernoulli(0.1)) fail_node(org, st, fmt::format("cc{}", l));
        }
        ServicingProtocol p = testing::fall_protocol();
        p.requirements[0].max_count = 1 + static_cast<int>(rng.uniform_below(2));
        Notification n;
        n.id = static_cast<NotificationId>(t);
        n.kind = "fall";
        n.source = "outside";
        std::vector<int> live;
        for (int l = 0; l < 4; ++l) {
            if (st.ccs[static_cast<std::size_t>(l)].alive) live.push_back(l);
        }
        const int origin = live[rng.uniform_below(live.size())];
        const auto r = escalate(org, st, origin, n, p, o, threshold);
        const int depth = escalation_depth(r, origin);
        max_depth = std::max(max_depth, depth);
        too_deep += depth > threshold ? 1 : 0;
        if (const auto* res = std::get_if<Resolved>(&r)) {
            ++resolved;
            unsound += testing::assignment_sound(res->assignment, p, o, st.agents) ? 0 : 1;
        }
    }
    return {unsound == 0 && too_deep == 0,
            fmt::format(" trials={} resolved={} unsound={} max_depth={}", trials, resolved, unsound, max_depth)};
}

// C6
Outcome determinism_and_rescaling() {
    bool identical = true;
    bool scaled = true;
    std::size_t compared = 0;
    for (const char* name : {"mac_basic", "fso_3layer", "safety_net_basic", "blackswan_diversity"}) {
        const Scenario s = testing::load_fixture(name);
        const auto a = cli::run_once(s, 11);
        const auto b = cli::run_once(s, 11);
        identical = identical && a.trace.to_log() == b.trace.to_log() &&
                    cli::csv_row(a.scenario, 11, a.report) == cli::csv_row(b.scenario, 11, b.report);

        const auto slow = run(rescale_time(s, 10), 11);
        const auto x = a.trace.select<rec::ServiceCompleted>();
        const auto y = slow.select<rec::ServiceCompleted>();
        scaled = scaled && x.size() == y.size();
        for (std::size_t i = 0; scaled && i < x.size(); ++i) {
            scaled = y[i].second->latency == 10 * x[i].second->latency;
            ++compared;
        }
        const auto ax = a.trace.select<rec::Alerted>();
        const auto ay = slow.select<rec::Alerted>();
        scaled = scaled && ax.size() == ay.size();
        for (std::size_t i = 0; scaled && i < ax.size(); ++i) {
            scaled = ay[i].second->latency == 10 * ax[i].second->latency;
        }
    }
    // The CLI artifacts themselves, written twice.
    const auto root = std::filesystem::temp_directory_path() / "resil-acceptance";
    std::filesystem::remove_all(root);
    for (const char* dir : {"a", "b"}) cli::cmd_simulate(testing::fixture("fso_3layer"), 11, root / dir);
    for (const char* f : {"results.csv", "trace.log"}) {
        identical = identical && slurp(root / "a" / f) == slurp(root / "b" / f) && !slurp(root / "a" / f).empty();
    }
    std::filesystem::remove_all(root);
    return {identical && scaled,
            fmt::format(" byte_identical={} latencies_x10={} ({} compared)", identical, scaled, compared)};
}

// C7
Outcome black_swan_diversity() {
    constexpr Tick shock = 500;
    Rng rng(7);
    bool exact = true;
    for (int t = 0; t < 50; ++t) {
        Scenario s = testing::load_fixture("blackswan_diversity");
        const int tags = 1 + static_cast<int>(rng.uniform_below(4));
        int share = 0;
        for (auto& a : s.agents) {
            a.solution_tag = std::string(1, static_cast<char>('A' + rng.uniform_below(static_cast<std::uint64_t>(tags))));
            share += a.solution_tag == "A" ? 1 : 0;
        }
        const auto hits = run(s, static_cast<std::uint64_t>(t)).select<rec::BlackSwanStruck>();
        exact = exact && hits.size() == 1 && hits[0].second->struck == share;
    }

    bool ordered = true;
    std::string detail;
    for (auto seed : five_seeds) {
        Scenario uniform = testing::load_fixture("blackswan_diversity");
        Scenario mono = uniform;
        for (auto& a : mono.agents) a.solution_tag = "A";
        const double u = response_metrics(run(uniform, seed), shock).service_ratio;
        const double m = response_metrics(run(mono, seed), shock).service_ratio;
        ordered = ordered && m <= u;
        detail += fmt::format(" seed{}: mono={:.3f} uniform={:.3f}", seed, m, u);
    }
    return {exact && ordered, fmt::format(" disabled_equals_share={};", exact) + detail};
}

// C8
Outcome hierarchy_delay() {
    bool ok = true;
    std::string detail;
    for (int depth : {1, 2, 4}) {
        for (Tick h : {1, 3}) {
            Scenario s = testing::load_fixture("safety_net_basic");
            s.organization.devices_per_patient = depth;
            s.organization.hop_delay = h;
            s.organization.cc_processing_time = 0;
            const auto alerts = run(s, 0).select<rec::Alerted>();
            bool exact = !alerts.empty();
            for (const auto& [time, a] : alerts) exact = exact && a->latency == depth * h;
            ok = ok && exact;
            detail += fmt::format(" L{}h{}={}", depth, h, exact ? "exact" : "off");
        }
    }
    return {ok, detail};
}

/// Index of the stimulus that defects the agent, or -1.
int defection_step(Agent a, const CohesionParams& params, const std::vector<Stimulus>& stream) {
    for (std::size_t i = 0; i < stream.size(); ++i) {
        a = update_cohesion(a, stream[i], params);
        if (a.availability == Availability::Defected) return static_cast<int>(i);
    }
    return -1;
}

// C9
Outcome cohesion_monotonicity() {
    constexpr int trajectories = 100;
    constexpr int steps = 200;
    bool weight_ok = true;
    bool gamma_ok = true;
    int defect_g1 = 0;
    int defect_g3 = 0;
    for (int t = 0; t < trajectories; ++t) {
        Rng rng(static_cast<std::uint64_t>(1000 + t));
        Agent a = make_agent("a", PersonaClass::HumanBeing);
        a.exercised_behavior = behavior_from_ordinal(static_cast<int>(rng.uniform_below(6)));
        a.cohesion = 0.3 + 0.7 * rng.uniform01();

        // Weight: pure bop tick stream, rising weights.
        const std::vector<Stimulus> ticks(steps, Stimulus::BopTick);
        int previous = std::numeric_limits<int>::max();
        for (double w : {0.25, 0.5, 1.0, 2.0, 4.0}) {
            CohesionParams p;
            p.persona_weight[PersonaClass::HumanBeing] = w;
            const int d = defection_step(a, p, ticks);
            const int when = d < 0 ? std::numeric_limits<int>::max() : d;
            weight_ok = weight_ok && when <= previous;
            previous = when;
        }

        // Gamma: mixed stream with a crisis window in the middle third.
        std::vector<Stimulus> mixed;
        for (int i = 0; i < steps; ++i) {
            const bool crisis = i >= steps / 3 && i < 2 * steps / 3;
            if (rng.bernoulli(0.3)) {
                mixed.push_back(crisis ? Stimulus::CrisisUtilizedReturn : Stimulus::UtilizedReturn);
            } else {
                mixed.push_back(Stimulus::BopTick);
            }
        }
        CohesionParams g1;
        g1.gamma = 1.0;
        CohesionParams g3;
        g3.gamma = 3.0;
        const bool d1 = defection_step(a, g1, mixed) >= 0;
        const bool d3 = defection_step(a, g3, mixed) >= 0;
        defect_g1 += d1 ? 1 : 0;
        defect_g3 += d3 ? 1 : 0;
        gamma_ok = gamma_ok && (!d3 || d1);
    }
    return {weight_ok && gamma_ok && defect_g3 <= defect_g1,
            fmt::format(" weight_monotone={} defections gamma1={} gamma3={}", weight_ok, defect_g1, defect_g3)};
}

// C10
Outcome collective_perception() {
    const Scenario s = testing::load_fixture("canary_perception");
    const Trace t = run(s, 0);
    std::map<PerceptionMode, int> reactors;
    std::map<PerceptionMode, Tick> latest;
    std::map<PerceptionMode, Tick> appeared;
    for (const auto& [time, r] : t.select<rec::Reacted>()) {
        ++reactors[r->mode];
        appeared[r->mode] = time;
        latest[r->mode] = std::max(latest[r->mode], r->at);
    }
    const Tick bound = 2 * s.organization.hop_delay + s.organization.cc_processing_time;
    const Tick spread = latest[PerceptionMode::Collective] - appeared[PerceptionMode::Collective];
    const bool ok = reactors[PerceptionMode::Individual] == 1 && reactors[PerceptionMode::Collective] == 10 &&
                    spread <= bound;
    return {ok, fmt::format(" individual={} collective={} spread={} bound={}", reactors[PerceptionMode::Individual],
                            reactors[PerceptionMode::Collective], spread, bound)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"C1 spof-contrast", spof_contrast},
        {"C2 scalability-ordering", scalability},
        {"C3 bop-indicators", bop_indicators},
        {"C4 team-lattice", lattice},
        {"C5 escalation-soundness", escalation_fuzz},
        {"C6 determinism-rescaling", determinism_and_rescaling},
        {"C7 black-swan-diversity", black_swan_diversity},
        {"C8 hierarchy-delay", hierarchy_delay},
        {"C9 cohesion-monotonicity", cohesion_monotonicity},
        {"C10 collective-perception", collective_perception},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string(" threw: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        fmt::print("{} {}:{}\n", o.pass ? "PASS" : "FAIL", name, o.detail);
    }
    fmt::print("{}/{} criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
    return failed == 0 ? 0 : 1;
}
