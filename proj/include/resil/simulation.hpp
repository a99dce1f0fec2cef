#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "resil/organization.hpp"
#include "resil/scenario.hpp"
#include "resil/trace.hpp"

namespace resil {

struct Reaction {
    AgentId agent;
    Tick at = 0;

    friend bool operator==(const Reaction&, const Reaction&) = default;
};

/// Who reacts to a threat, and when. Individual: working members with the
/// event inside their perception radius, at e.time. Collective: the same
/// perceivers plus every working member reachable from them along channels,
/// each channel costing its hop delay and each coordination center crossed
/// its processing time. Sorted by agent id.
std::vector<Reaction> propagate_perception(const Organization& org, const OrgState& state,
                                           const PerceptionEvent& e, PerceptionMode mode);

/// One run of a scenario. Single-threaded; instances share nothing.
class Simulation {
public:
    /// Throws InvalidScenario (or the more specific scenario errors).
    Simulation(Scenario scenario, std::uint64_t seed);

    /// Schedules a Black Swan striking every agent tagged `tag` at `time`.
    /// Throws InvalidArgument when `time` lies outside [0, horizon).
    void inject_black_swan(const std::string& tag, Tick time);

    const Scenario& scenario() const { return scenario_; }
    const Organization& organization() const { return org_; }

    Trace run() const;

private:
    Scenario scenario_;
    Organization org_;
    std::uint64_t seed_;
};

Trace run(const Scenario& scenario, std::uint64_t seed);

}  // namespace resil
