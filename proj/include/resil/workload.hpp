#pragma once

#include <string>
#include <vector>

#include "resil/agents.hpp"
#include "resil/ontology.hpp"
#include "resil/rng.hpp"

namespace resil {

/// Inter-arrival law, in ticks.
struct Arrival {
    enum class Law { Fixed, Uniform, Geometric };

    Law law = Law::Fixed;
    Tick a = 1;       // fixed interval, or uniform lower bound
    Tick b = 1;       // uniform upper bound
    double p = 1.0;   // geometric success probability; mean gap 1/p

    static Arrival fixed(Tick d) { return {Law::Fixed, d, d, 1.0}; }
    static Arrival uniform(Tick lo, Tick hi) { return {Law::Uniform, lo, hi, 1.0}; }
    static Arrival geometric(double p) { return {Law::Geometric, 1, 1, p}; }

    friend bool operator==(const Arrival&, const Arrival&) = default;
};

struct WorkloadStream {
    std::string kind;
    Arrival arrival;
    /// Candidate sources, drawn uniformly per notification.
    std::vector<AgentId> sources;
    Severity severity = Severity::Alarm;

    friend bool operator==(const WorkloadStream&, const WorkloadStream&) = default;
};

struct WorkloadSpec {
    std::vector<WorkloadStream> streams;
    Tick horizon = 1;
};

/// Throws InvalidArgument on a nonpositive horizon or interval, an empty
/// source list, or p outside (0, 1].
void validate(const WorkloadSpec& spec);

/// Notifications of all streams merged by time (stream order breaks ties),
/// all strictly before the horizon, ids numbered 0.. in that order. Each
/// notification is located at its source. Unknown sources throw
/// InvalidArgument.
std::vector<Notification> generate_workload(const WorkloadSpec& spec, const Population& agents,
                                            Rng& rng);

}  // namespace resil
