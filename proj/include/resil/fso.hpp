#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "resil/matching.hpp"

namespace resil {

struct Resolved {
    int layer_reached = 0;
    Assignment assignment;
    /// Layers whose members were pooled, ascending; always holds the origin.
    std::vector<int> span;

    friend bool operator==(const Resolved&, const Resolved&) = default;
};

struct Unserviced {
    int layer_reached = 0;
    MissingRoles remaining;
    std::vector<int> span;

    friend bool operator==(const Unserviced&, const Unserviced&) = default;
};

using EscalationResult = std::variant<Resolved, Unserviced>;

inline constexpr int default_escalation_threshold = 3;

/// Number of layers the request climbed above its origin.
int escalation_depth(const EscalationResult& r, int origin_layer);

/// Matches at the origin layer and, while requirements stay unfilled,
/// propagates the request one layer up, pooling the registries of every
/// layer visited so far. Stops at the first full match or after layer
/// origin + threshold (or the top layer). Layers whose CC is dead are
/// skipped along with their members. Throws OriginCCDead, KindMismatch,
/// InvalidArgument.
EscalationResult escalate(const Organization& org, const OrgState& state, int origin_layer,
                          const Notification& n, const ServicingProtocol& protocol,
                          const Ontology& ontology, int threshold);

/// Highest intrinsic behavior class wins; ties go to the lowest id.
/// Throws EmptyParticipants.
AgentId elect_cc(std::span<const Agent> participants);

/// Social overlay network: a temporary MAC formed for one servicing
/// protocol, possibly spanning several layers.
struct Son {
    std::uint64_t id = 0;
    AgentId cc;
    std::vector<AgentId> participants;
    std::string objective;
    Tick created = 0;
    Tick lifespan = 1;
    std::vector<int> span;

    /// Dissolution tick given when the service would complete.
    Tick dissolves_at(Tick service_completion) const {
        return created + std::min(lifespan, service_completion - created);
    }
    bool expires_before(Tick service_completion) const {
        return created + lifespan < service_completion;
    }
};

/// Creates the SON for a resolved escalation and marks its participants
/// busy. Throws InvalidArgument on an empty assignment.
Son spawn_son(const Resolved& resolved, const ServicingProtocol& protocol, Tick now,
              Population& agents, std::uint64_t son_id);

/// Releases the participants (failed or defected ones keep their state).
/// Returns the agents that went back to idle.
std::vector<AgentId> dissolve_son(const Son& son, Tick now, Population& agents);

}  // namespace resil
