#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "resil/agents.hpp"
#include "resil/ontology.hpp"
#include "resil/organization.hpp"
#include "resil/rng.hpp"

namespace resil {

/// Requirement index -> enrolled agents.
using Assignment = std::vector<std::vector<AgentId>>;

struct Shortfall {
    Role role;
    int missing = 0;

    friend bool operator==(const Shortfall&, const Shortfall&) = default;
};

using MissingRoles = std::vector<Shortfall>;
using MatchResult = std::variant<Assignment, MissingRoles>;

/// Idle registered agents advertising a role that satisfies `role`, by id.
std::vector<AgentId> eligible(std::span<const SubscriptionRecord> registry, const Role& role,
                              const Ontology& ontology, const Population& agents);

/// Core of the switchboard: for each requirement in declared order take the
/// `min_count` nearest eligible candidates (distance to the notification,
/// then agent id). Chosen agents are not reused by later requirements, and
/// the source of the notification never serves itself. All or nothing: any
/// shortfall yields MissingRoles and nothing is selected.
MatchResult match_candidates(std::span<const SubscriptionRecord* const> candidates,
                             const Notification& n, const ServicingProtocol& protocol,
                             const Ontology& ontology, const Population& agents);

/// Matches against one coordination center's registry. Throws DeadCC or
/// KindMismatch.
MatchResult match_notification(const CCState& cc, const Notification& n,
                               const ServicingProtocol& protocol, const Ontology& ontology,
                               const Population& agents);

// ---------------------------------------------------------------------------
// Team lattice

struct PoolBounds {
    int size = 0;
    int min_count = 0;
    int max_count = 0;
};

/// Members eligible for one requirement together with its count bounds.
struct RolePool {
    std::vector<AgentId> members;
    int min_count = 0;
    int max_count = 0;
};

/// Per requirement index, the enrolled subset (sorted by id).
using TeamState = std::vector<std::vector<AgentId>>;

/// Product over roles of sum_{k=min..max} C(n, k), i.e. the number of team
/// states when the per-role pools are disjoint. Throws BadBounds, Overflow.
std::uint64_t count_teams(std::span<const PoolBounds> pools);
std::uint64_t count_teams(std::span<const RolePool> pools);

inline constexpr std::uint64_t default_team_space_cap = 1'000'000;

/// Walks the lattice in lexicographic order: role 0 is the most significant
/// digit and each role's subsets are ordered lexicographically by member id.
class TeamEnumerator {
public:
    /// Throws BadBounds, or SpaceTooLarge when count_teams exceeds `cap`.
    explicit TeamEnumerator(std::vector<RolePool> pools,
                            std::uint64_t cap = default_team_space_cap);

    std::optional<TeamState> next();

private:
    std::vector<std::vector<std::vector<AgentId>>> choices_;
    std::vector<std::size_t> digits_;
    bool done_ = false;
};

std::vector<TeamState> enumerate_teams(std::span<const RolePool> pools,
                                       std::uint64_t cap = default_team_space_cap);

/// One step of the biased random walk over team states. With probability q
/// a move toward quorum (fill an under-min role, trim an over-max one),
/// otherwise any single legal add or remove; each chosen uniformly. Falls
/// back to the other move kind when the drawn kind has no move.
TeamState walk_step(const TeamState& state, std::span<const RolePool> pools, double q, Rng& rng);

/// True when every role's enrollment lies within its bounds.
bool within_bounds(const TeamState& state, std::span<const RolePool> pools);

struct FormedTeam {
    std::optional<TeamState> team;  // empty on timeout
    int steps = 0;
};

/// Walks from the empty team until all bounds are met or `max_steps`
/// steps were taken. Throws InvalidArgument when max_steps < 1.
FormedTeam form_team(std::span<const RolePool> pools, double q, int max_steps, Rng& rng);

/// Eligibility pools for each requirement of `protocol` from a registry.
std::vector<RolePool> pools_for(const ServicingProtocol& protocol,
                                std::span<const SubscriptionRecord> registry,
                                const Ontology& ontology, const Population& agents);

}  // namespace resil
