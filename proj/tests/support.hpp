#pragma once

#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "resil/matching.hpp"
#include "resil/ontology.hpp"
#include "resil/scenario.hpp"

namespace testing {

inline std::string fixture(const std::string& name) {
    return std::string(RESIL_SCENARIO_DIR) + "/" + name + ".yaml";
}

inline resil::Scenario load_fixture(const std::string& name) {
    return resil::parse_scenario(fixture(name));
}

/// Reachability over the raw is-a edge list, computed by BFS from scratch.
inline bool closure_subsumes(const resil::Ontology& o, const resil::Role& general,
                             const resil::Role& specific) {
    std::map<std::string, std::vector<std::string>> up;
    for (const auto& [child, parent] : o.edges()) up[child.id].push_back(parent.id);
    std::set<std::string> seen{specific.id};
    std::queue<std::string> q;
    q.push(specific.id);
    while (!q.empty()) {
        auto cur = q.front();
        q.pop();
        if (cur == general.id) return true;
        for (const auto& p : up[cur]) {
            if (seen.insert(p).second) q.push(p);
        }
    }
    return false;
}

/// Counts team states by walking every combination of per-role subsets as
/// bitmasks and keeping those within bounds.
inline std::uint64_t brute_force_teams(const std::vector<resil::PoolBounds>& pools) {
    std::uint64_t total = 1;
    for (const auto& p : pools) {
        std::uint64_t ok = 0;
        for (std::uint32_t mask = 0; mask < (1u << p.size); ++mask) {
            const int k = __builtin_popcount(mask);
            if (k >= p.min_count && k <= p.max_count) ++ok;
        }
        total *= ok;
    }
    return total;
}

/// Every enrolled agent advertises a role satisfying its requirement (per
/// the BFS oracle) and no agent appears twice.
inline bool assignment_sound(const resil::Assignment& a, const resil::ServicingProtocol& p,
                             const resil::Ontology& o, const resil::Population& agents) {
    if (a.size() != p.requirements.size()) return false;
    std::set<resil::AgentId> used;
    for (std::size_t r = 0; r < a.size(); ++r) {
        if (static_cast<int>(a[r].size()) < p.requirements[r].min_count) return false;
        for (const auto& id : a[r]) {
            if (!used.insert(id).second) return false;
            const auto& ag = agents.at(id);
            bool fits = false;
            for (const auto& ad : ag.advertisements) {
                fits = fits || closure_subsumes(o, p.requirements[r].role, ad.role);
            }
            if (!fits) return false;
        }
    }
    return true;
}

inline resil::ServicingProtocol fall_protocol() {
    resil::ServicingProtocol p;
    p.id = "fall-response";
    p.trigger_kind = "fall";
    p.requirements = {{resil::Role("informal caregiver"), 1, 1},
                      {resil::Role("professional caregiver"), 1, 1}};
    p.service_duration = 5;
    p.deadline = 30;
    p.son_lifespan = 50;
    return p;
}

}  // namespace testing
