#include "resil/matching.hpp"

#include <algorithm>
#include <set>

namespace resil {

namespace {

bool is_available(const Population& agents, const AgentId& id) {
    auto it = agents.find(id);
    return it != agents.end() && it->second.availability == Availability::Idle;
}

bool offers(const SubscriptionRecord& rec, const Role& role, const Ontology& ontology) {
    return std::any_of(rec.advertisements.begin(), rec.advertisements.end(),
                       [&](const Role& ad) { return ontology.satisfies(ad, role); });
}

}  // namespace

std::vector<AgentId> eligible(std::span<const SubscriptionRecord> registry, const Role& role,
                              const Ontology& ontology, const Population& agents) {
    std::vector<AgentId> out;
    for (const auto& rec : registry) {
        if (is_available(agents, rec.identity) && offers(rec, role, ontology)) {
            out.push_back(rec.identity);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

MatchResult match_candidates(std::span<const SubscriptionRecord* const> candidates,
                             const Notification& n, const ServicingProtocol& protocol,
                             const Ontology& ontology, const Population& agents) {
    std::set<AgentId> taken;
    Assignment assignment(protocol.requirements.size());
    MissingRoles missing;

    for (std::size_t r = 0; r < protocol.requirements.size(); ++r) {
        const Requirement& req = protocol.requirements[r];
        struct Ranked {
            double d2;
            const AgentId* id;
        };
        std::vector<Ranked> ranked;
        for (const SubscriptionRecord* rec : candidates) {
            if (rec->identity == n.source || taken.contains(rec->identity)) continue;
            if (!is_available(agents, rec->identity) || !offers(*rec, req.role, ontology)) continue;
            ranked.push_back({squared_distance(agents.at(rec->identity).location, n.location),
                              &rec->identity});
        }
        std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
            return a.d2 != b.d2 ? a.d2 < b.d2 : *a.id < *b.id;
        });
        ranked.erase(std::unique(ranked.begin(), ranked.end(),
                                 [](const Ranked& a, const Ranked& b) { return *a.id == *b.id; }),
                     ranked.end());

        const auto need = static_cast<std::size_t>(req.min_count);
        const std::size_t got = std::min(need, ranked.size());
        for (std::size_t i = 0; i < got; ++i) {
            assignment[r].push_back(*ranked[i].id);
            taken.insert(*ranked[i].id);
        }
        if (got < need) {
            missing.push_back({req.role, static_cast<int>(need - got)});
        }
    }
    if (!missing.empty()) return missing;
    return assignment;
}

MatchResult match_notification(const CCState& cc, const Notification& n,
                               const ServicingProtocol& protocol, const Ontology& ontology,
                               const Population& agents) {
    if (!cc.alive) throw Error(ErrorKind::DeadCC, cc.cc_id);
    if (protocol.trigger_kind != n.kind) {
        throw Error(ErrorKind::KindMismatch,
                    "notification '" + n.kind + "' vs protocol trigger '" + protocol.trigger_kind + "'");
    }
    std::vector<const SubscriptionRecord*> pool;
    for (const auto& rec : cc.registry) pool.push_back(&rec);
    return match_candidates(pool, n, protocol, ontology, agents);
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    if (p > UINT64_MAX) throw Error(ErrorKind::Overflow, "team count exceeds 64 bits");
    return static_cast<std::uint64_t>(p);
}

std::uint64_t binomial(int n, int k) {
    k = std::min(k, n - k);
    unsigned __int128 c = 1;
    for (int i = 0; i < k; ++i) {
        c = c * static_cast<unsigned>(n - i) / static_cast<unsigned>(i + 1);
        if (c > UINT64_MAX) throw Error(ErrorKind::Overflow, "binomial exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(c);
}

void check_bounds(const PoolBounds& p) {
    if (p.min_count < 0 || p.min_count > p.max_count || p.max_count > p.size) {
        throw Error(ErrorKind::BadBounds, "need 0 <= min <= max <= n, got n=" +
                                              std::to_string(p.size) + " min=" +
                                              std::to_string(p.min_count) + " max=" +
                                              std::to_string(p.max_count));
    }
}

std::vector<PoolBounds> bounds_of(std::span<const RolePool> pools) {
    std::vector<PoolBounds> out;
    for (const auto& p : pools) {
        out.push_back({static_cast<int>(p.members.size()), p.min_count, p.max_count});
    }
    return out;
}

// Subsets of `members` (sorted) with size in [lo, hi], in lexicographic order.
void lex_subsets(const std::vector<AgentId>& members, std::size_t from, int lo, int hi,
                 std::vector<AgentId>& cur, std::vector<std::vector<AgentId>>& out) {
    if (static_cast<int>(cur.size()) >= lo) out.push_back(cur);
    if (static_cast<int>(cur.size()) == hi) return;
    for (std::size_t i = from; i < members.size(); ++i) {
        cur.push_back(members[i]);
        lex_subsets(members, i + 1, lo, hi, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::uint64_t count_teams(std::span<const PoolBounds> pools) {
    std::uint64_t total = 1;
    for (const auto& p : pools) {
        check_bounds(p);
        std::uint64_t sum = 0;
        for (int k = p.min_count; k <= p.max_count; ++k) {
            const std::uint64_t c = binomial(p.size, k);
            if (sum > UINT64_MAX - c) throw Error(ErrorKind::Overflow, "team count exceeds 64 bits");
            sum += c;
        }
        total = checked_mul(total, sum);
    }
    return total;
}

std::uint64_t count_teams(std::span<const RolePool> pools) {
    const auto b = bounds_of(pools);
    return count_teams(std::span<const PoolBounds>(b));
}

TeamEnumerator::TeamEnumerator(std::vector<RolePool> pools, std::uint64_t cap) {
    std::uint64_t total = 0;
    try {
        total = count_teams(std::span<const RolePool>(pools));
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::Overflow) throw;
        throw Error(ErrorKind::SpaceTooLarge, "team space exceeds 64 bits");
    }
    if (total > cap) {
        throw Error(ErrorKind::SpaceTooLarge,
                    std::to_string(total) + " team states exceed cap " + std::to_string(cap));
    }
    for (auto& p : pools) {
        std::sort(p.members.begin(), p.members.end());
        std::vector<AgentId> cur;
        std::vector<std::vector<AgentId>> subsets;
        lex_subsets(p.members, 0, p.min_count, p.max_count, cur, subsets);
        choices_.push_back(std::move(subsets));
    }
    digits_.assign(choices_.size(), 0);
}

std::optional<TeamState> TeamEnumerator::next() {
    while (!done_) {
        TeamState state;
        std::set<AgentId> used;
        bool disjoint = true;
        for (std::size_t r = 0; r < choices_.size(); ++r) {
            const auto& subset = choices_[r][digits_[r]];
            for (const auto& m : subset) disjoint = used.insert(m).second && disjoint;
            state.push_back(subset);
        }
        // Advance the odometer, last role fastest.
        std::size_t r = choices_.size();
        while (r > 0) {
            --r;
            if (++digits_[r] < choices_[r].size()) break;
            digits_[r] = 0;
            if (r == 0) done_ = true;
        }
        if (choices_.empty()) done_ = true;
        // Overlapping pools can put one member in two roles; such states are
        // not teams.
        if (disjoint) return state;
    }
    return std::nullopt;
}

std::vector<TeamState> enumerate_teams(std::span<const RolePool> pools, std::uint64_t cap) {
    TeamEnumerator it(std::vector<RolePool>(pools.begin(), pools.end()), cap);
    std::vector<TeamState> out;
    while (auto s = it.next()) out.push_back(std::move(*s));
    return out;
}

bool within_bounds(const TeamState& state, std::span<const RolePool> pools) {
    for (std::size_t r = 0; r < pools.size(); ++r) {
        const int k = r < state.size() ? static_cast<int>(state[r].size()) : 0;
        if (k < pools[r].min_count || k > pools[r].max_count) return false;
    }
    return true;
}

TeamState walk_step(const TeamState& state, std::span<const RolePool> pools, double q, Rng& rng) {
    if (q < 0.0 || q > 1.0) throw Error(ErrorKind::InvalidArgument, "bias q outside [0,1]");
    if (state.size() != pools.size()) {
        throw Error(ErrorKind::InvalidArgument, "team state and pools differ in role count");
    }

    std::set<AgentId> used;
    for (std::size_t r = 0; r < state.size(); ++r) {
        for (const auto& m : state[r]) {
            if (std::find(pools[r].members.begin(), pools[r].members.end(), m) ==
                pools[r].members.end()) {
                throw Error(ErrorKind::InvalidArgument, m + " is not eligible for role " +
                                                            std::to_string(r));
            }
            if (!used.insert(m).second) {
                throw Error(ErrorKind::InvalidArgument, m + " enrolled twice");
            }
        }
    }

    struct Move {
        std::size_t role;
        bool add;
        AgentId member;
    };
    std::vector<Move> toward;
    std::vector<Move> any;
    for (std::size_t r = 0; r < pools.size(); ++r) {
        const int k = static_cast<int>(state[r].size());
        std::vector<AgentId> free;
        for (const auto& m : pools[r].members) {
            if (!used.contains(m)) free.push_back(m);
        }
        std::sort(free.begin(), free.end());
        for (const auto& m : free) {
            if (k < pools[r].min_count) toward.push_back({r, true, m});
            if (k < pools[r].max_count) any.push_back({r, true, m});
        }
        for (const auto& m : state[r]) {
            if (k > pools[r].max_count) toward.push_back({r, false, m});
            any.push_back({r, false, m});
        }
    }

    const bool pick_toward = rng.bernoulli(q);
    const std::vector<Move>* moves = pick_toward ? &toward : &any;
    if (moves->empty()) moves = pick_toward ? &any : &toward;
    if (moves->empty()) return state;

    const Move& mv = (*moves)[rng.uniform_below(moves->size())];
    TeamState next = state;
    auto& slot = next[mv.role];
    if (mv.add) {
        slot.insert(std::lower_bound(slot.begin(), slot.end(), mv.member), mv.member);
    } else {
        slot.erase(std::find(slot.begin(), slot.end(), mv.member));
    }
    return next;
}

FormedTeam form_team(std::span<const RolePool> pools, double q, int max_steps, Rng& rng) {
    if (max_steps < 1) throw Error(ErrorKind::InvalidArgument, "max_steps must be >= 1");
    TeamState state(pools.size());
    FormedTeam result;
    while (true) {
        if (within_bounds(state, pools)) {
            result.team = state;
            return result;
        }
        if (result.steps == max_steps) return result;
        state = walk_step(state, pools, q, rng);
        ++result.steps;
    }
}

std::vector<RolePool> pools_for(const ServicingProtocol& protocol,
                                std::span<const SubscriptionRecord> registry,
                                const Ontology& ontology, const Population& agents) {
    std::vector<RolePool> pools;
    for (const auto& req : protocol.requirements) {
        pools.push_back({eligible(registry, req.role, ontology, agents), req.min_count,
                         req.max_count});
    }
    return pools;
}

}  // namespace resil
