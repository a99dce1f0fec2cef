#include "resil/fso.hpp"

#include <algorithm>

namespace resil {

int escalation_depth(const EscalationResult& r, int origin_layer) {
    return std::visit([&](const auto& v) { return v.layer_reached - origin_layer; }, r);
}

EscalationResult escalate(const Organization& org, const OrgState& state, int origin_layer,
                          const Notification& n, const ServicingProtocol& protocol,
                          const Ontology& ontology, int threshold) {
    if (threshold < 0) throw Error(ErrorKind::InvalidArgument, "threshold must be >= 0");
    const int layers = static_cast<int>(state.ccs.size());
    if (origin_layer < 0 || origin_layer >= layers) {
        throw Error(ErrorKind::InvalidArgument, "no layer " + std::to_string(origin_layer));
    }
    if (!state.ccs[static_cast<std::size_t>(origin_layer)].alive) {
        throw Error(ErrorKind::OriginCCDead, org.cc_nodes[static_cast<std::size_t>(origin_layer)]);
    }
    if (protocol.trigger_kind != n.kind) {
        throw Error(ErrorKind::KindMismatch,
                    "notification '" + n.kind + "' vs protocol trigger '" + protocol.trigger_kind + "'");
    }

    const int last = std::min(layers - 1, origin_layer + threshold);
    std::vector<const SubscriptionRecord*> pool;
    std::vector<int> span;
    MissingRoles remaining;
    for (int layer = origin_layer; layer <= last; ++layer) {
        const CCState& cc = state.ccs[static_cast<std::size_t>(layer)];
        if (!cc.alive) continue;
        span.push_back(layer);
        for (const auto& rec : cc.registry) pool.push_back(&rec);
        MatchResult m = match_candidates(pool, n, protocol, ontology, state.agents);
        if (auto* a = std::get_if<Assignment>(&m)) {
            return Resolved{layer, std::move(*a), std::move(span)};
        }
        remaining = std::get<MissingRoles>(std::move(m));
    }
    return Unserviced{last, std::move(remaining), std::move(span)};
}

AgentId elect_cc(std::span<const Agent> participants) {
    if (participants.empty()) throw Error(ErrorKind::EmptyParticipants, "cannot elect a CC");
    const Agent* best = &participants.front();
    for (const Agent& a : participants) {
        const int oa = ordinal(a.intrinsic_behavior);
        const int ob = ordinal(best->intrinsic_behavior);
        if (oa > ob || (oa == ob && a.id < best->id)) best = &a;
    }
    return best->id;
}

Son spawn_son(const Resolved& resolved, const ServicingProtocol& protocol, Tick now,
              Population& agents, std::uint64_t son_id) {
    std::vector<Agent> members;
    for (const auto& slot : resolved.assignment) {
        for (const auto& id : slot) members.push_back(agents.at(id));
    }
    if (members.empty()) throw Error(ErrorKind::InvalidArgument, "resolution enrolled nobody");

    Son son;
    son.id = son_id;
    son.cc = elect_cc(members);
    for (const auto& m : members) {
        son.participants.push_back(m.id);
        agents.at(m.id).availability = Availability::Busy;
    }
    std::sort(son.participants.begin(), son.participants.end());
    son.objective = protocol.id;
    son.created = now;
    son.lifespan = protocol.son_lifespan;
    son.span = resolved.span;
    return son;
}

std::vector<AgentId> dissolve_son(const Son& son, Tick now, Population& agents) {
    if (now < son.created) throw Error(ErrorKind::InvalidArgument, "dissolution before creation");
    std::vector<AgentId> released;
    for (const auto& id : son.participants) {
        Agent& a = agents.at(id);
        if (a.availability == Availability::Busy) {
            a.availability = Availability::Idle;
            released.push_back(id);
        }
    }
    return released;
}

}  // namespace resil
