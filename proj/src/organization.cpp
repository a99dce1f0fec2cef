#include "resil/organization.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <set>
#include <utility>

namespace resil {

std::string_view to_string(OrgStructure s) {
    switch (s) {
        case OrgStructure::Centralized: return "centralized";
        case OrgStructure::Hierarchical: return "hierarchical";
        case OrgStructure::Heterarchical: return "heterarchical";
        case OrgStructure::Fractal: return "fractal";
    }
    return "centralized";
}

bool Organization::has_node(const NodeId& id) const {
    return is_cc(id) || member(id) != nullptr;
}

bool Organization::is_cc(const NodeId& id) const { return cc_index(id).has_value(); }

std::optional<std::size_t> Organization::cc_index(const NodeId& id) const {
    auto it = std::find(cc_nodes.begin(), cc_nodes.end(), id);
    if (it == cc_nodes.end()) return std::nullopt;
    return static_cast<std::size_t>(it - cc_nodes.begin());
}

const Agent* Organization::member(const AgentId& id) const {
    for (const auto& a : members) {
        if (a.id == id) return &a;
    }
    return nullptr;
}

std::size_t Organization::link_count() const {
    std::set<std::pair<NodeId, NodeId>> links;
    for (const auto& c : channels) {
        links.insert(std::minmax(c.from, c.to));
    }
    return links.size();
}

int Organization::layer_count() const {
    int top = -1;
    for (const auto& [node, layer] : layer_of) top = std::max(top, layer);
    return top + 1;
}

namespace {

void require_unique(const std::vector<Agent>& agents) {
    std::set<AgentId> seen;
    for (const auto& a : agents) {
        if (!seen.insert(a.id).second) {
            throw Error(ErrorKind::InvalidArgument, "duplicate member id " + a.id);
        }
    }
}

void add_pair(Organization& org, const NodeId& lower, const NodeId& upper, Tick delay,
              ChannelKind up_kind) {
    org.channels.push_back({lower, upper, delay, up_kind});
    org.channels.push_back({upper, lower, delay, ChannelKind::Control});
}

}  // namespace

Organization build_safety_net(const std::vector<Agent>& patients, int devices_per_patient,
                              const std::vector<Agent>& doctors,
                              const std::map<AgentId, AgentId>& assignment, Tick hop_delay) {
    if (devices_per_patient < 1) {
        throw Error(ErrorKind::InvalidArgument, "devices_per_patient must be >= 1");
    }
    if (hop_delay < 0) throw Error(ErrorKind::InvalidArgument, "hop_delay must be >= 0");

    Organization org;
    org.structure = OrgStructure::Hierarchical;
    org.hop_delay = hop_delay;

    std::set<AgentId> doctor_ids;
    for (const auto& d : doctors) doctor_ids.insert(d.id);

    for (const auto& p : patients) {
        auto it = assignment.find(p.id);
        if (it == assignment.end()) {
            throw Error(ErrorKind::UnassignedPatient, p.id);
        }
        if (!doctor_ids.contains(it->second)) {
            throw Error(ErrorKind::UnassignedPatient, p.id + " assigned to unknown doctor " + it->second);
        }
    }

    for (Agent d : doctors) {
        d.exercised_behavior = BehaviorClass::ComplexMultivariateExtrapolative;
        d.layer = 0;
        org.members.push_back(std::move(d));
    }
    for (const auto& src : patients) {
        Agent p = src;
        p.exercised_behavior = BehaviorClass::Passive;
        p.layer = 0;
        org.members.push_back(p);

        std::vector<NodeId> chain{p.id};
        for (int k = 1; k <= devices_per_patient; ++k) {
            Agent dev = make_agent(p.id + ".dev" + std::to_string(k),
                                   PersonaClass::SimpleControlMechanism, {}, p.location);
            dev.exercised_behavior = BehaviorClass::Teleological;
            dev.solution_tag = "safety-net-device";
            chain.push_back(dev.id);
            org.members.push_back(std::move(dev));
        }
        chain.push_back(assignment.at(p.id));
        for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
            add_pair(org, chain[i], chain[i + 1], hop_delay, ChannelKind::Feedback);
        }
        org.alarm_path[p.id] = std::vector<NodeId>(chain.begin() + 1, chain.end());
    }
    require_unique(org.members);
    for (const auto& m : org.members) org.layer_of[m.id] = 0;
    return org;
}

Organization build_mac(const std::vector<Agent>& members, Tick cc_processing_time,
                       Tick hop_delay) {
    if (members.empty()) throw Error(ErrorKind::EmptyMembership, "a MAC needs members");
    Organization org = build_fso({members}, cc_processing_time, hop_delay);
    org.structure = OrgStructure::Centralized;
    return org;
}

Organization build_fso(const std::vector<std::vector<Agent>>& layers, Tick cc_processing_time,
                       Tick hop_delay) {
    if (layers.empty()) throw Error(ErrorKind::EmptyLayer, "no layers");
    if (hop_delay < 0 || cc_processing_time < 0) {
        throw Error(ErrorKind::InvalidArgument, "delays must be >= 0");
    }
    Organization org;
    org.structure = OrgStructure::Fractal;
    org.hop_delay = hop_delay;
    org.cc_processing_time = cc_processing_time;

    for (std::size_t i = 0; i < layers.size(); ++i) {
        if (layers[i].empty()) {
            throw Error(ErrorKind::EmptyLayer, "layer " + std::to_string(i) + " is empty");
        }
        const int layer = static_cast<int>(i);
        const NodeId cc = "cc" + std::to_string(i);
        org.cc_nodes.push_back(cc);
        org.layer_of[cc] = layer;
        for (Agent a : layers[i]) {
            a.exercised_behavior = a.intrinsic_behavior;
            a.layer = layer;
            org.layer_of[a.id] = layer;
            add_pair(org, a.id, cc, hop_delay, ChannelKind::Feedback);
            org.members.push_back(std::move(a));
        }
        if (i > 0) {
            add_pair(org, org.cc_nodes[i - 1], cc, hop_delay, ChannelKind::Escalation);
        }
    }
    require_unique(org.members);
    return org;
}

Organization build_heterarchy(const std::vector<Agent>& members, Tick hop_delay) {
    if (members.empty()) throw Error(ErrorKind::EmptyMembership, "a heterarchy needs members");
    Organization org;
    org.structure = OrgStructure::Heterarchical;
    org.hop_delay = hop_delay;
    for (Agent a : members) {
        a.exercised_behavior = a.intrinsic_behavior;
        a.layer = 0;
        org.layer_of[a.id] = 0;
        org.members.push_back(std::move(a));
    }
    require_unique(org.members);
    for (const auto& a : org.members) {
        for (const auto& b : org.members) {
            if (a.id != b.id) org.channels.push_back({a.id, b.id, hop_delay, ChannelKind::Peer});
        }
    }
    return org;
}

Tick propagation_delay(const Organization& org, const NodeId& from, const NodeId& to) {
    if (!org.has_node(from)) throw Error(ErrorKind::UnknownNode, from);
    if (!org.has_node(to)) throw Error(ErrorKind::UnknownNode, to);
    if (from == to) return 0;

    std::map<NodeId, std::vector<const Channel*>> out;
    for (const auto& c : org.channels) out[c.from].push_back(&c);

    std::map<NodeId, Tick> dist{{from, 0}};
    using Item = std::pair<Tick, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> frontier;
    frontier.emplace(0, from);
    while (!frontier.empty()) {
        auto [d, node] = frontier.top();
        frontier.pop();
        if (d > dist[node]) continue;
        if (node == to) return d;
        for (const Channel* c : out[node]) {
            const Tick nd = d + c->hop_delay;
            auto it = dist.find(c->to);
            if (it == dist.end() || nd < it->second) {
                dist[c->to] = nd;
                frontier.emplace(nd, c->to);
            }
        }
    }
    throw Error(ErrorKind::Unreachable, from + " -> " + to);
}

void check_structure(const Organization& org) {
    for (const auto& c : org.channels) {
        if (!org.has_node(c.from) || !org.has_node(c.to)) {
            throw Error(ErrorKind::InvalidArgument, "channel endpoint missing: " + c.from + " -> " + c.to);
        }
    }
    if (org.structure == OrgStructure::Hierarchical) {
        // Control edges must form a forest: at most one controller per node
        // and no directed cycle.
        std::map<NodeId, NodeId> controller;
        for (const auto& c : org.channels) {
            if (c.kind != ChannelKind::Control) continue;
            if (!controller.emplace(c.to, c.from).second) {
                throw Error(ErrorKind::InvalidArgument, c.to + " has two controllers");
            }
        }
        for (const auto& [node, parent] : controller) {
            std::set<NodeId> seen{node};
            NodeId cur = parent;
            while (true) {
                if (!seen.insert(cur).second) {
                    throw Error(ErrorKind::InvalidArgument, "control cycle through " + node);
                }
                auto it = controller.find(cur);
                if (it == controller.end()) break;
                cur = it->second;
            }
        }
    }
    if (org.structure == OrgStructure::Fractal) {
        for (const auto& m : org.members) {
            if (!org.layer_of.contains(m.id)) {
                throw Error(ErrorKind::InvalidArgument, m.id + " has no layer");
            }
        }
        std::map<int, int> ccs_per_layer;
        for (const auto& cc : org.cc_nodes) ccs_per_layer[org.layer_of.at(cc)]++;
        for (int l = 0; l < org.layer_count(); ++l) {
            if (ccs_per_layer[l] != 1) {
                throw Error(ErrorKind::InvalidArgument,
                            "layer " + std::to_string(l) + " must have exactly one CC");
            }
        }
    }
}

OrgState OrgState::initial(const Organization& org) {
    OrgState s;
    for (const auto& m : org.members) s.agents.emplace(m.id, m);
    for (const auto& id : org.cc_nodes) {
        CCState cc;
        cc.cc_id = id;
        const int layer = org.layer_of.at(id);
        for (const auto& [aid, a] : s.agents) {
            if (a.layer == layer && a.availability == Availability::Idle) {
                cc.registry.push_back(subscribe(a));
            }
        }
        s.ccs.push_back(std::move(cc));
    }
    return s;
}

CCState* OrgState::cc(const NodeId& id) {
    for (auto& c : ccs) {
        if (c.cc_id == id) return &c;
    }
    return nullptr;
}

const CCState* OrgState::cc(const NodeId& id) const {
    return const_cast<OrgState*>(this)->cc(id);
}

const CCState* OrgState::cc_of_layer(int layer) const {
    if (layer < 0 || static_cast<std::size_t>(layer) >= ccs.size()) return nullptr;
    return &ccs[static_cast<std::size_t>(layer)];
}

void fail_node(const Organization& org, OrgState& state, const NodeId& node) {
    if (CCState* cc = state.cc(node)) {
        cc->alive = false;
        cc->busy = false;
        ++cc->epoch;
        return;
    }
    auto it = state.agents.find(node);
    if (it == state.agents.end() || !org.has_node(node)) throw Error(ErrorKind::UnknownNode, node);
    it->second.availability = Availability::Failed;
}

void recover_node(const Organization& org, OrgState& state, const NodeId& node) {
    if (CCState* cc = state.cc(node)) {
        cc->alive = true;
        return;
    }
    auto it = state.agents.find(node);
    if (it == state.agents.end() || !org.has_node(node)) throw Error(ErrorKind::UnknownNode, node);
    if (it->second.availability == Availability::Failed) {
        it->second.availability = Availability::Idle;
    }
}

bool matching_live(const Organization& org, const OrgState& state) {
    auto working = [&](const NodeId& id) {
        auto it = state.agents.find(id);
        return it != state.agents.end() && it->second.availability != Availability::Failed;
    };
    if (!org.cc_nodes.empty()) {
        for (const auto& c : org.channels) {
            const CCState* cc = state.cc(c.to);
            if (cc && cc->alive && working(c.from)) return true;
        }
        return false;
    }
    if (org.structure == OrgStructure::Hierarchical) {
        for (const auto& [patient, path] : org.alarm_path) {
            if (!working(patient)) continue;
            if (std::all_of(path.begin(), path.end(), working)) return true;
        }
        return false;
    }
    int up = 0;
    for (const auto& [id, a] : state.agents) {
        if (a.availability != Availability::Failed) ++up;
    }
    return up >= 2;
}

}  // namespace resil
