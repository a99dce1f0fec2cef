#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "resil/agents.hpp"
#include "resil/core.hpp"

namespace resil {

enum class OrgStructure { Centralized, Hierarchical, Heterarchical, Fractal };

std::string_view to_string(OrgStructure s);

enum class ChannelKind {
    Control,     // command flow, downward
    Feedback,    // observations and notifications, upward
    Escalation,  // FSO: layer CC to the CC of the next layer up
    Peer,        // heterarchy: member to member
};

struct Channel {
    NodeId from;
    NodeId to;
    Tick hop_delay = 1;
    ChannelKind kind = ChannelKind::Feedback;
};

/// Topology of one collective-assistance organization. Members carry the
/// behavior class the organization makes them exercise.
struct Organization {
    OrgStructure structure = OrgStructure::Centralized;
    std::vector<Agent> members;
    /// Coordination centers; for the fractal variant index i is layer i.
    std::vector<NodeId> cc_nodes;
    std::vector<Channel> channels;
    std::map<NodeId, int> layer_of;
    Tick hop_delay = 1;
    Tick cc_processing_time = 0;

    /// Safety net only: patient -> [sensor, relay devices..., doctor].
    std::map<AgentId, std::vector<NodeId>> alarm_path;

    bool has_node(const NodeId& id) const;
    bool is_cc(const NodeId& id) const;
    std::optional<std::size_t> cc_index(const NodeId& id) const;
    const Agent* member(const AgentId& id) const;
    std::size_t node_count() const { return members.size() + cc_nodes.size(); }
    /// Number of unordered node pairs joined by at least one channel.
    std::size_t link_count() const;
    int layer_count() const;
};

/// Patients feed devices which feed the assigned doctor; commands flow back
/// down the same chain. Devices are generated, `devices_per_patient` per
/// patient, and named "<patient>.dev<k>".
Organization build_safety_net(const std::vector<Agent>& patients, int devices_per_patient,
                              const std::vector<Agent>& doctors,
                              const std::map<AgentId, AgentId>& assignment, Tick hop_delay);

/// A star around one coordination center "cc0". Members exercise their
/// intrinsic behavior.
Organization build_mac(const std::vector<Agent>& members, Tick cc_processing_time,
                       Tick hop_delay);

/// One MAC-like star per layer (CC "cc<i>"), adjacent layer CCs linked.
Organization build_fso(const std::vector<std::vector<Agent>>& layers, Tick cc_processing_time,
                       Tick hop_delay);

/// Fully connected peers, no coordination center.
Organization build_heterarchy(const std::vector<Agent>& members, Tick hop_delay);

/// Least total hop delay along directed channels. Throws UnknownNode or
/// Unreachable.
Tick propagation_delay(const Organization& org, const NodeId& from, const NodeId& to);

/// Structural checks: channel endpoints exist, control edges of a hierarchy
/// form a forest, every fractal node has a layer and every layer one CC.
/// Throws InvalidArgument naming the violation.
void check_structure(const Organization& org);

struct CCState {
    NodeId cc_id;
    std::vector<SubscriptionRecord> registry;
    std::deque<NotificationId> inbox;
    bool alive = true;
    bool busy = false;
    /// Bumped on every crash so in-flight processing completions can be
    /// recognized as stale.
    std::uint64_t epoch = 0;
};

/// Mutable runtime state of an organization.
struct OrgState {
    Population agents;
    std::vector<CCState> ccs;

    /// Every member subscribes to the CC of its layer.
    static OrgState initial(const Organization& org);

    CCState* cc(const NodeId& id);
    const CCState* cc(const NodeId& id) const;
    /// CC serving `layer`, or nullptr when the organization has none.
    const CCState* cc_of_layer(int layer) const;
};

/// Agents become failed; CCs stop dequeuing with their inbox frozen.
/// Throws UnknownNode.
void fail_node(const Organization& org, OrgState& state, const NodeId& node);
/// Reverses fail_node: a failed agent becomes idle, a CC becomes alive.
void recover_node(const Organization& org, OrgState& state, const NodeId& node);

/// Whether the organization can still match requests: some alive CC is
/// adjacent to a working member; without CCs, some working doctor/root is
/// reachable from a working leaf (hierarchy) or two members still work
/// (heterarchy).
bool matching_live(const Organization& org, const OrgState& state);

}  // namespace resil
