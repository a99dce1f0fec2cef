#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "resil/agents.hpp"
#include "resil/matching.hpp"
#include "resil/organization.hpp"

namespace resil {

enum class PerceptionMode { Individual, Collective };

std::string_view to_string(PerceptionMode m);
PerceptionMode perception_mode_from_string(std::string_view s);

namespace rec {

struct RunStarted {
    std::string scenario;
    std::uint64_t seed = 0;
    Tick horizon = 0;
    OrgStructure structure = OrgStructure::Centralized;
    double c_def = 0.0;
};
/// The organization's view of a member at time zero (behaviors, tag...).
struct MemberSnapshot {
    Agent agent;
};
struct Subscribed {
    AgentId agent;
    NodeId cc;
};
struct Notified {
    NotificationId id = 0;
    std::string kind;
    AgentId source;
    int layer = 0;
    Tick deadline = 0;
};
/// Safety net: the alarm reached the doctor.
struct Alerted {
    NotificationId id = 0;
    AgentId doctor;
    Tick latency = 0;
};
struct Matched {
    NotificationId id = 0;
    NodeId cc;
    std::vector<AgentId> participants;
    int depth = 0;
};
/// Final: the switchboard could not staff the protocol.
struct Unmatched {
    NotificationId id = 0;
    NodeId cc;
    MissingRoles missing;
    int depth = 0;
};
/// Final for every reason except "pending", which marks requests still
/// open at the horizon.
struct Dropped {
    NotificationId id = 0;
    std::string reason;
};
struct SonCreated {
    std::uint64_t son = 0;
    NotificationId id = 0;
    AgentId cc;
    std::vector<AgentId> participants;
    std::vector<int> span;
    Tick lifespan = 0;
};
struct SonDissolved {
    std::uint64_t son = 0;
    bool expired = false;
};
struct ServiceStarted {
    NotificationId id = 0;
};
struct ServiceCompleted {
    NotificationId id = 0;
    Tick latency = 0;
    bool in_time = false;
};
struct NodeFailed {
    NodeId node;
};
struct NodeRecovered {
    NodeId node;
};
struct BlackSwanStruck {
    std::string tag;
    int struck = 0;
};
struct CrisisChanged {
    bool open = false;
};
struct Defected {
    AgentId agent;
    double cohesion = 0.0;
};
struct CohesionSample {
    AgentId agent;
    double cohesion = 0.0;
    Availability availability = Availability::Idle;
};
/// Written after the cohesion samples of each cohesion tick.
struct LivenessSample {
    bool matching_live = true;
};
/// Logged when the threat appears; `at` is when this agent reacts.
struct Reacted {
    std::string threat;
    AgentId agent;
    Tick at = 0;
    PerceptionMode mode = PerceptionMode::Individual;
};
struct RunEnded {};

}  // namespace rec

using TraceRecord =
    std::variant<rec::RunStarted, rec::MemberSnapshot, rec::Subscribed, rec::Notified,
                 rec::Alerted, rec::Matched, rec::Unmatched, rec::Dropped, rec::SonCreated,
                 rec::SonDissolved, rec::ServiceStarted, rec::ServiceCompleted, rec::NodeFailed,
                 rec::NodeRecovered, rec::BlackSwanStruck, rec::CrisisChanged, rec::Defected,
                 rec::CohesionSample, rec::LivenessSample, rec::Reacted, rec::RunEnded>;

struct TraceEntry {
    Tick time = 0;
    TraceRecord record;
};

/// Append-only, time-ordered log of one run.
class Trace {
public:
    template <class R>
    void add(Tick time, R record) {
        if (!entries_.empty() && time < entries_.back().time) {
            throw Error(ErrorKind::InvalidArgument, "trace time went backwards");
        }
        entries_.push_back({time, TraceRecord(std::move(record))});
    }

    const std::vector<TraceEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

    template <class R>
    std::vector<std::pair<Tick, const R*>> select() const {
        std::vector<std::pair<Tick, const R*>> out;
        for (const auto& e : entries_) {
            if (const R* r = std::get_if<R>(&e.record)) out.emplace_back(e.time, r);
        }
        return out;
    }

    template <class R>
    std::size_t count() const {
        std::size_t n = 0;
        for (const auto& e : entries_) n += std::holds_alternative<R>(e.record) ? 1 : 0;
        return n;
    }

    /// One line per record; deterministic text.
    void write_log(std::ostream& os) const;
    std::string to_log() const;

private:
    std::vector<TraceEntry> entries_;
};

std::string format_line(const TraceEntry& e);

}  // namespace resil
