#include "resil/simulation.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <tuple>

#include "resil/fso.hpp"
#include "resil/matching.hpp"
#include "resil/rng.hpp"

namespace resil {

std::vector<Reaction> propagate_perception(const Organization& org, const OrgState& state,
                                           const PerceptionEvent& e, PerceptionMode mode) {
    auto working = [&](const NodeId& id) {
        auto it = state.agents.find(id);
        return it != state.agents.end() && it->second.can_serve();
    };

    std::map<NodeId, Tick> dist;
    for (const auto& [id, a] : state.agents) {
        if (!org.member(id) || !a.can_serve()) continue;
        if (distance(a.location, e.location) <= a.perception_radius) dist[id] = 0;
    }

    if (mode == PerceptionMode::Collective && !dist.empty()) {
        using Item = std::pair<Tick, NodeId>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> frontier;
        for (const auto& [id, d] : dist) frontier.emplace(d, id);
        while (!frontier.empty()) {
            auto [d, u] = frontier.top();
            frontier.pop();
            if (d > dist.at(u)) continue;
            for (const auto& c : org.channels) {
                if (c.from != u) continue;
                Tick cost = c.hop_delay;
                if (const CCState* cc = state.cc(c.to)) {
                    if (!cc->alive) continue;
                    cost += org.cc_processing_time;
                } else if (!working(c.to)) {
                    continue;
                }
                auto it = dist.find(c.to);
                if (it == dist.end() || d + cost < it->second) {
                    dist[c.to] = d + cost;
                    frontier.emplace(d + cost, c.to);
                }
            }
        }
    }

    std::vector<Reaction> out;
    for (const auto& [id, d] : dist) {
        if (org.is_cc(id)) continue;
        out.push_back({id, e.time + d});
    }
    return out;
}

namespace {

enum class EvKind {
    Notify,
    Publish,
    CCProcess,
    EnrollStep,
    ServiceComplete,
    Fail,
    Recover,
    BlackSwan,
    CrisisStart,
    CrisisEnd,
    SONDissolve,
    CohesionTick,
    Perceive,
};

struct Event {
    Tick time = 0;
    std::uint64_t seq = 0;
    EvKind kind = EvKind::Notify;
    NotificationId id = 0;
    std::string name;  // node, CC or tag
    std::uint64_t number = 0;  // CC epoch, SON id or perception index
};

struct Later {
    bool operator()(const Event& a, const Event& b) const {
        return std::tie(a.time, a.seq) > std::tie(b.time, b.seq);
    }
};

struct RequestState {
    bool open = true;
    std::vector<AgentId> participants;
    std::optional<std::uint64_t> son;
};

class Runner {
public:
    Runner(const Scenario& sc, const Organization& org, std::uint64_t seed)
        : sc_(sc), org_(org), seed_(seed), state_(OrgState::initial(org)), rng_(seed) {}

    Trace run() {
        start();
        while (!queue_.empty() && queue_.top().time < sc_.horizon) {
            Event e = queue_.top();
            queue_.pop();
            now_ = e.time;
            dispatch(e);
        }
        now_ = sc_.horizon;
        for (std::size_t i = 0; i < requests_.size(); ++i) {
            if (requests_[i].open) drop(i, "pending");
        }
        trace_.add(now_, rec::RunEnded{});
        return std::move(trace_);
    }

private:
    void push(Tick time, EvKind kind, NotificationId id = 0, std::string name = {},
              std::uint64_t number = 0) {
        queue_.push(Event{time, seq_++, kind, id, std::move(name), number});
    }

    const ServicingProtocol& protocol_of(NotificationId id) const {
        return *sc_.protocol_for(notes_[id].kind);
    }

    bool is_safety_net() const { return org_.structure == OrgStructure::Hierarchical; }

    void start() {
        trace_.add(0, rec::RunStarted{sc_.name, seed_, sc_.horizon, org_.structure,
                                      sc_.cohesion.c_def});
        std::vector<Agent> members = org_.members;
        std::sort(members.begin(), members.end(),
                  [](const Agent& a, const Agent& b) { return a.id < b.id; });
        for (auto& m : members) trace_.add(0, rec::MemberSnapshot{std::move(m)});
        for (const auto& cc : state_.ccs) {
            for (const auto& r : cc.registry) trace_.add(0, rec::Subscribed{r.identity, cc.cc_id});
        }

        for (const auto& f : sc_.faults) {
            switch (f.type) {
                case FaultEntry::Type::Fail: push(f.at, EvKind::Fail, 0, f.target); break;
                case FaultEntry::Type::Recover: push(f.at, EvKind::Recover, 0, f.target); break;
                case FaultEntry::Type::BlackSwan: push(f.at, EvKind::BlackSwan, 0, f.target); break;
                case FaultEntry::Type::CrisisStart: push(f.at, EvKind::CrisisStart); break;
                case FaultEntry::Type::CrisisEnd: push(f.at, EvKind::CrisisEnd); break;
            }
        }
        for (std::size_t i = 0; i < sc_.perceptions.size(); ++i) {
            push(sc_.perceptions[i].event.time, EvKind::Perceive, 0, {}, i);
        }

        WorkloadSpec spec;
        spec.horizon = (sc_.horizon + sc_.time_scale - 1) / sc_.time_scale;
        const auto fallback = default_sources(sc_);
        for (auto w : sc_.workload) {
            if (w.sources.empty()) w.sources = fallback;
            spec.streams.push_back(std::move(w));
        }
        for (auto& n : generate_workload(spec, state_.agents, rng_)) {
            n.time *= sc_.time_scale;
            if (n.time >= sc_.horizon) break;
            push(n.time, EvKind::Notify, n.id);
            notes_.push_back(std::move(n));
        }
        requests_.resize(notes_.size());

        push(0, EvKind::CohesionTick);
    }

    void dispatch(const Event& e) {
        switch (e.kind) {
            case EvKind::Notify: notify(e.id); break;
            case EvKind::Publish: publish(e.id, e.name); break;
            case EvKind::CCProcess: cc_process(e.name, e.number); break;
            case EvKind::EnrollStep: enroll(e.id); break;
            case EvKind::ServiceComplete: complete(e.id); break;
            case EvKind::Fail: fail(e.name); break;
            case EvKind::Recover: recover(e.name); break;
            case EvKind::BlackSwan: black_swan(e.name); break;
            case EvKind::CrisisStart:
                crisis_ = true;
                trace_.add(now_, rec::CrisisChanged{true});
                break;
            case EvKind::CrisisEnd:
                crisis_ = false;
                trace_.add(now_, rec::CrisisChanged{false});
                break;
            case EvKind::SONDissolve: son_expired(e.number); break;
            case EvKind::CohesionTick: cohesion_tick(); break;
            case EvKind::Perceive: perceive(e.number); break;
        }
    }

    void drop(NotificationId id, std::string reason) {
        requests_[id].open = false;
        trace_.add(now_, rec::Dropped{id, std::move(reason)});
    }

    void notify(NotificationId id) {
        const Notification& n = notes_[id];
        const ServicingProtocol& p = protocol_of(id);
        const Agent& src = state_.agents.at(n.source);
        trace_.add(now_, rec::Notified{id, n.kind, n.source, src.layer, p.deadline});
        if (!src.can_serve()) return drop(id, "source_down");

        if (is_safety_net()) {
            const auto& path = org_.alarm_path.at(n.source);
            for (std::size_t i = 0; i + 1 < path.size(); ++i) {
                if (state_.agents.at(path[i]).availability == Availability::Failed) {
                    return drop(id, "alarm_path_down");
                }
            }
            // Raised by the first device; each further node costs one hop.
            const Tick hops = static_cast<Tick>(path.size()) - 1;
            push(now_ + hops * org_.hop_delay, EvKind::Publish, id, path.back());
            return;
        }
        push(now_ + org_.hop_delay, EvKind::Publish, id,
             org_.cc_nodes.at(static_cast<std::size_t>(src.layer)));
    }

    void publish(NotificationId id, const NodeId& target) {
        if (is_safety_net()) {
            trace_.add(now_, rec::Alerted{id, target, now_ - notes_[id].time});
            doctor_queue_[target].push_back(id);
            start_doctor(target);
            return;
        }
        CCState& cc = *state_.cc(target);
        cc.inbox.push_back(id);
        kick(cc);
    }

    void kick(CCState& cc) {
        if (!cc.alive || cc.busy || cc.inbox.empty()) return;
        cc.busy = true;
        push(now_ + org_.cc_processing_time, EvKind::CCProcess, 0, cc.cc_id, cc.epoch);
    }

    void cc_process(const NodeId& cc_id, std::uint64_t epoch) {
        CCState& cc = *state_.cc(cc_id);
        if (!cc.alive || cc.epoch != epoch) return;
        const NotificationId id = cc.inbox.front();
        cc.inbox.pop_front();
        cc.busy = false;
        match(id, static_cast<int>(*org_.cc_index(cc_id)));
        kick(cc);
    }

    void match(NotificationId id, int layer) {
        const Notification& n = notes_[id];
        const ServicingProtocol& p = protocol_of(id);
        const auto li = static_cast<std::size_t>(layer);
        RequestState& rs = requests_[id];

        if (org_.structure != OrgStructure::Fractal) {
            MatchResult m = match_notification(state_.ccs[li], n, p, sc_.ontology, state_.agents);
            if (auto* missing = std::get_if<MissingRoles>(&m)) {
                trace_.add(now_, rec::Unmatched{id, org_.cc_nodes[li], *missing, 0});
                rs.open = false;
                return;
            }
            for (const auto& slot : std::get<Assignment>(m)) {
                for (const auto& a : slot) {
                    state_.agents.at(a).availability = Availability::Busy;
                    rs.participants.push_back(a);
                }
            }
            trace_.add(now_, rec::Matched{id, org_.cc_nodes[li], rs.participants, 0});
            push(now_ + org_.hop_delay, EvKind::EnrollStep, id);
            return;
        }

        EscalationResult r = escalate(org_, state_, layer, n, p, sc_.ontology,
                                      sc_.organization.escalation_threshold);
        const int depth = escalation_depth(r, layer);
        if (auto* u = std::get_if<Unserviced>(&r)) {
            trace_.add(now_, rec::Unmatched{id, org_.cc_nodes[li], u->remaining, depth});
            rs.open = false;
            return;
        }
        const Resolved& res = std::get<Resolved>(r);
        for (const auto& slot : res.assignment) {
            rs.participants.insert(rs.participants.end(), slot.begin(), slot.end());
        }
        Son son = spawn_son(res, p, now_, state_.agents, next_son_++);
        trace_.add(now_, rec::Matched{id, org_.cc_nodes[static_cast<std::size_t>(res.layer_reached)],
                                      rs.participants, depth});
        trace_.add(now_, rec::SonCreated{son.id, id, son.cc, son.participants, son.span,
                                         son.lifespan});
        // The request climbed `depth` escalation links before dispatch.
        const Tick dispatch = now_ + depth * org_.hop_delay + org_.hop_delay;
        const Tick completion = dispatch + p.service_duration;
        rs.son = son.id;
        if (son.expires_before(completion)) {
            push(son.created + son.lifespan, EvKind::SONDissolve, id, {}, son.id);
        } else {
            push(dispatch, EvKind::EnrollStep, id);
        }
        son_request_[son.id] = id;
        sons_.emplace(son.id, std::move(son));
    }

    void enroll(NotificationId id) {
        trace_.add(now_, rec::ServiceStarted{id});
        push(now_ + protocol_of(id).service_duration, EvKind::ServiceComplete, id);
    }

    void release(const std::vector<AgentId>& ids) {
        for (const auto& a : ids) {
            Agent& ag = state_.agents.at(a);
            if (ag.availability == Availability::Busy) ag.availability = Availability::Idle;
        }
    }

    void complete(NotificationId id) {
        RequestState& rs = requests_[id];
        const bool lost = std::any_of(rs.participants.begin(), rs.participants.end(), [&](const AgentId& a) {
            return state_.agents.at(a).availability == Availability::Failed;
        });
        if (lost) {
            drop(id, "participant_failed");
        } else {
            const Tick latency = now_ - notes_[id].time;
            trace_.add(now_, rec::ServiceCompleted{id, latency, latency <= protocol_of(id).deadline});
            rs.open = false;
            for (const auto& a : rs.participants) {
                if (state_.agents.at(a).availability == Availability::Busy) completed_.insert(a);
            }
        }
        if (rs.son) {
            dissolve_son(sons_.at(*rs.son), now_, state_.agents);
            trace_.add(now_, rec::SonDissolved{*rs.son, false});
            sons_.erase(*rs.son);
        } else {
            release(rs.participants);
        }
        if (is_safety_net()) start_doctor(rs.participants.front());
    }

    void son_expired(std::uint64_t son_id) {
        dissolve_son(sons_.at(son_id), now_, state_.agents);
        trace_.add(now_, rec::SonDissolved{son_id, true});
        sons_.erase(son_id);
        drop(son_request_.at(son_id), "son_expired");
    }

    void start_doctor(const AgentId& doctor) {
        auto& queue = doctor_queue_[doctor];
        Agent& d = state_.agents.at(doctor);
        if (queue.empty() || d.availability != Availability::Idle) return;
        const NotificationId id = queue.front();
        queue.pop_front();
        d.availability = Availability::Busy;
        requests_[id].participants = {doctor};
        enroll(id);
    }

    void fail(const NodeId& node) {
        fail_node(org_, state_, node);
        trace_.add(now_, rec::NodeFailed{node});
    }

    void recover(const NodeId& node) {
        recover_node(org_, state_, node);
        trace_.add(now_, rec::NodeRecovered{node});
        if (CCState* cc = state_.cc(node)) {
            kick(*cc);
        } else if (doctor_queue_.contains(node)) {
            start_doctor(node);
        }
    }

    void black_swan(const std::string& tag) {
        int struck = 0;
        for (const auto& [id, a] : state_.agents) {
            if (a.solution_tag != tag) continue;
            fail(id);
            ++struck;
        }
        trace_.add(now_, rec::BlackSwanStruck{tag, struck});
    }

    void cohesion_tick() {
        const CohesionParams& cp = sc_.cohesion;
        for (auto& [id, a] : state_.agents) {
            if (!a.can_serve()) continue;
            if (bop_gap(a) > 0) a = update_cohesion(a, Stimulus::BopTick, cp);
            if (a.can_serve() && completed_.contains(id)) {
                a = update_cohesion(a, crisis_ ? Stimulus::CrisisUtilizedReturn : Stimulus::UtilizedReturn,
                                    cp);
            }
            if (a.availability == Availability::Defected) {
                trace_.add(now_, rec::Defected{id, a.cohesion});
            }
        }
        for (const auto& [id, a] : state_.agents) {
            trace_.add(now_, rec::CohesionSample{id, a.cohesion, a.availability});
        }
        trace_.add(now_, rec::LivenessSample{matching_live(org_, state_)});
        completed_.clear();
        push(now_ + sc_.cohesion_interval, EvKind::CohesionTick);
    }

    void perceive(std::uint64_t index) {
        const PerceptionSpec& spec = sc_.perceptions[index];
        for (const auto& r : propagate_perception(org_, state_, spec.event, spec.mode)) {
            trace_.add(now_, rec::Reacted{spec.event.threat, r.agent, r.at, spec.mode});
        }
    }

    const Scenario& sc_;
    const Organization& org_;
    std::uint64_t seed_;
    OrgState state_;
    Rng rng_;
    Trace trace_;
    Tick now_ = 0;

    std::priority_queue<Event, std::vector<Event>, Later> queue_;
    std::uint64_t seq_ = 0;

    std::vector<Notification> notes_;
    std::vector<RequestState> requests_;
    std::map<AgentId, std::deque<NotificationId>> doctor_queue_;
    std::map<std::uint64_t, Son> sons_;
    std::map<std::uint64_t, NotificationId> son_request_;
    std::uint64_t next_son_ = 0;
    std::set<AgentId> completed_;
    bool crisis_ = false;
};

}  // namespace

Simulation::Simulation(Scenario scenario, std::uint64_t seed)
    : scenario_(std::move(scenario)), seed_(seed) {
    validate(scenario_);
    org_ = build_organization(scenario_);
}

void Simulation::inject_black_swan(const std::string& tag, Tick time) {
    if (time < 0 || time >= scenario_.horizon) {
        throw Error(ErrorKind::InvalidArgument, "black swan outside the horizon");
    }
    scenario_.faults.push_back({FaultEntry::Type::BlackSwan, time, tag});
}

Trace Simulation::run() const { return Runner(scenario_, org_, seed_).run(); }

Trace run(const Scenario& scenario, std::uint64_t seed) { return Simulation(scenario, seed).run(); }

}  // namespace resil
