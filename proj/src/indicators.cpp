#include "resil/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace resil {

void validate(const PersistenceParams& p) {
    if (!(p.theta > 0.0 && p.theta <= 1.0)) {
        throw Error(ErrorKind::InvalidArgument, "theta must lie in (0, 1]");
    }
    if (p.tau_t <= 0) throw Error(ErrorKind::InvalidArgument, "tau_t must be > 0");
    if (p.k < 2) throw Error(ErrorKind::InvalidArgument, "k must be >= 2");
}

std::string_view to_string(PersonaLoss loss) {
    switch (loss) {
        case PersonaLoss::None: return "none";
        case PersonaLoss::Transient: return "transient";
        case PersonaLoss::Intermittent: return "intermittent";
        case PersonaLoss::Permanent: return "permanent";
    }
    return "none";
}

BopSummary bop_index(std::span<const Agent> members) {
    BopSummary s;
    long total = 0;
    for (const auto& a : members) {
        const int g = bop_gap(a);
        s.per_agent[a.id] = g;
        total += g;
        if (g > 0) ++s.mismatched;
    }
    s.mean = members.empty() ? 0.0 : static_cast<double>(total) / static_cast<double>(members.size());
    return s;
}

std::vector<Agent> members_at_start(const Trace& trace) {
    std::vector<Agent> out;
    for (const auto& [t, snap] : trace.select<rec::MemberSnapshot>()) out.push_back(snap->agent);
    return out;
}

std::vector<EmergenceSample> emergence_series(const Trace& trace, const SocialPersona& persona) {
    double c_def = 0.0;
    std::set<AgentId> known;
    for (const auto& e : trace.entries()) {
        if (const auto* r = std::get_if<rec::RunStarted>(&e.record)) c_def = r->c_def;
        if (const auto* m = std::get_if<rec::MemberSnapshot>(&e.record)) known.insert(m->agent.id);
    }
    const std::set<AgentId> members(persona.members.begin(), persona.members.end());
    for (const auto& m : members) {
        if (!known.contains(m)) throw Error(ErrorKind::UnknownMember, m);
    }

    std::vector<EmergenceSample> series;
    int holding = 0;
    for (const auto& e : trace.entries()) {
        if (const auto* c = std::get_if<rec::CohesionSample>(&e.record)) {
            if (members.contains(c->agent) && c->availability != Availability::Failed &&
                c->availability != Availability::Defected && c->cohesion >= c_def) {
                ++holding;
            }
        } else if (const auto* l = std::get_if<rec::LivenessSample>(&e.record)) {
            const bool quorum = members.empty() ||
                                static_cast<double>(holding) >=
                                    persona.theta * static_cast<double>(members.size());
            series.push_back({e.time, quorum && l->matching_live});
            holding = 0;
        }
    }
    return series;
}

PersonaLoss classify_persona_loss(std::span<const EmergenceSample> series,
                                  const PersistenceParams& params) {
    if (series.empty()) throw Error(ErrorKind::EmptySeries, "no emergence samples");
    if (!series.back().emergent) return PersonaLoss::Permanent;

    int losses = 0;
    bool long_loss = false;
    for (std::size_t i = 0; i < series.size();) {
        if (series[i].emergent) {
            ++i;
            continue;
        }
        const Tick start = series[i].time;
        while (!series[i].emergent) ++i;  // terminates: the last sample is true
        ++losses;
        if (series[i].time - start >= params.tau_t) long_loss = true;
    }
    if (losses == 0) return PersonaLoss::None;
    if (losses >= params.k || long_loss) return PersonaLoss::Intermittent;
    return PersonaLoss::Transient;
}

Tick p95(std::vector<Tick> values) {
    if (values.empty()) return 0;
    std::sort(values.begin(), values.end());
    const std::size_t rank = (95 * values.size() + 99) / 100;  // ceil(0.95 n)
    return values[rank - 1];
}

ResponseMetrics response_metrics(const Trace& trace, Tick since) {
    std::set<NotificationId> counted;
    ResponseMetrics m;
    std::vector<Tick> latencies;
    for (const auto& e : trace.entries()) {
        if (const auto* n = std::get_if<rec::Notified>(&e.record)) {
            if (e.time >= since) {
                counted.insert(n->id);
                ++m.notifications;
            }
        } else if (const auto* c = std::get_if<rec::ServiceCompleted>(&e.record)) {
            if (!counted.contains(c->id)) continue;
            ++m.serviced;
            if (c->in_time) ++m.serviced_in_time;
            latencies.push_back(c->latency);
        } else if (const auto* mt = std::get_if<rec::Matched>(&e.record)) {
            if (counted.contains(mt->id)) ++m.escalation_histogram[mt->depth];
        } else if (const auto* u = std::get_if<rec::Unmatched>(&e.record)) {
            if (counted.contains(u->id)) ++m.escalation_histogram[u->depth];
        }
    }
    m.unserviced = m.notifications - m.serviced;
    m.service_ratio = m.notifications == 0
                          ? 1.0
                          : static_cast<double>(m.serviced_in_time) / m.notifications;
    if (!latencies.empty()) {
        double sum = 0.0;
        for (Tick l : latencies) sum += static_cast<double>(l);
        m.mean_latency = sum / static_cast<double>(latencies.size());
    }
    m.p95_latency = p95(std::move(latencies));
    return m;
}

DiversityMetrics diversity_metrics(std::span<const Agent> agents) {
    if (agents.empty()) throw Error(ErrorKind::EmptyPopulation, "no agents");
    std::map<std::string, int> counts;
    for (const auto& a : agents) ++counts[a.solution_tag];
    const double n = static_cast<double>(agents.size());
    DiversityMetrics d;
    int top = 0;
    double h = 0.0;
    for (const auto& [tag, c] : counts) {
        const double p = c / n;
        h -= p * std::log(p);
        top = std::max(top, c);
    }
    d.tag_entropy = counts.size() == 1 ? 0.0 : h;
    d.dominant_tag_share = top / n;
    return d;
}

IndicatorReport build_report(const Trace& trace, const PersistenceParams& params) {
    validate(params);
    IndicatorReport r;
    const auto members = members_at_start(trace);
    r.bop = bop_index(members);
    r.response = response_metrics(trace);

    SocialPersona persona;
    persona.id = "organization";
    persona.theta = params.theta;
    for (const auto& a : members) persona.members.push_back(a.id);
    r.persona_emergent = emergence_series(trace, persona);
    r.persona_loss = r.persona_emergent.empty()
                         ? PersonaLoss::None
                         : classify_persona_loss(r.persona_emergent, params);
    r.defections = static_cast<int>(trace.count<rec::Defected>());
    if (!members.empty()) r.diversity = diversity_metrics(members);
    return r;
}

}  // namespace resil
