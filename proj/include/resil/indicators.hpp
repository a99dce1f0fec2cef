#pragma once

#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "resil/agents.hpp"
#include "resil/trace.hpp"

namespace resil {

struct PersistenceParams {
    double theta = 0.5;  // fraction of members that must hold for the persona to exist
    Tick tau_t = 50;     // longest loss still called transient
    int k = 3;           // this many separate losses make them intermittent

    friend bool operator==(const PersistenceParams&, const PersistenceParams&) = default;
};

void validate(const PersistenceParams& params);

enum class PersonaLoss { None, Transient, Intermittent, Permanent };

std::string_view to_string(PersonaLoss loss);

// --- behavior / organization / persona mismatch ----------------------------

struct BopSummary {
    std::map<AgentId, int> per_agent;
    double mean = 0.0;  // over members; coordination centers are not agents
    int mismatched = 0;
};

BopSummary bop_index(std::span<const Agent> members);

/// Members as the organization configured them, from the trace snapshot.
std::vector<Agent> members_at_start(const Trace& trace);

// --- persona persistence ---------------------------------------------------

struct EmergenceSample {
    Tick time = 0;
    bool emergent = true;
};

/// One sample per cohesion tick: the persona exists when at least
/// `persona.theta` of its members are neither failed nor defected and hold
/// cohesion >= c_def, and the organization can still match requests.
/// Throws UnknownMember for a member absent from the trace.
std::vector<EmergenceSample> emergence_series(const Trace& trace, const SocialPersona& persona);

/// none: never lost. permanent: lost at the end of the series. intermittent:
/// at least k losses, or any recovered loss lasting tau_t or more.
/// transient: otherwise. Throws EmptySeries.
PersonaLoss classify_persona_loss(std::span<const EmergenceSample> series,
                                  const PersistenceParams& params);

// --- response --------------------------------------------------------------

struct ResponseMetrics {
    int notifications = 0;
    int serviced = 0;          // service completed, late or not
    int serviced_in_time = 0;  // latency <= protocol deadline
    double service_ratio = 1.0;
    double mean_latency = 0.0;
    Tick p95_latency = 0;
    int unserviced = 0;
    std::map<int, int> escalation_histogram;  // depth -> requests

    int max_escalation_depth() const {
        return escalation_histogram.empty() ? 0 : escalation_histogram.rbegin()->first;
    }
};

/// Metrics over notifications raised at or after `since`. With no
/// notifications the ratio is 1.
ResponseMetrics response_metrics(const Trace& trace, Tick since = 0);

/// Value at the ceil(0.95 n)-th order statistic; 0 when empty.
Tick p95(std::vector<Tick> values);

// --- diversity -------------------------------------------------------------

struct DiversityMetrics {
    double tag_entropy = 0.0;  // natural log
    double dominant_tag_share = 1.0;
};

/// Throws EmptyPopulation.
DiversityMetrics diversity_metrics(std::span<const Agent> agents);

// ---------------------------------------------------------------------------

struct IndicatorReport {
    BopSummary bop;
    ResponseMetrics response;
    std::vector<EmergenceSample> persona_emergent;
    PersonaLoss persona_loss = PersonaLoss::None;
    int defections = 0;
    DiversityMetrics diversity;
};

/// Everything is derived from the trace. The social persona is the whole
/// membership of the organization.
IndicatorReport build_report(const Trace& trace, const PersistenceParams& params);

}  // namespace resil
