#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "resil/agents.hpp"
#include "resil/indicators.hpp"
#include "resil/ontology.hpp"
#include "resil/organization.hpp"
#include "resil/trace.hpp"
#include "resil/workload.hpp"

namespace resil {

inline constexpr int scenario_schema_version = 1;

enum class OrgVariant { SafetyNet, Mac, Fso };

std::string_view to_string(OrgVariant v);
OrgVariant org_variant_from_string(std::string_view s);

struct OrgSpec {
    OrgVariant variant = OrgVariant::Mac;
    Tick hop_delay = 1;
    Tick cc_processing_time = 0;
    int escalation_threshold = 3;
    /// Safety net only.
    int devices_per_patient = 1;
    std::map<AgentId, AgentId> assignment;  // patient -> doctor

    friend bool operator==(const OrgSpec&, const OrgSpec&) = default;
};

struct FaultEntry {
    enum class Type { Fail, Recover, BlackSwan, CrisisStart, CrisisEnd };

    Type type = Type::Fail;
    Tick at = 0;
    /// Node id for fail/recover, solution tag for black_swan, unused otherwise.
    std::string target;

    friend bool operator==(const FaultEntry&, const FaultEntry&) = default;
};

struct PerceptionEvent {
    Point location;
    Tick time = 0;
    std::string threat;

    friend bool operator==(const PerceptionEvent&, const PerceptionEvent&) = default;
};

struct PerceptionSpec {
    PerceptionEvent event;
    PerceptionMode mode = PerceptionMode::Individual;

    friend bool operator==(const PerceptionSpec&, const PerceptionSpec&) = default;
};

struct Scenario {
    int schema_version = scenario_schema_version;
    std::string name;
    Tick horizon = 0;
    Ontology ontology = Ontology::care_default();
    std::vector<Agent> agents;
    OrgSpec organization;
    std::vector<ServicingProtocol> protocols;
    /// Streams with no sources draw from the default source set: patients
    /// in a safety net, every member otherwise.
    std::vector<WorkloadStream> workload;
    std::vector<FaultEntry> faults;
    std::vector<PerceptionSpec> perceptions;
    CohesionParams cohesion;
    PersistenceParams persistence;
    Tick cohesion_interval = 10;
    /// Generated arrival times are multiplied by this factor.
    Tick time_scale = 1;

    const ServicingProtocol* protocol_for(std::string_view kind) const;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Throws InvalidScenario, or DanglingReference for a name that resolves to
/// nothing.
void validate(const Scenario& scenario);

/// Every duration of the scenario multiplied by `factor`.
Scenario rescale_time(Scenario scenario, Tick factor);

/// Topology described by the scenario; members start at the initial
/// cohesion.
Organization build_organization(const Scenario& scenario);

/// Sources used by streams that name none.
std::vector<AgentId> default_sources(const Scenario& scenario);

/// Reads and validates a scenario file. Throws IoError, SyntaxError,
/// SchemaError (naming the key and its position), DanglingReference or
/// InvalidScenario.
Scenario parse_scenario(const std::filesystem::path& path);
Scenario parse_scenario_text(const std::string& text);

/// Canonical text form; parsing it gives back an equal scenario.
std::string serialize_scenario(const Scenario& scenario);

}  // namespace resil
