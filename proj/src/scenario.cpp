#include "resil/scenario.hpp"

#include <algorithm>
#include <set>

namespace resil {

std::string_view to_string(OrgVariant v) {
    switch (v) {
        case OrgVariant::SafetyNet: return "safety_net";
        case OrgVariant::Mac: return "mac";
        case OrgVariant::Fso: return "fso";
    }
    return "mac";
}

OrgVariant org_variant_from_string(std::string_view s) {
    if (s == "safety_net") return OrgVariant::SafetyNet;
    if (s == "mac") return OrgVariant::Mac;
    if (s == "fso") return OrgVariant::Fso;
    throw Error(ErrorKind::InvalidArgument, "unknown organization variant '" + std::string(s) + "'");
}

const ServicingProtocol* Scenario::protocol_for(std::string_view kind) const {
    for (const auto& p : protocols) {
        if (p.trigger_kind == kind) return &p;
    }
    return nullptr;
}

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::InvalidScenario, what); }
[[noreturn]] void dangling(const std::string& what) {
    throw Error(ErrorKind::DanglingReference, what);
}

}  // namespace

void validate(const Scenario& s) {
    if (s.schema_version != scenario_schema_version) {
        invalid("unsupported schema_version " + std::to_string(s.schema_version));
    }
    if (s.horizon <= 0) invalid("horizon must be > 0");
    if (s.cohesion_interval <= 0) invalid("cohesion_interval must be > 0");
    if (s.time_scale <= 0) invalid("time_scale must be > 0");
    if (s.agents.empty()) invalid("no agents");

    std::set<AgentId> ids;
    for (const auto& a : s.agents) {
        if (a.id.empty()) invalid("agent without id");
        if (!ids.insert(a.id).second) invalid("duplicate agent " + a.id);
        if (a.perception_radius < 0) invalid(a.id + ": perception_radius must be >= 0");
        if (a.layer < 0) invalid(a.id + ": layer must be >= 0");
        for (const auto& ad : a.advertisements) {
            if (!s.ontology.contains(ad.role)) dangling(a.id + " advertises unknown role '" + ad.role.id + "'");
        }
    }
    for (const auto& a : s.agents) {
        for (const auto& r : a.relationships) {
            if (!ids.contains(r.other)) dangling(a.id + " relates to unknown agent '" + r.other + "'");
        }
    }

    const OrgSpec& o = s.organization;
    if (o.hop_delay < 0) invalid("hop_delay must be >= 0");
    if (o.cc_processing_time < 0) invalid("cc_processing_time must be >= 0");
    if (o.escalation_threshold < 0) invalid("escalation_threshold must be >= 0");
    if (o.variant == OrgVariant::SafetyNet) {
        if (o.devices_per_patient < 1) invalid("devices_per_patient must be >= 1");
        if (o.assignment.empty()) invalid("safety net without patient assignment");
        for (const auto& [patient, doctor] : o.assignment) {
            if (!ids.contains(patient)) dangling("assignment names unknown patient '" + patient + "'");
            if (!ids.contains(doctor)) dangling("assignment names unknown doctor '" + doctor + "'");
            if (o.assignment.contains(doctor)) invalid(doctor + " is both patient and doctor");
        }
    }

    std::set<std::string> kinds;
    for (const auto& p : s.protocols) {
        if (!kinds.insert(p.trigger_kind).second) invalid("two protocols trigger on '" + p.trigger_kind + "'");
        try {
            validate_protocol(p, s.ontology);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::UnknownRole) dangling("protocol " + p.id + ": " + e.what());
            invalid("protocol " + p.id + ": " + e.what());
        }
    }

    Organization org;
    try {
        org = build_organization(s);
    } catch (const Error& e) {
        invalid(std::string("organization: ") + e.what());
    }

    for (const auto& w : s.workload) {
        if (!s.protocol_for(w.kind)) dangling("no protocol handles notification kind '" + w.kind + "'");
        for (const auto& src : w.sources) {
            if (!ids.contains(src)) dangling("workload source '" + src + "' is not an agent");
        }
        WorkloadSpec one{{w}, s.horizon};
        if (one.streams[0].sources.empty()) one.streams[0].sources = default_sources(s);
        try {
            validate(one);
        } catch (const Error& e) {
            invalid(std::string("workload: ") + e.what());
        }
    }

    for (const auto& f : s.faults) {
        if (f.at < 0) invalid("fault time must be >= 0");
        if ((f.type == FaultEntry::Type::Fail || f.type == FaultEntry::Type::Recover) &&
            !org.has_node(f.target)) {
            dangling("fault targets unknown node '" + f.target + "'");
        }
    }
    for (const auto& p : s.perceptions) {
        if (p.event.time < 0) invalid("perception time must be >= 0");
    }

    try {
        validate(s.cohesion);
        validate(s.persistence);
    } catch (const Error& e) {
        invalid(e.what());
    }
}

Scenario rescale_time(Scenario s, Tick c) {
    if (c <= 0) throw Error(ErrorKind::InvalidArgument, "time factor must be > 0");
    s.horizon *= c;
    s.organization.hop_delay *= c;
    s.organization.cc_processing_time *= c;
    for (auto& p : s.protocols) {
        p.service_duration *= c;
        p.deadline *= c;
        p.son_lifespan *= c;
    }
    for (auto& f : s.faults) f.at *= c;
    for (auto& p : s.perceptions) p.event.time *= c;
    s.cohesion_interval *= c;
    s.persistence.tau_t *= c;
    s.time_scale *= c;
    return s;
}

Organization build_organization(const Scenario& s) {
    std::vector<Agent> roster = s.agents;
    for (auto& a : roster) a.cohesion = s.cohesion.initial;
    const OrgSpec& o = s.organization;

    switch (o.variant) {
        case OrgVariant::SafetyNet: {
            std::set<AgentId> doctor_ids;
            for (const auto& [patient, doctor] : o.assignment) doctor_ids.insert(doctor);
            std::vector<Agent> patients;
            std::vector<Agent> doctors;
            for (const auto& a : roster) {
                if (o.assignment.contains(a.id)) {
                    patients.push_back(a);
                } else if (doctor_ids.contains(a.id)) {
                    doctors.push_back(a);
                } else {
                    throw Error(ErrorKind::InvalidScenario,
                                a.id + " is neither an assigned patient nor a doctor");
                }
            }
            Organization org = build_safety_net(patients, o.devices_per_patient, doctors,
                                                o.assignment, o.hop_delay);
            for (auto& m : org.members) m.cohesion = s.cohesion.initial;
            return org;
        }
        case OrgVariant::Mac:
            return build_mac(roster, o.cc_processing_time, o.hop_delay);
        case OrgVariant::Fso: {
            int top = 0;
            for (const auto& a : roster) top = std::max(top, a.layer);
            std::vector<std::vector<Agent>> layers(static_cast<std::size_t>(top) + 1);
            for (const auto& a : roster) layers[static_cast<std::size_t>(a.layer)].push_back(a);
            return build_fso(layers, o.cc_processing_time, o.hop_delay);
        }
    }
    throw Error(ErrorKind::InvalidScenario, "unknown organization variant");
}

std::vector<AgentId> default_sources(const Scenario& s) {
    std::vector<AgentId> out;
    if (s.organization.variant == OrgVariant::SafetyNet) {
        for (const auto& [patient, doctor] : s.organization.assignment) out.push_back(patient);
        return out;
    }
    for (const auto& a : s.agents) out.push_back(a.id);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace resil
