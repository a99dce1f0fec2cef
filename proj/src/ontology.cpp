#include "resil/ontology.hpp"

#include <algorithm>

namespace resil {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DuplicateRole: return "DuplicateRole";
        case ErrorKind::UnknownParent: return "UnknownParent";
        case ErrorKind::CycleIntroduced: return "CycleIntroduced";
        case ErrorKind::UnknownRole: return "UnknownRole";
        case ErrorKind::EmptyRequirements: return "EmptyRequirements";
        case ErrorKind::BadBounds: return "BadBounds";
        case ErrorKind::AgentFailed: return "AgentFailed";
        case ErrorKind::NotIdle: return "NotIdle";
        case ErrorKind::UnassignedPatient: return "UnassignedPatient";
        case ErrorKind::EmptyMembership: return "EmptyMembership";
        case ErrorKind::EmptyLayer: return "EmptyLayer";
        case ErrorKind::Unreachable: return "Unreachable";
        case ErrorKind::UnknownNode: return "UnknownNode";
        case ErrorKind::DeadCC: return "DeadCC";
        case ErrorKind::KindMismatch: return "KindMismatch";
        case ErrorKind::SpaceTooLarge: return "SpaceTooLarge";
        case ErrorKind::Overflow: return "Overflow";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::OriginCCDead: return "OriginCCDead";
        case ErrorKind::EmptyParticipants: return "EmptyParticipants";
        case ErrorKind::InvalidScenario: return "InvalidScenario";
        case ErrorKind::UnknownMember: return "UnknownMember";
        case ErrorKind::EmptySeries: return "EmptySeries";
        case ErrorKind::EmptyPopulation: return "EmptyPopulation";
        case ErrorKind::IoError: return "IoError";
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::SchemaError: return "SchemaError";
        case ErrorKind::DanglingReference: return "DanglingReference";
    }
    return "Unknown";
}

void Ontology::add_role(const Role& role, const std::vector<Role>& parents) {
    if (role.id.empty()) {
        throw Error(ErrorKind::InvalidArgument, "role id must be nonempty");
    }
    if (contains(role)) {
        throw Error(ErrorKind::DuplicateRole, role.id);
    }
    std::vector<std::size_t> parent_idx;
    for (const auto& p : parents) {
        if (p == role) {
            // A self-edge is the only way a brand-new node can close a cycle.
            throw Error(ErrorKind::CycleIntroduced, role.id + " is-a " + role.id);
        }
        auto it = index_.find(p.id);
        if (it == index_.end()) {
            throw Error(ErrorKind::UnknownParent, p.id + " (parent of " + role.id + ")");
        }
        if (std::find(parent_idx.begin(), parent_idx.end(), it->second) == parent_idx.end()) {
            parent_idx.push_back(it->second);
        }
    }

    const std::size_t n = roles_.size();
    std::vector<bool> anc(n + 1, false);
    for (std::size_t p : parent_idx) {
        anc[p] = true;
        for (std::size_t j = 0; j < n; ++j) {
            if (ancestors_[p][j]) anc[j] = true;
        }
    }

    roles_.push_back(role);
    index_.emplace(role.id, n);
    parents_.push_back(std::move(parent_idx));
    for (auto& row : ancestors_) row.push_back(false);
    ancestors_.push_back(std::move(anc));
}

std::size_t Ontology::index_of(const Role& role) const {
    auto it = index_.find(role.id);
    if (it == index_.end()) {
        throw Error(ErrorKind::UnknownRole, role.id);
    }
    return it->second;
}

std::size_t Ontology::edge_count() const {
    std::size_t n = 0;
    for (const auto& p : parents_) n += p.size();
    return n;
}

bool Ontology::subsumes(const Role& general, const Role& specific) const {
    const std::size_t g = index_of(general);
    const std::size_t s = index_of(specific);
    return g == s || ancestors_[s][g];
}

std::vector<Role> Ontology::parents_of(const Role& role) const {
    std::vector<Role> out;
    for (std::size_t p : parents_[index_of(role)]) out.push_back(roles_[p]);
    return out;
}

std::vector<std::pair<Role, Role>> Ontology::edges() const {
    std::vector<std::pair<Role, Role>> out;
    for (std::size_t i = 0; i < roles_.size(); ++i) {
        for (std::size_t p : parents_[i]) out.emplace_back(roles_[i], roles_[p]);
    }
    return out;
}

Ontology Ontology::care_default() {
    Ontology o;
    o.add_role(Role{"caregiver"});
    o.add_role(Role{"professional caregiver"}, {Role{"caregiver"}});
    o.add_role(Role{"general practitioner"}, {Role{"professional caregiver"}});
    o.add_role(Role{"nurse"}, {Role{"professional caregiver"}});
    o.add_role(Role{"informal caregiver"}, {Role{"caregiver"}});
    o.add_role(Role{"sensor"});
    o.add_role(Role{"accelerometer"}, {Role{"sensor"}});
    o.add_role(Role{"localization device"}, {Role{"sensor"}});
    o.add_role(Role{"patient"});
    return o;
}

std::string_view to_string(Severity s) {
    switch (s) {
        case Severity::Routine: return "routine";
        case Severity::Alarm: return "alarm";
        case Severity::Crisis: return "crisis";
    }
    return "alarm";
}

Severity severity_from_string(std::string_view s) {
    if (s == "routine") return Severity::Routine;
    if (s == "alarm") return Severity::Alarm;
    if (s == "crisis") return Severity::Crisis;
    throw Error(ErrorKind::InvalidArgument, "unknown severity '" + std::string(s) + "'");
}

void validate_protocol(const ServicingProtocol& protocol, const Ontology& ontology) {
    if (protocol.requirements.empty()) {
        throw Error(ErrorKind::EmptyRequirements, protocol.id);
    }
    for (const auto& r : protocol.requirements) {
        if (!ontology.contains(r.role)) {
            throw Error(ErrorKind::UnknownRole, r.role.id + " (protocol " + protocol.id + ")");
        }
        if (r.min_count < 0 || r.min_count > r.max_count) {
            throw Error(ErrorKind::BadBounds, protocol.id + ": " + r.role.id + " [" +
                                                  std::to_string(r.min_count) + ", " +
                                                  std::to_string(r.max_count) + "]");
        }
    }
    if (protocol.service_duration <= 0 || protocol.deadline <= 0 || protocol.son_lifespan <= 0) {
        throw Error(ErrorKind::InvalidArgument,
                    protocol.id + ": duration, deadline and lifespan must be positive");
    }
}

}  // namespace resil
