#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "resil/core.hpp"

namespace resil {

/// A role identifier from the ontology ("nurse", "accelerometer", ...).
struct Role {
    std::string id;

    Role() = default;
    explicit Role(std::string name) : id(std::move(name)) {}

    friend auto operator<=>(const Role&, const Role&) = default;
};

/// Role taxonomy: a DAG of is-a edges. Roles are stored in insertion order;
/// every role also carries the full set of its ancestors so subsumption is a
/// constant-time lookup.
class Ontology {
public:
    /// Adds `role` with an is-a edge to each of `parents`.
    /// Throws DuplicateRole, UnknownParent or CycleIntroduced; on throw the
    /// ontology is unchanged.
    void add_role(const Role& role, const std::vector<Role>& parents = {});

    bool contains(const Role& role) const { return index_.contains(role.id); }
    std::size_t size() const { return roles_.size(); }
    std::size_t edge_count() const;

    /// True iff `general == specific` or `specific` reaches `general` through
    /// is-a edges. Throws UnknownRole.
    bool subsumes(const Role& general, const Role& specific) const;

    /// An advertised role satisfies a requirement when it is the required
    /// role or a specialization of it.
    bool satisfies(const Role& advertised, const Role& required) const {
        return subsumes(required, advertised);
    }

    const std::vector<Role>& roles() const { return roles_; }
    /// Direct parents of `role`, in the order they were declared.
    std::vector<Role> parents_of(const Role& role) const;
    std::vector<std::pair<Role, Role>> edges() const;

    /// The built-in care-domain taxonomy used when a scenario declares none.
    static Ontology care_default();

    friend bool operator==(const Ontology& a, const Ontology& b) {
        return a.roles_ == b.roles_ && a.parents_ == b.parents_;
    }

private:
    std::size_t index_of(const Role& role) const;

    std::vector<Role> roles_;
    std::map<std::string, std::size_t> index_;
    std::vector<std::vector<std::size_t>> parents_;
    // ancestors_[i][j] is true when role j is a strict ancestor of role i.
    std::vector<std::vector<bool>> ancestors_;
};

struct Requirement {
    Role role;
    int min_count = 1;
    int max_count = 1;

    friend bool operator==(const Requirement&, const Requirement&) = default;
};

enum class Severity { Routine, Alarm, Crisis };

std::string_view to_string(Severity s);
Severity severity_from_string(std::string_view s);

struct ServicingProtocol {
    std::string id;
    std::string trigger_kind;
    std::vector<Requirement> requirements;
    Tick service_duration = 1;
    Tick deadline = 1;
    Tick son_lifespan = 1;

    friend bool operator==(const ServicingProtocol&, const ServicingProtocol&) = default;
};

/// Throws EmptyRequirements, BadBounds or UnknownRole.
void validate_protocol(const ServicingProtocol& protocol, const Ontology& ontology);

struct ServiceAdvertisement {
    AgentId member;
    Role role;

    friend bool operator==(const ServiceAdvertisement&, const ServiceAdvertisement&) = default;
};

struct Notification {
    NotificationId id = 0;
    std::string kind;
    AgentId source;
    Point location;
    Tick time = 0;
    Severity severity = Severity::Alarm;

    friend bool operator==(const Notification&, const Notification&) = default;
};

}  // namespace resil
