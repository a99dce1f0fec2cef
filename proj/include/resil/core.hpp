#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace resil {

/// Simulation time. The clock is integral so runs are reproducible bit for bit.
using Tick = std::int64_t;

using AgentId = std::string;
/// Organization graph node: an agent id or a coordination-center id.
using NodeId = std::string;
using NotificationId = std::uint64_t;

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

inline double squared_distance(const Point& a, const Point& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

inline double distance(const Point& a, const Point& b) {
    return std::sqrt(squared_distance(a, b));
}

enum class ErrorKind {
    DuplicateRole,
    UnknownParent,
    CycleIntroduced,
    UnknownRole,
    EmptyRequirements,
    BadBounds,
    AgentFailed,
    NotIdle,
    UnassignedPatient,
    EmptyMembership,
    EmptyLayer,
    Unreachable,
    UnknownNode,
    DeadCC,
    KindMismatch,
    SpaceTooLarge,
    Overflow,
    InvalidArgument,
    OriginCCDead,
    EmptyParticipants,
    InvalidScenario,
    UnknownMember,
    EmptySeries,
    EmptyPopulation,
    IoError,
    SyntaxError,
    SchemaError,
    DanglingReference,
};

std::string_view to_string(ErrorKind kind);

/// The single exception type thrown by the library. `kind()` lets callers
/// and tests branch on the failure without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace resil
