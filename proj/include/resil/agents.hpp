#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "resil/core.hpp"
#include "resil/ontology.hpp"

namespace resil {

/// Behavioral classes ordered from passive to anticipatory collective
/// behavior. The ordinal is the comparison key for mismatch measurement.
enum class BehaviorClass : int {
    Passive = 0,
    Active = 1,
    PurposefulActive = 2,
    Teleological = 3,
    SimpleExtrapolative = 4,
    SocialPredictive = 5,
    ComplexMultivariateExtrapolative = 6,
    FutureResponsiveSocialLearning = 7,
};

inline constexpr int behavior_class_count = 8;

constexpr int ordinal(BehaviorClass b) { return static_cast<int>(b); }
/// Throws InvalidArgument outside 0..7.
BehaviorClass behavior_from_ordinal(int ordinal);
std::string_view to_string(BehaviorClass b);

enum class PersonaClass {
    ServoMechanism,
    SimpleControlMechanism,
    BiologicalCell,
    CyberPhysicalSystem,
    Plant,
    Animal,
    HumanBeing,
    SocietyOfAnimals,
    SocietyOfHumans,
    SystemOfCyberPhysicalSystems,
    CyberPhysicalSociety,
    Ecosystem,
};

inline constexpr std::array<PersonaClass, 12> all_persona_classes = {
    PersonaClass::ServoMechanism,      PersonaClass::SimpleControlMechanism,
    PersonaClass::BiologicalCell,      PersonaClass::CyberPhysicalSystem,
    PersonaClass::Plant,               PersonaClass::Animal,
    PersonaClass::HumanBeing,          PersonaClass::SocietyOfAnimals,
    PersonaClass::SocietyOfHumans,     PersonaClass::SystemOfCyberPhysicalSystems,
    PersonaClass::CyberPhysicalSociety, PersonaClass::Ecosystem,
};

std::string_view to_string(PersonaClass p);
/// Accepts the enumerator spelling, e.g. "HumanBeing". Throws InvalidArgument.
PersonaClass persona_from_string(std::string_view s);

/// Default behavior class a persona is capable of.
BehaviorClass intrinsic_behavior_of(PersonaClass persona);

enum class Availability { Idle, Busy, Failed, Defected };

std::string_view to_string(Availability a);

struct Relationship {
    std::string kind;
    AgentId other;

    friend bool operator==(const Relationship&, const Relationship&) = default;
};

struct Agent {
    AgentId id;
    PersonaClass persona = PersonaClass::HumanBeing;
    BehaviorClass intrinsic_behavior = BehaviorClass::ComplexMultivariateExtrapolative;
    BehaviorClass exercised_behavior = BehaviorClass::ComplexMultivariateExtrapolative;
    Point location;
    double perception_radius = 0.0;
    std::vector<ServiceAdvertisement> advertisements;
    std::vector<Relationship> relationships;
    Availability availability = Availability::Idle;
    std::string solution_tag;
    double cohesion = 0.8;
    int layer = 0;

    bool advertises(const Role& role) const;
    /// Failed and defected members are never enrolled.
    bool can_serve() const {
        return availability != Availability::Failed && availability != Availability::Defected;
    }

    friend bool operator==(const Agent&, const Agent&) = default;
};

/// An agent whose intrinsic and exercised behavior both default from its
/// persona.
Agent make_agent(AgentId id, PersonaClass persona, std::vector<Role> roles = {},
                 Point location = {});

/// Under-utilization of an agent: how far the organization pushes it below
/// its intrinsic class. Never negative.
int bop_gap(const Agent& agent);

struct CohesionParams {
    double alpha = 0.05;  // reward gain
    double beta = 0.05;   // mismatch decay
    double gamma = 3.0;   // crisis multiplier
    double c_def = 0.2;   // defection threshold
    double initial = 0.8;
    std::map<PersonaClass, double> persona_weight = default_persona_weights();

    double weight_of(PersonaClass p) const;

    static std::map<PersonaClass, double> default_persona_weights();

    friend bool operator==(const CohesionParams&, const CohesionParams&) = default;
};

/// Throws InvalidArgument when a field is out of range or not finite.
void validate(const CohesionParams& params);

enum class Stimulus { UtilizedReturn, BopTick, CrisisUtilizedReturn };

/// Applies one cohesion stimulus and returns the updated agent. Crossing
/// below `c_def` defects the agent, which is absorbing. Throws AgentFailed.
Agent update_cohesion(Agent agent, Stimulus stimulus, const CohesionParams& params);

struct SubscriptionRecord {
    AgentId identity;
    PersonaClass persona = PersonaClass::HumanBeing;
    Point location;
    std::vector<Relationship> relationships;
    std::vector<Role> advertisements;
};

/// What a member publishes when it joins a coordination center.
/// Throws NotIdle.
SubscriptionRecord subscribe(const Agent& agent);

/// Agents of one simulation keyed (and therefore iterated) by id.
using Population = std::map<AgentId, Agent>;

struct SocialPersona {
    std::string id;
    std::vector<AgentId> members;
    double theta = 0.5;
};

}  // namespace resil
