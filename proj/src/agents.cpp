#include "resil/agents.hpp"

#include <algorithm>
#include <cmath>

namespace resil {

BehaviorClass behavior_from_ordinal(int ordinal) {
    if (ordinal < 0 || ordinal >= behavior_class_count) {
        throw Error(ErrorKind::InvalidArgument,
                    "behavior ordinal " + std::to_string(ordinal) + " outside 0..7");
    }
    return static_cast<BehaviorClass>(ordinal);
}

std::string_view to_string(BehaviorClass b) {
    switch (b) {
        case BehaviorClass::Passive: return "Passive";
        case BehaviorClass::Active: return "Active";
        case BehaviorClass::PurposefulActive: return "PurposefulActive";
        case BehaviorClass::Teleological: return "Teleological";
        case BehaviorClass::SimpleExtrapolative: return "SimpleExtrapolative";
        case BehaviorClass::SocialPredictive: return "SocialPredictive";
        case BehaviorClass::ComplexMultivariateExtrapolative:
            return "ComplexMultivariateExtrapolative";
        case BehaviorClass::FutureResponsiveSocialLearning: return "FutureResponsiveSocialLearning";
    }
    return "Passive";
}

std::string_view to_string(PersonaClass p) {
    switch (p) {
        case PersonaClass::ServoMechanism: return "ServoMechanism";
        case PersonaClass::SimpleControlMechanism: return "SimpleControlMechanism";
        case PersonaClass::BiologicalCell: return "BiologicalCell";
        case PersonaClass::CyberPhysicalSystem: return "CyberPhysicalSystem";
        case PersonaClass::Plant: return "Plant";
        case PersonaClass::Animal: return "Animal";
        case PersonaClass::HumanBeing: return "HumanBeing";
        case PersonaClass::SocietyOfAnimals: return "SocietyOfAnimals";
        case PersonaClass::SocietyOfHumans: return "SocietyOfHumans";
        case PersonaClass::SystemOfCyberPhysicalSystems: return "SystemOfCyberPhysicalSystems";
        case PersonaClass::CyberPhysicalSociety: return "CyberPhysicalSociety";
        case PersonaClass::Ecosystem: return "Ecosystem";
    }
    return "HumanBeing";
}

PersonaClass persona_from_string(std::string_view s) {
    for (PersonaClass p : all_persona_classes) {
        if (to_string(p) == s) return p;
    }
    throw Error(ErrorKind::InvalidArgument, "unknown persona class '" + std::string(s) + "'");
}

BehaviorClass intrinsic_behavior_of(PersonaClass persona) {
    using B = BehaviorClass;
    switch (persona) {
        case PersonaClass::ServoMechanism: return B::PurposefulActive;
        case PersonaClass::SimpleControlMechanism: return B::Teleological;
        case PersonaClass::BiologicalCell: return B::Teleological;
        case PersonaClass::Plant: return B::Teleological;
        // Context-aware but not self-conscious: between plants and animals.
        case PersonaClass::CyberPhysicalSystem: return B::SimpleExtrapolative;
        case PersonaClass::Animal: return B::SimpleExtrapolative;
        case PersonaClass::SocietyOfAnimals: return B::SocialPredictive;
        case PersonaClass::HumanBeing: return B::ComplexMultivariateExtrapolative;
        case PersonaClass::SystemOfCyberPhysicalSystems: return B::SocialPredictive;
        case PersonaClass::SocietyOfHumans: return B::FutureResponsiveSocialLearning;
        case PersonaClass::CyberPhysicalSociety: return B::FutureResponsiveSocialLearning;
        case PersonaClass::Ecosystem: return B::FutureResponsiveSocialLearning;
    }
    return B::Passive;
}

std::string_view to_string(Availability a) {
    switch (a) {
        case Availability::Idle: return "idle";
        case Availability::Busy: return "busy";
        case Availability::Failed: return "failed";
        case Availability::Defected: return "defected";
    }
    return "idle";
}

bool Agent::advertises(const Role& role) const {
    return std::any_of(advertisements.begin(), advertisements.end(),
                       [&](const ServiceAdvertisement& ad) { return ad.role == role; });
}

Agent make_agent(AgentId id, PersonaClass persona, std::vector<Role> roles, Point location) {
    Agent a;
    a.id = std::move(id);
    a.persona = persona;
    a.intrinsic_behavior = intrinsic_behavior_of(persona);
    a.exercised_behavior = a.intrinsic_behavior;
    a.location = location;
    for (auto& r : roles) a.advertisements.push_back({a.id, std::move(r)});
    return a;
}

int bop_gap(const Agent& agent) {
    return std::max(0, ordinal(agent.intrinsic_behavior) - ordinal(agent.exercised_behavior));
}

std::map<PersonaClass, double> CohesionParams::default_persona_weights() {
    std::map<PersonaClass, double> w;
    for (PersonaClass p : all_persona_classes) {
        w[p] = ordinal(intrinsic_behavior_of(p)) / 7.0;
    }
    return w;
}

double CohesionParams::weight_of(PersonaClass p) const {
    auto it = persona_weight.find(p);
    return it == persona_weight.end() ? ordinal(intrinsic_behavior_of(p)) / 7.0 : it->second;
}

void validate(const CohesionParams& p) {
    auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(p.alpha) || p.alpha <= 0) throw Error(ErrorKind::InvalidArgument, "alpha must be > 0");
    if (!finite(p.beta) || p.beta <= 0) throw Error(ErrorKind::InvalidArgument, "beta must be > 0");
    if (!finite(p.gamma) || p.gamma < 1) throw Error(ErrorKind::InvalidArgument, "gamma must be >= 1");
    if (!finite(p.c_def) || p.c_def < 0 || p.c_def > 1) {
        throw Error(ErrorKind::InvalidArgument, "c_def must lie in [0,1]");
    }
    if (!finite(p.initial) || p.initial < 0 || p.initial > 1) {
        throw Error(ErrorKind::InvalidArgument, "initial cohesion must lie in [0,1]");
    }
    for (const auto& [persona, w] : p.persona_weight) {
        if (!finite(w) || w < 0) {
            throw Error(ErrorKind::InvalidArgument,
                        "persona_weight for " + std::string(to_string(persona)) + " must be >= 0");
        }
    }
}

Agent update_cohesion(Agent agent, Stimulus stimulus, const CohesionParams& params) {
    if (agent.availability == Availability::Failed) {
        throw Error(ErrorKind::AgentFailed, agent.id);
    }
    double c = agent.cohesion;
    switch (stimulus) {
        case Stimulus::UtilizedReturn:
            c = std::min(1.0, c + params.alpha);
            break;
        case Stimulus::CrisisUtilizedReturn:
            c = std::min(1.0, c + params.alpha * params.gamma);
            break;
        case Stimulus::BopTick:
            c = std::max(0.0, c - params.beta * (bop_gap(agent) / 7.0) *
                                      params.weight_of(agent.persona));
            break;
    }
    agent.cohesion = c;
    if (c < params.c_def) {
        agent.availability = Availability::Defected;
    }
    return agent;
}

SubscriptionRecord subscribe(const Agent& agent) {
    if (agent.availability != Availability::Idle) {
        throw Error(ErrorKind::NotIdle, agent.id + " is " + std::string(to_string(agent.availability)));
    }
    SubscriptionRecord rec;
    rec.identity = agent.id;
    rec.persona = agent.persona;
    rec.location = agent.location;
    rec.relationships = agent.relationships;
    for (const auto& ad : agent.advertisements) rec.advertisements.push_back(ad.role);
    return rec;
}

}  // namespace resil
