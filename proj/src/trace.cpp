#include "resil/trace.hpp"

#include <fmt/format.h>

#include <ostream>

namespace resil {

std::string_view to_string(PerceptionMode m) {
    return m == PerceptionMode::Individual ? "individual" : "collective";
}

PerceptionMode perception_mode_from_string(std::string_view s) {
    if (s == "individual") return PerceptionMode::Individual;
    if (s == "collective") return PerceptionMode::Collective;
    throw Error(ErrorKind::InvalidArgument, "unknown perception mode '" + std::string(s) + "'");
}

namespace {

std::string join(const std::vector<AgentId>& ids) {
    return fmt::format("{}", fmt::join(ids, ","));
}

std::string join(const std::vector<int>& xs) {
    return fmt::format("{}", fmt::join(xs, ","));
}

std::string join(const MissingRoles& m) {
    std::string out;
    for (const auto& s : m) {
        if (!out.empty()) out += ',';
        out += fmt::format("\"{}\":{}", s.role.id, s.missing);
    }
    return out;
}

struct Formatter {
    std::string operator()(const rec::RunStarted& r) const {
        return fmt::format("RUN scenario={} seed={} horizon={} structure={} c_def={:.6f}", r.scenario,
                           r.seed, r.horizon, to_string(r.structure), r.c_def);
    }
    std::string operator()(const rec::MemberSnapshot& r) const {
        const Agent& a = r.agent;
        return fmt::format("MEMBER agent={} persona={} intrinsic={} exercised={} layer={} tag={}",
                           a.id, to_string(a.persona), ordinal(a.intrinsic_behavior),
                           ordinal(a.exercised_behavior), a.layer,
                           a.solution_tag.empty() ? "-" : a.solution_tag);
    }
    std::string operator()(const rec::Subscribed& r) const {
        return fmt::format("SUBSCRIBE agent={} cc={}", r.agent, r.cc);
    }
    std::string operator()(const rec::Notified& r) const {
        return fmt::format("NOTIFY n={} kind={} source={} layer={} deadline={}", r.id, r.kind,
                           r.source, r.layer, r.deadline);
    }
    std::string operator()(const rec::Alerted& r) const {
        return fmt::format("ALERT n={} doctor={} latency={}", r.id, r.doctor, r.latency);
    }
    std::string operator()(const rec::Matched& r) const {
        return fmt::format("MATCH n={} cc={} depth={} participants={}", r.id, r.cc, r.depth,
                           join(r.participants));
    }
    std::string operator()(const rec::Unmatched& r) const {
        return fmt::format("UNMATCHED n={} cc={} depth={} missing={}", r.id, r.cc, r.depth,
                           join(r.missing));
    }
    std::string operator()(const rec::Dropped& r) const {
        return fmt::format("DROP n={} reason={}", r.id, r.reason);
    }
    std::string operator()(const rec::SonCreated& r) const {
        return fmt::format("SON_CREATE son={} n={} cc={} lifespan={} span={} participants={}", r.son,
                           r.id, r.cc, r.lifespan, join(r.span), join(r.participants));
    }
    std::string operator()(const rec::SonDissolved& r) const {
        return fmt::format("SON_DISSOLVE son={} expired={}", r.son, r.expired ? 1 : 0);
    }
    std::string operator()(const rec::ServiceStarted& r) const {
        return fmt::format("SERVICE_START n={}", r.id);
    }
    std::string operator()(const rec::ServiceCompleted& r) const {
        return fmt::format("SERVICE_COMPLETE n={} latency={} in_time={}", r.id, r.latency,
                           r.in_time ? 1 : 0);
    }
    std::string operator()(const rec::NodeFailed& r) const {
        return fmt::format("FAIL node={}", r.node);
    }
    std::string operator()(const rec::NodeRecovered& r) const {
        return fmt::format("RECOVER node={}", r.node);
    }
    std::string operator()(const rec::BlackSwanStruck& r) const {
        return fmt::format("BLACK_SWAN tag={} struck={}", r.tag, r.struck);
    }
    std::string operator()(const rec::CrisisChanged& r) const {
        return fmt::format("CRISIS {}", r.open ? "start" : "end");
    }
    std::string operator()(const rec::Defected& r) const {
        return fmt::format("DEFECT agent={} cohesion={:.6f}", r.agent, r.cohesion);
    }
    std::string operator()(const rec::CohesionSample& r) const {
        return fmt::format("COHESION agent={} value={:.6f} state={}", r.agent, r.cohesion,
                           to_string(r.availability));
    }
    std::string operator()(const rec::LivenessSample& r) const {
        return fmt::format("LIVENESS matching={}", r.matching_live ? 1 : 0);
    }
    std::string operator()(const rec::Reacted& r) const {
        return fmt::format("REACT threat={} agent={} at={} mode={}", r.threat, r.agent, r.at,
                           to_string(r.mode));
    }
    std::string operator()(const rec::RunEnded&) const { return "END"; }
};

}  // namespace

std::string format_line(const TraceEntry& e) {
    return fmt::format("{:>8} {}", e.time, std::visit(Formatter{}, e.record));
}

void Trace::write_log(std::ostream& os) const {
    for (const auto& e : entries_) os << format_line(e) << '\n';
}

std::string Trace::to_log() const {
    std::string out;
    for (const auto& e : entries_) {
        out += format_line(e);
        out += '\n';
    }
    return out;
}

}  // namespace resil
