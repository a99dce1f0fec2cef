#include <yaml-cpp/yaml.h>

#include <fmt/format.h>

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "resil/scenario.hpp"

namespace resil {

namespace {

std::string where(const YAML::Node& n) {
    const YAML::Mark m = n.Mark();
    if (m.is_null()) return "";
    return fmt::format(" (line {}, column {})", m.line + 1, m.column + 1);
}

[[noreturn]] void schema(const std::string& key, const YAML::Node& at, const std::string& detail) {
    throw Error(ErrorKind::SchemaError, key + ": " + detail + where(at));
}

void expect_map(const YAML::Node& n, const std::string& key) {
    if (!n.IsMap()) schema(key, n, "expected a mapping");
}

void expect_seq(const YAML::Node& n, const std::string& key) {
    if (!n.IsSequence()) schema(key, n, "expected a list");
}

void allow_keys(const YAML::Node& map, std::initializer_list<std::string_view> allowed,
                const std::string& prefix) {
    for (const auto& kv : map) {
        const auto key = kv.first.as<std::string>();
        bool ok = false;
        for (auto a : allowed) ok = ok || a == key;
        if (!ok) schema(prefix + key, kv.first, "unknown key");
    }
}

YAML::Node require(const YAML::Node& map, const std::string& key, const std::string& prefix) {
    YAML::Node n = map[key];
    if (!n) schema(prefix + key, map, "missing key");
    return n;
}

template <class T>
T get(const YAML::Node& n, const std::string& key) {
    if (!n.IsScalar()) schema(key, n, "expected a scalar");
    try {
        return n.as<T>();
    } catch (const YAML::Exception&) {
        schema(key, n, "cannot read '" + n.Scalar() + "'");
    }
}

template <class T>
T get_or(const YAML::Node& map, const std::string& key, const std::string& prefix, T fallback) {
    YAML::Node n = map[key];
    return n ? get<T>(n, prefix + key) : fallback;
}

/// Enum conversions report the offending key instead of a bare argument error.
template <class F>
auto convert(const YAML::Node& n, const std::string& key, F&& f) {
    const auto text = get<std::string>(n, key);
    try {
        return f(text);
    } catch (const Error& e) {
        schema(key, n, e.what());
    }
}

Point get_point(const YAML::Node& n, const std::string& key) {
    if (!n.IsSequence() || n.size() != 2) schema(key, n, "expected [x, y]");
    return {get<double>(n[0], key), get<double>(n[1], key)};
}

std::vector<std::string> get_strings(const YAML::Node& n, const std::string& key) {
    expect_seq(n, key);
    std::vector<std::string> out;
    for (const auto& item : n) out.push_back(get<std::string>(item, key));
    return out;
}

Ontology read_ontology(const YAML::Node& n) {
    expect_seq(n, "ontology");
    Ontology o;
    for (std::size_t i = 0; i < n.size(); ++i) {
        const std::string p = fmt::format("ontology[{}].", i);
        const YAML::Node item = n[i];
        expect_map(item, p);
        allow_keys(item, {"role", "parents"}, p);
        const auto role = get<std::string>(require(item, "role", p), p + "role");
        std::vector<Role> parents;
        if (YAML::Node ps = item["parents"]) {
            for (auto& s : get_strings(ps, p + "parents")) parents.emplace_back(std::move(s));
        }
        try {
            o.add_role(Role(role), parents);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::UnknownParent) {
                throw Error(ErrorKind::DanglingReference, e.what());
            }
            schema(p + "role", item, e.what());
        }
    }
    return o;
}

Agent read_agent(const YAML::Node& n, std::size_t i) {
    const std::string p = fmt::format("agents[{}].", i);
    expect_map(n, p);
    allow_keys(n,
               {"id", "persona", "intrinsic_behavior", "location", "perception_radius",
                "advertises", "relationships", "solution_tag", "layer"},
               p);
    Agent a;
    a.id = get<std::string>(require(n, "id", p), p + "id");
    a.persona = convert(require(n, "persona", p), p + "persona",
                        [](const std::string& s) { return persona_from_string(s); });
    a.intrinsic_behavior = intrinsic_behavior_of(a.persona);
    if (YAML::Node b = n["intrinsic_behavior"]) {
        const int ord = get<int>(b, p + "intrinsic_behavior");
        try {
            a.intrinsic_behavior = behavior_from_ordinal(ord);
        } catch (const Error& e) {
            schema(p + "intrinsic_behavior", b, e.what());
        }
    }
    a.exercised_behavior = a.intrinsic_behavior;
    if (YAML::Node l = n["location"]) a.location = get_point(l, p + "location");
    a.perception_radius = get_or<double>(n, "perception_radius", p, 0.0);
    if (YAML::Node ads = n["advertises"]) {
        for (auto& r : get_strings(ads, p + "advertises")) a.advertisements.push_back({a.id, Role(r)});
    }
    if (YAML::Node rels = n["relationships"]) {
        expect_seq(rels, p + "relationships");
        for (const auto& r : rels) {
            expect_map(r, p + "relationships");
            allow_keys(r, {"kind", "other"}, p + "relationships.");
            a.relationships.push_back(
                {get<std::string>(require(r, "kind", p + "relationships."), p + "relationships.kind"),
                 get<std::string>(require(r, "other", p + "relationships."),
                                  p + "relationships.other")});
        }
    }
    a.solution_tag = get_or<std::string>(n, "solution_tag", p, "");
    a.layer = get_or<int>(n, "layer", p, 0);
    return a;
}

OrgSpec read_org(const YAML::Node& n) {
    const std::string p = "organization.";
    expect_map(n, "organization");
    allow_keys(n,
               {"variant", "hop_delay", "cc_processing_time", "escalation_threshold",
                "devices_per_patient", "assignment"},
               p);
    OrgSpec o;
    o.variant = convert(require(n, "variant", p), p + "variant",
                        [](const std::string& s) { return org_variant_from_string(s); });
    o.hop_delay = get_or<Tick>(n, "hop_delay", p, 1);
    o.cc_processing_time = get_or<Tick>(n, "cc_processing_time", p, 0);
    o.escalation_threshold = get_or<int>(n, "escalation_threshold", p, 3);
    o.devices_per_patient = get_or<int>(n, "devices_per_patient", p, 1);
    if (YAML::Node as = n["assignment"]) {
        expect_map(as, p + "assignment");
        for (const auto& kv : as) {
            o.assignment[kv.first.as<std::string>()] = get<std::string>(kv.second, p + "assignment");
        }
    }
    return o;
}

ServicingProtocol read_protocol(const YAML::Node& n, std::size_t i) {
    const std::string p = fmt::format("protocols[{}].", i);
    expect_map(n, p);
    allow_keys(n, {"id", "trigger", "requirements", "service_duration", "deadline", "son_lifespan"},
               p);
    ServicingProtocol pr;
    pr.id = get<std::string>(require(n, "id", p), p + "id");
    pr.trigger_kind = get<std::string>(require(n, "trigger", p), p + "trigger");
    const YAML::Node reqs = require(n, "requirements", p);
    expect_seq(reqs, p + "requirements");
    for (std::size_t j = 0; j < reqs.size(); ++j) {
        const std::string q = fmt::format("{}requirements[{}].", p, j);
        const YAML::Node r = reqs[j];
        expect_map(r, q);
        allow_keys(r, {"role", "min", "max"}, q);
        Requirement req;
        req.role = Role(get<std::string>(require(r, "role", q), q + "role"));
        req.min_count = get_or<int>(r, "min", q, 1);
        req.max_count = get_or<int>(r, "max", q, req.min_count);
        pr.requirements.push_back(std::move(req));
    }
    pr.service_duration = get<Tick>(require(n, "service_duration", p), p + "service_duration");
    pr.deadline = get<Tick>(require(n, "deadline", p), p + "deadline");
    pr.son_lifespan = get_or<Tick>(n, "son_lifespan", p, pr.deadline);
    return pr;
}

Arrival read_arrival(const YAML::Node& n, const std::string& key) {
    if (!n.IsMap() || n.size() != 1) {
        schema(key, n, "expected one of {fixed: d}, {uniform: [a, b]}, {geometric: p}");
    }
    const auto law = n.begin()->first.as<std::string>();
    const YAML::Node v = n.begin()->second;
    if (law == "fixed") return Arrival::fixed(get<Tick>(v, key + ".fixed"));
    if (law == "geometric") return Arrival::geometric(get<double>(v, key + ".geometric"));
    if (law == "uniform") {
        if (!v.IsSequence() || v.size() != 2) schema(key + ".uniform", v, "expected [a, b]");
        return Arrival::uniform(get<Tick>(v[0], key + ".uniform"), get<Tick>(v[1], key + ".uniform"));
    }
    schema(key + "." + law, n, "unknown arrival law");
}

WorkloadStream read_stream(const YAML::Node& n, std::size_t i) {
    const std::string p = fmt::format("workload[{}].", i);
    expect_map(n, p);
    allow_keys(n, {"kind", "arrival", "sources", "severity"}, p);
    WorkloadStream w;
    w.kind = get<std::string>(require(n, "kind", p), p + "kind");
    w.arrival = read_arrival(require(n, "arrival", p), p + "arrival");
    if (YAML::Node s = n["sources"]) w.sources = get_strings(s, p + "sources");
    if (YAML::Node s = n["severity"]) {
        w.severity = convert(s, p + "severity",
                             [](const std::string& x) { return severity_from_string(x); });
    }
    return w;
}

FaultEntry read_fault(const YAML::Node& n, std::size_t i) {
    const std::string p = fmt::format("faults[{}].", i);
    expect_map(n, p);
    allow_keys(n, {"at", "fail", "recover", "black_swan", "crisis"}, p);
    if (n.size() != 2) schema(p + "at", n, "expected 'at' and exactly one action");
    FaultEntry f;
    f.at = get<Tick>(require(n, "at", p), p + "at");
    if (YAML::Node v = n["fail"]) {
        f.type = FaultEntry::Type::Fail;
        f.target = get<std::string>(v, p + "fail");
    } else if (YAML::Node v = n["recover"]) {
        f.type = FaultEntry::Type::Recover;
        f.target = get<std::string>(v, p + "recover");
    } else if (YAML::Node v = n["black_swan"]) {
        f.type = FaultEntry::Type::BlackSwan;
        f.target = get<std::string>(v, p + "black_swan");
    } else {
        const YAML::Node c = n["crisis"];
        const auto s = get<std::string>(c, p + "crisis");
        if (s == "start") {
            f.type = FaultEntry::Type::CrisisStart;
        } else if (s == "end") {
            f.type = FaultEntry::Type::CrisisEnd;
        } else {
            schema(p + "crisis", c, "expected start or end");
        }
    }
    return f;
}

PerceptionSpec read_perception(const YAML::Node& n, std::size_t i) {
    const std::string p = fmt::format("perceptions[{}].", i);
    expect_map(n, p);
    allow_keys(n, {"at", "location", "threat", "mode"}, p);
    PerceptionSpec s;
    s.event.time = get<Tick>(require(n, "at", p), p + "at");
    s.event.location = get_point(require(n, "location", p), p + "location");
    s.event.threat = get<std::string>(require(n, "threat", p), p + "threat");
    s.mode = convert(require(n, "mode", p), p + "mode",
                     [](const std::string& x) { return perception_mode_from_string(x); });
    return s;
}

CohesionParams read_cohesion(const YAML::Node& n) {
    const std::string p = "cohesion.";
    expect_map(n, "cohesion");
    allow_keys(n, {"alpha", "beta", "gamma", "c_def", "initial", "persona_weight"}, p);
    CohesionParams c;
    c.alpha = get_or<double>(n, "alpha", p, c.alpha);
    c.beta = get_or<double>(n, "beta", p, c.beta);
    c.gamma = get_or<double>(n, "gamma", p, c.gamma);
    c.c_def = get_or<double>(n, "c_def", p, c.c_def);
    c.initial = get_or<double>(n, "initial", p, c.initial);
    if (YAML::Node w = n["persona_weight"]) {
        expect_map(w, p + "persona_weight");
        for (const auto& kv : w) {
            const PersonaClass persona =
                convert(kv.first, p + "persona_weight",
                        [](const std::string& s) { return persona_from_string(s); });
            c.persona_weight[persona] = get<double>(kv.second, p + "persona_weight");
        }
    }
    return c;
}

PersistenceParams read_persistence(const YAML::Node& n) {
    const std::string p = "persistence.";
    expect_map(n, "persistence");
    allow_keys(n, {"theta", "tau_t", "k"}, p);
    PersistenceParams r;
    r.theta = get_or<double>(n, "theta", p, r.theta);
    r.tau_t = get_or<Tick>(n, "tau_t", p, r.tau_t);
    r.k = get_or<int>(n, "k", p, r.k);
    return r;
}

Scenario read_scenario(const YAML::Node& root) {
    if (!root.IsMap()) schema("schema_version", root, "document must be a mapping");
    allow_keys(root,
               {"schema_version", "name", "horizon", "ontology", "agents", "organization",
                "protocols", "workload", "faults", "perceptions", "cohesion", "persistence",
                "cohesion_interval", "time_scale"},
               "");
    Scenario s;
    s.schema_version = get<int>(require(root, "schema_version", ""), "schema_version");
    if (s.schema_version != scenario_schema_version) {
        schema("schema_version", root["schema_version"],
               fmt::format("unsupported version {}", s.schema_version));
    }
    s.name = get<std::string>(require(root, "name", ""), "name");
    s.horizon = get<Tick>(require(root, "horizon", ""), "horizon");
    if (YAML::Node o = root["ontology"]) s.ontology = read_ontology(o);

    const YAML::Node agents = require(root, "agents", "");
    expect_seq(agents, "agents");
    for (std::size_t i = 0; i < agents.size(); ++i) s.agents.push_back(read_agent(agents[i], i));

    s.organization = read_org(require(root, "organization", ""));

    if (YAML::Node ps = root["protocols"]) {
        expect_seq(ps, "protocols");
        for (std::size_t i = 0; i < ps.size(); ++i) s.protocols.push_back(read_protocol(ps[i], i));
    }
    if (YAML::Node ws = root["workload"]) {
        expect_seq(ws, "workload");
        for (std::size_t i = 0; i < ws.size(); ++i) s.workload.push_back(read_stream(ws[i], i));
    }
    if (YAML::Node fs = root["faults"]) {
        expect_seq(fs, "faults");
        for (std::size_t i = 0; i < fs.size(); ++i) s.faults.push_back(read_fault(fs[i], i));
    }
    if (YAML::Node ps = root["perceptions"]) {
        expect_seq(ps, "perceptions");
        for (std::size_t i = 0; i < ps.size(); ++i) {
            s.perceptions.push_back(read_perception(ps[i], i));
        }
    }
    if (YAML::Node c = root["cohesion"]) s.cohesion = read_cohesion(c);
    if (YAML::Node p = root["persistence"]) s.persistence = read_persistence(p);
    s.cohesion_interval = get_or<Tick>(root, "cohesion_interval", "", 10);
    s.time_scale = get_or<Tick>(root, "time_scale", "", 1);
    return s;
}

// --- writing ---------------------------------------------------------------

std::string real(double v) { return fmt::format("{}", v); }

void emit_point(YAML::Emitter& out, const Point& pt) {
    out << YAML::Flow << YAML::BeginSeq << real(pt.x) << real(pt.y) << YAML::EndSeq;
}

std::string_view fault_key(FaultEntry::Type t) {
    switch (t) {
        case FaultEntry::Type::Fail: return "fail";
        case FaultEntry::Type::Recover: return "recover";
        case FaultEntry::Type::BlackSwan: return "black_swan";
        case FaultEntry::Type::CrisisStart:
        case FaultEntry::Type::CrisisEnd: return "crisis";
    }
    return "fail";
}

}  // namespace

Scenario parse_scenario_text(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw Error(ErrorKind::SyntaxError,
                    fmt::format("{} (line {}, column {})", e.msg, e.mark.line + 1, e.mark.column + 1));
    }
    Scenario s = read_scenario(root);
    validate(s);
    return s;
}

Scenario parse_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str());
}

std::string serialize_scenario(const Scenario& s) {
    YAML::Emitter out;
    out << YAML::BeginMap;
    out << YAML::Key << "schema_version" << YAML::Value << s.schema_version;
    out << YAML::Key << "name" << YAML::Value << s.name;
    out << YAML::Key << "horizon" << YAML::Value << s.horizon;

    out << YAML::Key << "ontology" << YAML::Value << YAML::BeginSeq;
    for (const auto& role : s.ontology.roles()) {
        out << YAML::Flow << YAML::BeginMap << YAML::Key << "role" << YAML::Value << role.id;
        const auto parents = s.ontology.parents_of(role);
        if (!parents.empty()) {
            out << YAML::Key << "parents" << YAML::Value << YAML::Flow << YAML::BeginSeq;
            for (const auto& pr : parents) out << pr.id;
            out << YAML::EndSeq;
        }
        out << YAML::EndMap;
    }
    out << YAML::EndSeq;

    out << YAML::Key << "agents" << YAML::Value << YAML::BeginSeq;
    for (const auto& a : s.agents) {
        out << YAML::BeginMap;
        out << YAML::Key << "id" << YAML::Value << a.id;
        out << YAML::Key << "persona" << YAML::Value << std::string(to_string(a.persona));
        if (a.intrinsic_behavior != intrinsic_behavior_of(a.persona)) {
            out << YAML::Key << "intrinsic_behavior" << YAML::Value << ordinal(a.intrinsic_behavior);
        }
        out << YAML::Key << "location" << YAML::Value;
        emit_point(out, a.location);
        out << YAML::Key << "perception_radius" << YAML::Value << real(a.perception_radius);
        out << YAML::Key << "advertises" << YAML::Value << YAML::Flow << YAML::BeginSeq;
        for (const auto& ad : a.advertisements) out << ad.role.id;
        out << YAML::EndSeq;
        if (!a.relationships.empty()) {
            out << YAML::Key << "relationships" << YAML::Value << YAML::BeginSeq;
            for (const auto& r : a.relationships) {
                out << YAML::Flow << YAML::BeginMap << YAML::Key << "kind" << YAML::Value << r.kind
                    << YAML::Key << "other" << YAML::Value << r.other << YAML::EndMap;
            }
            out << YAML::EndSeq;
        }
        if (!a.solution_tag.empty()) {
            out << YAML::Key << "solution_tag" << YAML::Value << a.solution_tag;
        }
        out << YAML::Key << "layer" << YAML::Value << a.layer;
        out << YAML::EndMap;
    }
    out << YAML::EndSeq;

    const OrgSpec& o = s.organization;
    out << YAML::Key << "organization" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "variant" << YAML::Value << std::string(to_string(o.variant));
    out << YAML::Key << "hop_delay" << YAML::Value << o.hop_delay;
    out << YAML::Key << "cc_processing_time" << YAML::Value << o.cc_processing_time;
    out << YAML::Key << "escalation_threshold" << YAML::Value << o.escalation_threshold;
    if (o.variant == OrgVariant::SafetyNet) {
        out << YAML::Key << "devices_per_patient" << YAML::Value << o.devices_per_patient;
        out << YAML::Key << "assignment" << YAML::Value << YAML::BeginMap;
        for (const auto& [patient, doctor] : o.assignment) {
            out << YAML::Key << patient << YAML::Value << doctor;
        }
        out << YAML::EndMap;
    }
    out << YAML::EndMap;

    out << YAML::Key << "protocols" << YAML::Value << YAML::BeginSeq;
    for (const auto& p : s.protocols) {
        out << YAML::BeginMap;
        out << YAML::Key << "id" << YAML::Value << p.id;
        out << YAML::Key << "trigger" << YAML::Value << p.trigger_kind;
        out << YAML::Key << "requirements" << YAML::Value << YAML::BeginSeq;
        for (const auto& r : p.requirements) {
            out << YAML::Flow << YAML::BeginMap << YAML::Key << "role" << YAML::Value << r.role.id
                << YAML::Key << "min" << YAML::Value << r.min_count << YAML::Key << "max"
                << YAML::Value << r.max_count << YAML::EndMap;
        }
        out << YAML::EndSeq;
        out << YAML::Key << "service_duration" << YAML::Value << p.service_duration;
        out << YAML::Key << "deadline" << YAML::Value << p.deadline;
        out << YAML::Key << "son_lifespan" << YAML::Value << p.son_lifespan;
        out << YAML::EndMap;
    }
    out << YAML::EndSeq;

    out << YAML::Key << "workload" << YAML::Value << YAML::BeginSeq;
    for (const auto& w : s.workload) {
        out << YAML::BeginMap;
        out << YAML::Key << "kind" << YAML::Value << w.kind;
        out << YAML::Key << "arrival" << YAML::Value << YAML::Flow << YAML::BeginMap;
        switch (w.arrival.law) {
            case Arrival::Law::Fixed:
                out << YAML::Key << "fixed" << YAML::Value << w.arrival.a;
                break;
            case Arrival::Law::Uniform:
                out << YAML::Key << "uniform" << YAML::Value << YAML::Flow << YAML::BeginSeq
                    << w.arrival.a << w.arrival.b << YAML::EndSeq;
                break;
            case Arrival::Law::Geometric:
                out << YAML::Key << "geometric" << YAML::Value << real(w.arrival.p);
                break;
        }
        out << YAML::EndMap;
        if (!w.sources.empty()) {
            out << YAML::Key << "sources" << YAML::Value << YAML::Flow << YAML::BeginSeq;
            for (const auto& src : w.sources) out << src;
            out << YAML::EndSeq;
        }
        out << YAML::Key << "severity" << YAML::Value << std::string(to_string(w.severity));
        out << YAML::EndMap;
    }
    out << YAML::EndSeq;

    if (!s.faults.empty()) {
        out << YAML::Key << "faults" << YAML::Value << YAML::BeginSeq;
        for (const auto& f : s.faults) {
            out << YAML::Flow << YAML::BeginMap << YAML::Key << "at" << YAML::Value << f.at;
            out << YAML::Key << std::string(fault_key(f.type)) << YAML::Value;
            if (f.type == FaultEntry::Type::CrisisStart) {
                out << "start";
            } else if (f.type == FaultEntry::Type::CrisisEnd) {
                out << "end";
            } else {
                out << f.target;
            }
            out << YAML::EndMap;
        }
        out << YAML::EndSeq;
    }

    if (!s.perceptions.empty()) {
        out << YAML::Key << "perceptions" << YAML::Value << YAML::BeginSeq;
        for (const auto& p : s.perceptions) {
            out << YAML::Flow << YAML::BeginMap;
            out << YAML::Key << "at" << YAML::Value << p.event.time;
            out << YAML::Key << "location" << YAML::Value;
            emit_point(out, p.event.location);
            out << YAML::Key << "threat" << YAML::Value << p.event.threat;
            out << YAML::Key << "mode" << YAML::Value << std::string(to_string(p.mode));
            out << YAML::EndMap;
        }
        out << YAML::EndSeq;
    }

    const CohesionParams& c = s.cohesion;
    const auto default_weights = CohesionParams::default_persona_weights();
    out << YAML::Key << "cohesion" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "alpha" << YAML::Value << real(c.alpha);
    out << YAML::Key << "beta" << YAML::Value << real(c.beta);
    out << YAML::Key << "gamma" << YAML::Value << real(c.gamma);
    out << YAML::Key << "c_def" << YAML::Value << real(c.c_def);
    out << YAML::Key << "initial" << YAML::Value << real(c.initial);
    bool any_weight = false;
    for (const auto& [persona, w] : c.persona_weight) {
        auto it = default_weights.find(persona);
        if (it != default_weights.end() && it->second == w) continue;
        if (!any_weight) {
            out << YAML::Key << "persona_weight" << YAML::Value << YAML::BeginMap;
            any_weight = true;
        }
        out << YAML::Key << std::string(to_string(persona)) << YAML::Value << real(w);
    }
    if (any_weight) out << YAML::EndMap;
    out << YAML::EndMap;

    out << YAML::Key << "persistence" << YAML::Value << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "theta" << YAML::Value << real(s.persistence.theta);
    out << YAML::Key << "tau_t" << YAML::Value << s.persistence.tau_t;
    out << YAML::Key << "k" << YAML::Value << s.persistence.k;
    out << YAML::EndMap;

    out << YAML::Key << "cohesion_interval" << YAML::Value << s.cohesion_interval;
    out << YAML::Key << "time_scale" << YAML::Value << s.time_scale;
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

}  // namespace resil
