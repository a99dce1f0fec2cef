#include "resil/workload.hpp"

#include <algorithm>

namespace resil {

void validate(const WorkloadSpec& spec) {
    if (spec.horizon <= 0) throw Error(ErrorKind::InvalidArgument, "horizon must be > 0");
    for (const auto& s : spec.streams) {
        if (s.kind.empty()) throw Error(ErrorKind::InvalidArgument, "stream without kind");
        if (s.sources.empty()) {
            throw Error(ErrorKind::InvalidArgument, "stream '" + s.kind + "' has no sources");
        }
        const Arrival& a = s.arrival;
        switch (a.law) {
            case Arrival::Law::Fixed:
                if (a.a <= 0) throw Error(ErrorKind::InvalidArgument, "fixed interval must be > 0");
                break;
            case Arrival::Law::Uniform:
                if (a.a <= 0 || a.b < a.a) {
                    throw Error(ErrorKind::InvalidArgument, "uniform bounds need 0 < a <= b");
                }
                break;
            case Arrival::Law::Geometric:
                if (!(a.p > 0.0 && a.p <= 1.0)) {
                    throw Error(ErrorKind::InvalidArgument, "geometric p must lie in (0, 1]");
                }
                break;
        }
    }
}

namespace {

Tick draw_gap(const Arrival& a, Rng& rng) {
    switch (a.law) {
        case Arrival::Law::Fixed:
            return a.a;
        case Arrival::Law::Uniform:
            return rng.uniform_int(a.a, a.b);
        case Arrival::Law::Geometric: {
            Tick trials = 1;
            while (!rng.bernoulli(a.p)) ++trials;
            return trials;
        }
    }
    return a.a;
}

}  // namespace

std::vector<Notification> generate_workload(const WorkloadSpec& spec, const Population& agents,
                                            Rng& rng) {
    validate(spec);
    struct Pending {
        Notification n;
        std::size_t stream;
        std::size_t order;
    };
    std::vector<Pending> all;
    for (std::size_t s = 0; s < spec.streams.size(); ++s) {
        const auto& stream = spec.streams[s];
        std::size_t order = 0;
        for (Tick t = draw_gap(stream.arrival, rng); t < spec.horizon;
             t += draw_gap(stream.arrival, rng)) {
            const AgentId& src = stream.sources[rng.uniform_below(stream.sources.size())];
            auto it = agents.find(src);
            if (it == agents.end()) {
                throw Error(ErrorKind::InvalidArgument, "unknown source agent " + src);
            }
            Notification n;
            n.kind = stream.kind;
            n.source = src;
            n.location = it->second.location;
            n.time = t;
            n.severity = stream.severity;
            all.push_back({std::move(n), s, order++});
        }
    }
    std::sort(all.begin(), all.end(), [](const Pending& x, const Pending& y) {
        if (x.n.time != y.n.time) return x.n.time < y.n.time;
        if (x.stream != y.stream) return x.stream < y.stream;
        return x.order < y.order;
    });
    std::vector<Notification> out;
    out.reserve(all.size());
    for (auto& p : all) {
        p.n.id = out.size();
        out.push_back(std::move(p.n));
    }
    return out;
}

}  // namespace resil
