#include "resil/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <future>
#include <ostream>
#include <set>

#include "resil/simulation.hpp"

namespace resil::cli {

std::string format_real(double v) { return fmt::format("{:.6f}", v); }

std::string csv_header() {
    return "scenario,seed,notifications,serviced,service_ratio,mean_latency,p95_latency,unserviced,"
           "max_escalation_depth,bop_index,mismatched_count,defections,persona_loss_class,"
           "tag_entropy,dominant_tag_share\n";
}

std::string csv_row(const std::string& scenario, std::uint64_t seed, const IndicatorReport& r) {
    const ResponseMetrics& m = r.response;
    return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", scenario, seed,
                       m.notifications, m.serviced, format_real(m.service_ratio),
                       format_real(m.mean_latency), m.p95_latency, m.unserviced,
                       m.max_escalation_depth(), format_real(r.bop.mean), r.bop.mismatched,
                       r.defections, to_string(r.persona_loss), format_real(r.diversity.tag_entropy),
                       format_real(r.diversity.dominant_tag_share));
}

RunOutput run_once(const Scenario& scenario, std::uint64_t seed) {
    RunOutput out;
    out.scenario = scenario.name;
    out.seed = seed;
    out.horizon = scenario.horizon;
    out.trace = run(scenario, seed);
    out.report = build_report(out.trace, scenario.persistence);
    return out;
}

std::string report_text(const RunOutput& run) {
    const IndicatorReport& r = run.report;
    const ResponseMetrics& m = r.response;
    std::string s;
    s += fmt::format("scenario: {}\nseed: {}\nhorizon: {}\n\n", run.scenario, run.seed, run.horizon);
    s += "response\n";
    s += fmt::format("  notifications: {}\n  serviced: {}\n  serviced_in_time: {}\n", m.notifications,
                     m.serviced, m.serviced_in_time);
    s += fmt::format("  service_ratio: {}\n  mean_latency: {}\n  p95_latency: {}\n  unserviced: {}\n",
                     format_real(m.service_ratio), format_real(m.mean_latency), m.p95_latency,
                     m.unserviced);
    s += "  escalation_histogram:";
    if (m.escalation_histogram.empty()) s += " -";
    for (const auto& [depth, count] : m.escalation_histogram) s += fmt::format(" {}:{}", depth, count);
    s += "\n\nbop\n";
    s += fmt::format("  bop_index: {}\n  mismatched_count: {}\n", format_real(r.bop.mean),
                     r.bop.mismatched);
    for (const auto& [agent, gap] : r.bop.per_agent) {
        if (gap > 0) s += fmt::format("  gap {} {}\n", agent, gap);
    }
    s += "\npersona\n";
    std::size_t lost = 0;
    for (const auto& e : r.persona_emergent) lost += e.emergent ? 0 : 1;
    s += fmt::format("  samples: {}\n  samples_lost: {}\n  persona_loss_class: {}\n  defections: {}\n",
                     r.persona_emergent.size(), lost, to_string(r.persona_loss), r.defections);
    s += "\ndiversity\n";
    s += fmt::format("  tag_entropy: {}\n  dominant_tag_share: {}\n",
                     format_real(r.diversity.tag_entropy),
                     format_real(r.diversity.dominant_tag_share));
    return s;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorKind::IoError, "cannot write " + path.string());
    f << text;
    if (!f.flush()) throw Error(ErrorKind::IoError, "cannot write " + path.string());
}

void prepare_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw Error(ErrorKind::IoError, "cannot create output directory " + dir.string());
    }
}

/// Raised for failures that happen before any simulation runs.
struct ScenarioProblem : Error {
    explicit ScenarioProblem(const Error& e) : Error(e) {}
};

Scenario load(const std::filesystem::path& path) {
    try {
        return parse_scenario(path);
    } catch (const Error& e) {
        throw ScenarioProblem(e);
    }
}

}  // namespace

void cmd_simulate(const std::filesystem::path& scenario, std::uint64_t seed,
                  const std::filesystem::path& out) {
    const Scenario s = load(scenario);
    prepare_dir(out);
    const RunOutput r = run_once(s, seed);
    write_file(out / "results.csv", csv_header() + csv_row(r.scenario, r.seed, r.report));
    write_file(out / "trace.log", r.trace.to_log());
    write_file(out / "report.txt", report_text(r));
}

void cmd_compare(const std::vector<std::filesystem::path>& scenarios,
                 const std::vector<std::uint64_t>& seeds, const std::filesystem::path& out) {
    if (scenarios.size() < 2) throw Error(ErrorKind::InvalidArgument, "compare needs at least two scenarios");
    if (seeds.empty()) throw Error(ErrorKind::InvalidArgument, "no seeds given");
    std::vector<Scenario> loaded;
    for (const auto& p : scenarios) loaded.push_back(load(p));
    prepare_dir(out);

    std::vector<std::future<RunOutput>> jobs;
    for (const auto& s : loaded) {
        for (auto seed : seeds) {
            jobs.push_back(std::async(std::launch::async, [&s, seed] { return run_once(s, seed); }));
        }
    }

    struct Summary {
        std::string name;
        Tick horizon = 0;
        double ratio = 0.0;
        double latency = 0.0;
        std::size_t order = 0;
    };
    std::vector<Summary> summary(loaded.size());
    std::string csv = csv_header();
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const RunOutput r = jobs[i].get();
        csv += csv_row(r.scenario, r.seed, r.report);
        Summary& s = summary[i / seeds.size()];
        s.name = r.scenario;
        s.horizon = r.horizon;
        s.order = i / seeds.size();
        s.ratio += r.report.response.service_ratio / static_cast<double>(seeds.size());
        s.latency += r.report.response.mean_latency / static_cast<double>(seeds.size());
    }
    write_file(out / "results.csv", csv);

    std::string text;
    std::set<Tick> horizons;
    for (const auto& s : summary) horizons.insert(s.horizon);
    if (horizons.size() > 1) {
        text += "warning: scenarios use different horizons:";
        for (const auto& s : summary) text += fmt::format(" {}={}", s.name, s.horizon);
        text += "\n";
    }
    std::stable_sort(summary.begin(), summary.end(), [](const Summary& a, const Summary& b) {
        if (a.ratio != b.ratio) return a.ratio > b.ratio;
        return a.latency < b.latency;
    });
    text += fmt::format("seeds: {}\n", fmt::join(seeds, ","));
    text += "rank,scenario,mean_service_ratio,mean_latency\n";
    for (std::size_t i = 0; i < summary.size(); ++i) {
        text += fmt::format("{},{},{},{}\n", i + 1, summary[i].name, format_real(summary[i].ratio),
                            format_real(summary[i].latency));
    }
    write_file(out / "comparison.txt", text);
}

std::vector<PoolBounds> parse_role_spec(const std::string& spec) {
    std::vector<PoolBounds> out;
    std::size_t pos = 0;
    auto bad = [&] { throw Error(ErrorKind::InvalidArgument, "malformed role spec '" + spec + "'"); };
    auto number = [&](std::string_view text) {
        if (text.empty() || text.size() > 9 ||
            !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            bad();
        }
        return std::stoi(std::string(text));
    };
    while (pos <= spec.size()) {
        const std::size_t end = std::min(spec.find(',', pos), spec.size());
        const std::string_view item(spec.data() + pos, end - pos);
        const auto colon = item.find(':');
        const auto dash = item.find('-');
        if (colon == std::string_view::npos || dash == std::string_view::npos || dash < colon) bad();
        out.push_back({number(item.substr(0, colon)), number(item.substr(colon + 1, dash - colon - 1)),
                       number(item.substr(dash + 1))});
        pos = end + 1;
    }
    return out;
}

std::vector<RolePool> synthetic_pools(const std::vector<PoolBounds>& bounds) {
    std::vector<RolePool> pools;
    for (std::size_t r = 0; r < bounds.size(); ++r) {
        RolePool p;
        const int width = static_cast<int>(std::to_string(std::max(bounds[r].size - 1, 0)).size());
        for (int m = 0; m < bounds[r].size; ++m) {
            p.members.push_back(fmt::format("r{}m{:0{}}", r, m, width));
        }
        p.min_count = bounds[r].min_count;
        p.max_count = bounds[r].max_count;
        pools.push_back(std::move(p));
    }
    return pools;
}

std::uint64_t cmd_enumerate_teams(const std::string& spec, bool list, std::ostream& os) {
    const auto bounds = parse_role_spec(spec);
    const std::uint64_t count = count_teams(bounds);
    os << count << '\n';
    if (list) {
        TeamEnumerator it(synthetic_pools(bounds));
        while (auto team = it.next()) {
            std::vector<std::string> parts;
            for (const auto& slot : *team) {
                parts.push_back(slot.empty() ? "-" : fmt::format("{}", fmt::join(slot, ",")));
            }
            os << fmt::format("{}", fmt::join(parts, " | ")) << '\n';
        }
    }
    return count;
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Collective organization resilience simulator", "resil-sim"};
    app.require_subcommand(1);
    bool verbose = false;
    app.add_flag("--verbose", verbose, "Print more detail");

    std::string scenario;
    std::uint64_t seed = 0;
    std::string out_dir = "./out";
    auto* sim = app.add_subcommand("simulate", "Run one scenario");
    sim->add_option("scenario", scenario, "Scenario file")->required();
    sim->add_option("--seed", seed, "Random seed")->capture_default_str();
    sim->add_option("--out", out_dir, "Output directory")->capture_default_str();
    sim->add_flag("--verbose", verbose, "Print more detail");

    std::vector<std::string> scenarios;
    std::vector<std::uint64_t> seeds;
    auto* cmp = app.add_subcommand("compare", "Run several scenarios over a seed list");
    cmp->add_option("scenarios", scenarios, "Scenario files")->required();
    cmp->add_option("--seeds", seeds, "Comma separated seeds")->delimiter(',');
    cmp->add_option("--seed", seed, "Single seed when --seeds is absent");
    cmp->add_option("--out", out_dir, "Output directory")->capture_default_str();
    cmp->add_flag("--verbose", verbose, "Print more detail");

    std::string role_spec;
    auto* en = app.add_subcommand("enumerate-teams", "Count (and list) team states");
    en->add_option("spec", role_spec, "size:min-max per role, comma separated")->required();
    en->add_flag("--verbose", verbose, "List every team state");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n' << app.help();
        return Usage;
    }

    try {
        if (*sim) {
            cmd_simulate(scenario, seed, out_dir);
            if (verbose) out << "wrote results.csv, trace.log, report.txt to " << out_dir << '\n';
        } else if (*cmp) {
            if (scenarios.size() < 2) {
                err << "compare needs at least two scenario files\n";
                return Usage;
            }
            if (seeds.empty()) seeds.push_back(seed);
            std::vector<std::filesystem::path> paths(scenarios.begin(), scenarios.end());
            cmd_compare(paths, seeds, out_dir);
            if (verbose) out << "wrote results.csv, comparison.txt to " << out_dir << '\n';
        } else if (*en) {
            cmd_enumerate_teams(role_spec, verbose, out);
        }
    } catch (const ScenarioProblem& e) {
        err << e.what() << '\n';
        return ScenarioFailure;
    } catch (const Error& e) {
        err << e.what() << '\n';
        if (e.kind() == ErrorKind::InvalidArgument || e.kind() == ErrorKind::BadBounds) return Usage;
        return RuntimeFailure;
    } catch (const std::exception& e) {
        err << e.what() << '\n';
        return RuntimeFailure;
    }
    return Ok;
}

}  // namespace resil::cli
