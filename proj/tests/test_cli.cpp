#include <doctest.h>

#include <unistd.h>

#include <fstream>
#include <sstream>

#include "resil/cli.hpp"
#include "support.hpp"

using namespace resil;
namespace fs = std::filesystem;

namespace {

const std::vector<std::string> all_fixtures = {"mac_basic", "safety_net_basic", "fso_3layer",
                                               "blackswan_diversity", "canary_perception"};

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::InvalidArgument;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("resil-test-" + tag + "-" + std::to_string(::getpid()));
        fs::remove_all(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

struct Invocation {
    int code = 0;
    std::string out;
    std::string err;
};

Invocation invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "resil-sim");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

const char* minimal = R"(schema_version: 1
name: tiny
horizon: 100
agents:
  - {id: a, persona: HumanBeing, location: [0, 0], advertises: [nurse]}
organization: {variant: mac}
)";

}  // namespace

TEST_CASE("fixtures parse") {
    for (const auto& name : all_fixtures) {
        CAPTURE(name);
        CHECK_NOTHROW(validate(testing::load_fixture(name)));
    }
    CHECK(testing::load_fixture("safety_net_basic").organization.variant == OrgVariant::SafetyNet);
    CHECK(testing::load_fixture("fso_3layer").organization.variant == OrgVariant::Fso);

    const Scenario tiny = parse_scenario_text(minimal);
    CHECK(tiny.name == "tiny");
    CHECK(tiny.agents.size() == 1);
    CHECK(tiny.organization.hop_delay == 1);
    CHECK(tiny.cohesion_interval == 10);
}

TEST_CASE("schema errors name the offending key") {
    std::string text = minimal;
    text.replace(text.find("horizon: 100\n"), 13, "");
    try {
        (void)parse_scenario_text(text);
        FAIL("expected SchemaError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SchemaError);
        CHECK(std::string(e.what()).find("horizon") != std::string::npos);
    }

    CHECK(kind_of([] { (void)parse_scenario_text(std::string(minimal) + "colour: red\n"); }) ==
          ErrorKind::SchemaError);
    CHECK(kind_of([] {
              std::string t = minimal;
              t.replace(t.find("HumanBeing"), 10, "Robot");
              (void)parse_scenario_text(t);
          }) == ErrorKind::SchemaError);
}

TEST_CASE("references must resolve") {
    const std::string with_protocol = std::string(minimal) +
                                      "protocols:\n"
                                      "  - id: p\n"
                                      "    trigger: fall\n"
                                      "    requirements: [{role: astronaut, min: 1}]\n"
                                      "    service_duration: 5\n"
                                      "    deadline: 10\n";
    CHECK(kind_of([&] { (void)parse_scenario_text(with_protocol); }) == ErrorKind::DanglingReference);

    const std::string bad_source = std::string(minimal) +
                                   "protocols:\n"
                                   "  - {id: p, trigger: fall, requirements: [{role: nurse, min: 1}], "
                                   "service_duration: 5, deadline: 10}\n"
                                   "workload:\n"
                                   "  - {kind: fall, arrival: {fixed: 5}, sources: [ghost]}\n";
    CHECK(kind_of([&] { (void)parse_scenario_text(bad_source); }) == ErrorKind::DanglingReference);
}

TEST_CASE("syntax and io errors") {
    CHECK(kind_of([] { (void)parse_scenario_text("agents: [unclosed\n"); }) == ErrorKind::SyntaxError);
    CHECK(kind_of([] { (void)parse_scenario("/nonexistent/never.yaml"); }) == ErrorKind::IoError);
}

TEST_CASE("serialization round-trips every fixture") {
    for (const auto& name : all_fixtures) {
        CAPTURE(name);
        const Scenario s = testing::load_fixture(name);
        const std::string text = serialize_scenario(s);
        const Scenario back = parse_scenario_text(text);
        CHECK(back == s);
        CHECK(serialize_scenario(back) == text);
    }
}

TEST_CASE("rescaled scenarios round-trip too") {
    const Scenario s = rescale_time(testing::load_fixture("fso_3layer"), 7);
    CHECK(parse_scenario_text(serialize_scenario(s)) == s);
}

TEST_CASE("csv reals use six digits, ties to even") {
    CHECK(cli::format_real(0.5) == "0.500000");
    CHECK(cli::format_real(1.0 / 3.0) == "0.333333");
    CHECK(cli::format_real(0.0078125) == "0.007812");
    CHECK(cli::format_real(0.0234375) == "0.023438");
    CHECK(cli::format_real(2.5714285714) == "2.571429");
}

TEST_CASE("simulate writes deterministic artifacts") {
    TempDir a("sim-a");
    TempDir b("sim-b");
    const auto path = testing::fixture("mac_basic");
    REQUIRE(invoke({"simulate", path, "--seed", "4", "--out", a.path.string()}).code == 0);
    REQUIRE(invoke({"simulate", path, "--seed", "4", "--out", b.path.string()}).code == 0);
    for (const char* f : {"results.csv", "trace.log", "report.txt"}) {
        CAPTURE(f);
        CHECK(slurp(a.path / f) == slurp(b.path / f));
    }
    const std::string csv = slurp(a.path / "results.csv");
    CHECK(csv.starts_with(cli::csv_header()));
    CHECK(line_count(csv) == 2);
    CHECK(csv.find("\nmac_basic,4,") != std::string::npos);
}

TEST_CASE("simulate defaults to seed zero") {
    TempDir d("sim-default");
    REQUIRE(invoke({"simulate", testing::fixture("mac_basic"), "--out", d.path.string()}).code == 0);
    CHECK(slurp(d.path / "results.csv").find("\nmac_basic,0,") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(invoke({"simulate", "/nonexistent/x.yaml"}).code == cli::ScenarioFailure);
    CHECK(invoke({"simulate"}).code == cli::Usage);
    CHECK(invoke({"bogus"}).code == cli::Usage);
    CHECK(invoke({"compare", testing::fixture("mac_basic")}).code == cli::Usage);
    CHECK(invoke({"enumerate-teams", "0:1-1"}).code == cli::Usage);
    CHECK(invoke({"enumerate-teams", "nonsense"}).code == cli::Usage);

    TempDir d("blocked");
    fs::create_directories(d.path);
    std::ofstream(d.path / "file") << "x";
    const auto r = invoke({"simulate", testing::fixture("mac_basic"), "--out", (d.path / "file" / "sub").string()});
    CHECK(r.code == cli::RuntimeFailure);
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("unwritable output is an IoError") {
    TempDir d("io");
    fs::create_directories(d.path);
    std::ofstream(d.path / "file") << "x";
    CHECK(kind_of([&] { cli::cmd_simulate(testing::fixture("mac_basic"), 0, d.path / "file" / "sub"); }) ==
          ErrorKind::IoError);
}

TEST_CASE("compare runs every pair in order") {
    TempDir d("cmp");
    const auto r = invoke({"compare", testing::fixture("mac_basic"), testing::fixture("fso_3layer"),
                           testing::fixture("safety_net_basic"), "--seeds", "0,1,2", "--out",
                           d.path.string()});
    REQUIRE(r.code == 0);
    const std::string csv = slurp(d.path / "results.csv");
    CHECK(line_count(csv) == 10);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    std::vector<std::string> keys;
    while (std::getline(lines, line)) keys.push_back(line.substr(0, line.find(',', line.find(',') + 1)));
    CHECK(keys == std::vector<std::string>{"mac_basic,0", "mac_basic,1", "mac_basic,2", "fso_3layer,0",
                                           "fso_3layer,1", "fso_3layer,2", "safety_net_basic,0",
                                           "safety_net_basic,1", "safety_net_basic,2"});

    const std::string cmp = slurp(d.path / "comparison.txt");
    CHECK(cmp.find("warning") == std::string::npos);
    CHECK(cmp.find("rank,scenario,mean_service_ratio,mean_latency") != std::string::npos);
}

TEST_CASE("compare warns about different horizons") {
    TempDir d("cmp-h");
    cli::cmd_compare({testing::fixture("mac_basic"), testing::fixture("canary_perception")}, {0}, d.path);
    CHECK(slurp(d.path / "comparison.txt").find("warning") != std::string::npos);
}

TEST_CASE("enumerate-teams") {
    std::ostringstream os;
    CHECK(cli::cmd_enumerate_teams("1:0-1,4:0-4,1:0-1", false, os) == 64);
    CHECK(os.str() == "64\n");
    std::ostringstream q;
    CHECK(cli::cmd_enumerate_teams("1:1-1,4:1-4,1:1-1", true, q) == 15);
    CHECK(line_count(q.str()) == 16);

    std::ostringstream small;
    cli::cmd_enumerate_teams("2:0-1", true, small);
    CHECK(small.str() == "3\n-\nr0m0\nr0m1\n");

    CHECK(kind_of([] {
              std::ostringstream o;
              cli::cmd_enumerate_teams("0:1-1", false, o);
          }) == ErrorKind::BadBounds);
    const auto b = cli::parse_role_spec("3:1-2");
    REQUIRE(b.size() == 1);
    CHECK(b[0].size == 3);
    CHECK(b[0].min_count == 1);
    CHECK(b[0].max_count == 2);
    CHECK(kind_of([] { (void)cli::parse_role_spec("3:1"); }) == ErrorKind::InvalidArgument);
}
