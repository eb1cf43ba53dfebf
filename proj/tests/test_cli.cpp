#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "jcfb/cli.hpp"

using namespace jcfb;
using namespace jcfb::cli;
constexpr double kPi = std::numbers::pi;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "jcfb");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("jcfb_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("presets are frozen") {
    auto check = [](const char* name, double gamma, double kappa1, double tau, double phi) {
        const Preset* p = find_preset(name);
        REQUIRE(p != nullptr);
        CHECK(p->kappa == 1.0);
        CHECK(p->gamma == gamma);
        CHECK(p->kappa1 == kappa1);
        CHECK(p->tau == tau);
        CHECK(p->phi == phi);
    };
    check("fig-shortdelay-a", 10.0, 0.0, 0.01, 2.0 * kPi);   // 10 kappa tau = gamma tau = 0.1
    check("fig-shortdelay-b", 10.0, 0.0, 0.01, kPi);
    check("fig-longdelay", 1.0, 0.0, 100.0 * kPi, 2.0 * kPi);
    check("fig-3tau", 2.0, 0.0, 5.0 * kPi, kPi);             // kappa tau = 0.5 gamma tau = 5 pi
    check("fig-trapped", 1.0, 0.5, kPi / 3.0, kPi);
    check("fig-rabi-cm", 1.0, 0.0, kPi, kPi);
    check("fig-comparison", 1.0, 0.0, kPi / 3.0, kPi);
    CHECK(find_preset("fig-comparison")->modes == 400);
    CHECK(find_preset("fig-spectrum-short")->needs_kappa_tau);
    CHECK(find_preset("fig-spectrum-long")->needs_kappa_tau);
    CHECK(find_preset("fig-spectrum-long")->kappa1 == 0.5);
    CHECK(find_preset("nope") == nullptr);
}

TEST_CASE("CSV round trip is bit exact") {
    const auto p = make_params(1.0 / 3.0, 0.7, 0.1, kPi / 7.0, 1.0);
    const auto tr = simulate_cm(p, 2.0, 100);
    std::stringstream ss;
    write_trajectory_csv(ss, p, ModelKind::ContinuousMode, tr);
    const auto table = read_csv(ss);
    REQUIRE(table.comments.size() == 1);
    CHECK(table.comments[0].find(" params: ") == 0);
    CHECK(table.header == std::vector<std::string>{"t", "re_ce", "im_ce", "abs2_ce", "re_cg", "im_cg", "abs2_cg",
                                                   "t_over_tau"});
    REQUIRE(table.rows.size() == tr.size());
    bool exact = true;
    for (std::size_t i = 0; i < tr.size(); ++i) {
        const auto& r = table.rows[i];
        exact = exact && r[0] == tr.times[i] && r[1] == tr.c_e[i].real() && r[2] == tr.c_e[i].imag() &&
                r[4] == tr.c_g[i].real() && r[5] == tr.c_g[i].imag() && r[6] == std::norm(tr.c_g[i]);
    }
    CHECK(exact);
    CHECK(format_number(0.1) == "0.10000000000000001");
}

TEST_CASE("simulate writes one CSV per model") {
    const auto dir = scratch("simulate");
    const auto r = invoke({"simulate", "--gamma", "1", "--kappa", "1", "--kappa1", "0", "--tau", "3.14159", "--phi",
                           "3.14159", "--tmax", "20", "--models", "cm,dm", "--out", dir.string()});
    CHECK(r.code == kSuccess);
    CHECK(std::filesystem::exists(dir / "run_cm.csv"));
    CHECK(std::filesystem::exists(dir / "run_dm.csv"));
    CHECK_FALSE(std::filesystem::exists(dir / "run_nofb.csv"));
    CHECK(r.out.find("regime: intermediate") != std::string::npos);
}

TEST_CASE("trapped preset reports the steady state") {
    const auto dir = scratch("trapped");
    const auto r = invoke({"simulate", "--preset", "fig-trapped", "--tmax", "5", "--out", dir.string()});
    CHECK(r.code == kSuccess);
    CHECK(r.out.find("steady_state: |c_e(inf)| = 0.7925190087") != std::string::npos);
    for (const char* m : {"nofb", "cm", "dm"}) {
        CHECK(std::filesystem::exists(dir / (std::string("fig-trapped_") + m + ".csv")));
    }
}

TEST_CASE("flags override the config file, which overrides nothing else") {
    const auto dir = scratch("config");
    {
        std::ofstream cfg(dir / "run.cfg");
        cfg << "gamma = 1\nkappa = 1\ntau = 1\nphi = 0\ntmax = 1\nunrelated = 3\n";
    }
    const auto r = invoke({"simulate", "--config", (dir / "run.cfg").string(), "--gamma", "2", "--models", "nofb",
                           "--out", dir.string()});
    REQUIRE(r.code == kSuccess);
    std::ifstream csv(dir / "run_nofb.csv");
    const auto table = read_csv(csv);
    CHECK(table.comments[0].find("gamma=2 kappa=1") != std::string::npos);
    CHECK(table.rows.size() == 1001);
}

TEST_CASE("usage errors") {
    auto r = invoke({"simulate", "--preset", "nope"});
    CHECK(r.code == kUsageError);
    CHECK(r.err.find("fig-trapped") != std::string::npos);
    CHECK(invoke({}).code == kUsageError);
    CHECK(invoke({"simulate", "--gamma", "1"}).code == kUsageError);
    CHECK(invoke({"simulate", "--gamma", "x"}).code == kUsageError);
    CHECK(invoke({"--help"}).code == kSuccess);
    CHECK(invoke({"spectrum", "--preset", "fig-spectrum-short"}).code == kUsageError);

    r = invoke({"spectrum", "--gamma", "1", "--kappa", "1", "--kappa1", "0", "--tau", "1", "--phi", "0"});
    CHECK(r.code == kUsageError);
    CHECK(r.out.empty());
}

TEST_CASE("spectrum output") {
    auto r = invoke({"spectrum", "--preset", "fig-spectrum-short", "--kappa-tau", "1", "--points", "5", "--all"});
    REQUIRE(r.code == kSuccess);
    std::istringstream is(r.out);
    const auto table = read_csv(is);
    CHECK(table.header == std::vector<std::string>{"omega", "S_nofb", "S_cm", "S_dm"});
    REQUIRE(table.rows.size() == 5);
    CHECK(table.rows[2][0] == 0.0);
    CHECK(table.rows[2][1] == doctest::Approx(1.0 / kPi));
}

TEST_CASE("poles output") {
    auto r = invoke({"poles", "--gamma", "2", "--kappa", "1", "--tau", "1", "--phi", "0", "--interval", "0"});
    REQUIRE(r.code == kSuccess);
    std::istringstream is(r.out);
    std::string line;
    int rows = 0;
    while (std::getline(is, line)) rows += !line.empty() && line[0] == '-';
    CHECK(rows == 2);

    r = invoke({"poles", "--preset", "fig-rabi-cm", "--check-rabi"});
    CHECK(r.code == kSuccess);
    CHECK(r.out.find("marginal") != std::string::npos);
    CHECK(r.out.find("satisfied (m=1)") != std::string::npos);
    CHECK(r.out.find("0.2414530070") != std::string::npos);
}

TEST_CASE("other subcommands") {
    auto r = invoke({"steady-state", "--preset", "fig-trapped"});
    CHECK(r.code == kSuccess);
    CHECK(r.out.find("steady_state_dm |c_e| = 0.7925190087") != std::string::npos);

    r = invoke({"normal-modes", "--gamma", "1", "--G", "2"});
    CHECK(r.code == kSuccess);
    CHECK(r.out.find("dark_overlap = 0.7999999999") != std::string::npos);

    r = invoke({"series", "--gamma", "1", "--kappa", "1", "--tau", "1", "--phi", "3", "--tmax", "2", "--samples", "3"});
    CHECK(r.code == kSuccess);
    r = invoke({"series", "--gamma", "1", "--kappa", "1", "--tau", "1", "--phi", "3", "--tmax", "40", "--kind", "dm",
                "--m-max", "3", "--p-max", "3"});
    CHECK(r.code == kNumericalFailure);
}

TEST_CASE("validate filters and reports") {
    auto r = invoke({"validate", "--only", "A5,kappa1"});
    CHECK(r.code == kSuccess);
    CHECK(r.out.find("2/2 checks passed") != std::string::npos);
    CHECK(invoke({"validate", "--only", "bogus"}).code == kUsageError);
    CHECK(invoke({"validate", "--fast", "--full"}).code == kUsageError);
}
