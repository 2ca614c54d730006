// CLI contract checks: exit codes, strict schema handling, output shape.
// Usage: test_cli <path-to-tempest> <scenario-dir>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int g_failures = 0;
std::string g_cli;
fs::path g_work;

void expect(bool ok, const std::string& what) {
    std::printf("[%s] %s\n", ok ? "ok" : "FAIL", what.c_str());
    if (!ok) ++g_failures;
}

int run(const std::string& args) {
    const std::string cmd = g_cli + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return rc == -1 ? -1 : WEXITSTATUS(rc);
}

fs::path write_scenario(const char* name, const std::string& body) {
    const fs::path p = g_work / name;
    std::ofstream(p) << body;
    return p;
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <tempest-binary> [scenario-dir]\n");
        return 2;
    }
    g_cli = argv[1];
    const fs::path scenarios = argc >= 3 ? fs::path(argv[2]) : fs::path("scenarios");
    g_work = fs::temp_directory_path() / "tempest_cli_test";
    fs::remove_all(g_work);
    fs::create_directories(g_work);

    // happy path: transform is deterministic, needs no seed
    expect(run("transform --scenario " + (scenarios / "transform_dts_exponential.json").string() +
               " --out " + (g_work / "t").string()) == 0,
           "transform runs without a seed");
    expect(fs::exists(g_work / "t" / "transform.csv"), "transform.csv exists");

    // stochastic command without any seed -> configuration error
    const auto no_seed = write_scenario("no_seed.json", R"({
      "version": 1, "kind": "sample", "count": 3,
      "distribution": {"family": "ds", "alpha": 0.5, "eta": 0.5}
    })");
    expect(run("sample --scenario " + no_seed.string() + " --out " +
               (g_work / "s0").string()) == 2,
           "sample without seed exits 2");
    expect(run("sample --scenario " + no_seed.string() + " --seed 9 --out " +
               (g_work / "s1").string()) == 0,
           "sample with --seed flag exits 0");

    // eta = 0 discrete draws are all zero
    {
        std::ifstream in(g_work / "s1" / "samples.csv");
        (void)in;
        const auto zeros = write_scenario("zeros.json", R"({
          "version": 1, "kind": "sample", "count": 5, "seed": 4,
          "distribution": {"family": "ds", "alpha": 0.5, "eta": 0.0}
        })");
        expect(run("sample --scenario " + zeros.string() + " --out " +
                   (g_work / "z").string()) == 0,
               "eta=0 sample runs");
        std::ifstream zf(g_work / "z" / "samples.csv");
        std::string line;
        int zero_count = 0, data_lines = 0;
        while (std::getline(zf, line)) {
            if (line.empty() || line[0] == '#') continue;
            ++data_lines;
            zero_count += (line == "0");
        }
        expect(data_lines == 5 && zero_count == 5, "eta=0 sample is five zeros");
    }

    // tempered_base sampling family
    const auto tb = write_scenario("tempered_base.json", R"({
      "version": 1, "kind": "sample", "count": 100, "seed": 11,
      "distribution": {"family": "tempered_base",
                       "base": {"kind": "pareto", "alpha": 0.5, "x_m": 1.0},
                       "q": {"kind": "truncation", "a": 1.0}, "ell": 50.0}
    })");
    expect(run("sample --scenario " + tb.string() + " --out " + (g_work / "tb").string()) == 0,
           "tempered_base sample runs");

    // malformed regime -> 2
    const auto bad_regime = write_scenario("bad_regime.json", R"({
      "version": 1, "kind": "limit", "seed": 1,
      "experiment": {"type": "array",
        "base": {"kind": "pareto", "alpha": 0.5, "x_m": 1.0},
        "q": {"kind": "identity"},
        "ell": {"scale": 1.0, "power": 0.0},
        "n": 10, "m": 10, "regime": "sideways"}
    })");
    expect(run("limit --scenario " + bad_regime.string() + " --seed 1 --out " +
               (g_work / "br").string()) == 2,
           "malformed regime exits 2");

    // unknown field -> 2
    const auto unknown = write_scenario("unknown.json", R"({
      "version": 1, "kind": "pmf", "n_max": 5, "frobnicate": true,
      "distribution": {"family": "ds", "alpha": 0.5, "eta": 0.5}
    })");
    expect(run("pmf --scenario " + unknown.string() + " --out " +
               (g_work / "u").string()) == 2,
           "unknown scenario field exits 2");

    // scenario kind / subcommand mismatch -> 2
    expect(run("limit --scenario " + (scenarios / "pmf_ds.json").string() + " --seed 1 --out " +
               (g_work / "mm").string()) == 2,
           "kind mismatch exits 2");

    // missing scenario file -> 2
    expect(run("pmf --scenario /nonexistent.json --out " + (g_work / "nx").string()) == 2,
           "missing scenario file exits 2");

    if (g_failures) {
        std::printf("%d CLI check(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all CLI checks passed\n");
    return 0;
}
