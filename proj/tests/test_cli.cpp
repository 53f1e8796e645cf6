#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "heda/ledger.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code = -1;
    std::string output;
};

Outcome invoke(const std::string& args)
{
    const std::string cmd = std::string(HEDA_EXE) + " " + args + " 2>&1";
    Outcome o;
    FILE* p = ::popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    while (std::fgets(buf, sizeof buf, p))
        o.output += buf;
    const int status = ::pclose(p);
    o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return o;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const fs::path& p, const std::string& text)
{
    std::ofstream(p, std::ios::binary) << text;
}

struct Work {
    fs::path dir = fs::temp_directory_path() / ("heda-cli-" + std::to_string(::getpid()));
    Work()
    {
        fs::remove_all(dir);
        fs::create_directories(dir);
        spit(dir / "short.json", R"({"horizon": 3})");
    }
    ~Work() { fs::remove_all(dir); }
    std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("run twice, byte-identical")
{
    Work w;
    REQUIRE(invoke("--config " + (w / "short.json") + " --seed 4 --out " + (w / "a")).code == 0);
    REQUIRE(invoke("--config " + (w / "short.json") + " --seed 4 --out " + (w / "b")).code == 0);
    for (const char* f : {"residual_energy.csv", "summary.csv", "events.log", "constraints.csv", "timeseries.csv",
                          "deactivations.csv", "config.json"})
        CHECK(slurp(fs::path(w / "a") / f) == slurp(fs::path(w / "b") / f));

    std::istringstream rows(slurp(fs::path(w / "a") / "residual_energy.csv"));
    std::size_t n = 0;
    for (std::string l; std::getline(rows, l);)
        ++n;
    CHECK(n == 1 + 4 * 100);
}

TEST_CASE("verify accepts untouched artifacts and names a tampered node")
{
    Work w;
    REQUIRE(invoke("--config " + (w / "short.json") + " --out " + (w / "run")).code == 0);
    const fs::path run = w / "run";
    CHECK(invoke("--verify " + (run / "events.log").string() + " --config " + (run / "config.json").string()).code == 0);

    std::istringstream in(slurp(run / "events.log"));
    std::vector<heda::LedgerEntry> log = heda::read_ledger(in);
    REQUIRE(log.size() > 40);
    log[40].joules += 1e-6;
    std::ostringstream out;
    heda::write_ledger(out, log);
    spit(run / "events.log", out.str());
    const Outcome bad =
        invoke("--verify " + (run / "events.log").string() + " --config " + (run / "config.json").string());
    CHECK(bad.code == 1);
    CHECK(bad.output.find("worst node " + std::to_string(log[40].node) + ",") != std::string::npos);
}

TEST_CASE("an empty log against a zero-activity config verifies")
{
    Work w;
    spit(w / "events.log", std::string(heda::kLedgerHeader) + "\n");
    spit(w / "quiet.json", R"({"g_sense": 0, "b_mon": 0, "b_sec": 0, "b_local": 0, "b_topo": 0, "b_global": 0,
                               "unit_powers": {"processor": {"idle": 0, "sleep": 0}, "sensor": {"idle": 0, "sleep": 0},
                                               "memory": {"idle": 0, "sleep": 0},
                                               "transceiver_dsp": {"idle": 0, "sleep": 0}}})");
    CHECK(invoke("--verify " + (w / "events.log") + " --config " + (w / "quiet.json")).code == 0);
}

TEST_CASE("usage and config errors exit 2")
{
    Work w;
    spit(w / "bad.json", R"({"r_tx": -5})");
    const Outcome bad = invoke("--config " + (w / "bad.json") + " --out " + (w / "x"));
    CHECK(bad.code == 2);
    CHECK(bad.output.find("r_tx must be > 0") != std::string::npos);
    CHECK(invoke("--no-such-flag").code == 2);
    CHECK(invoke("--verify " + (w / "events.log")).code == 2);
    CHECK(invoke("--sweep a.json --verify b.log").code == 2);
    CHECK(invoke("--config /nonexistent.json").code == 2);
    CHECK(invoke("--help").code == 0);
}

TEST_CASE("sweep writes its tables")
{
    Work w;
    spit(w / "sweep.json",
         R"({"base": {"horizon": 1}, "r_sense": [30, 40], "r_tx": [130], "routing": ["selective"], "seeds": [1, 2]})");
    const Outcome o = invoke("--sweep " + (w / "sweep.json") + " --out " + (w / "sw") + " --jobs 2");
    CHECK(o.code == 0);
    CHECK(o.output.find("4 cells, 0 failed, 0 failed verification") != std::string::npos);
    CHECK(fs::exists(fs::path(w / "sw") / "sweep.csv"));
    CHECK(fs::exists(fs::path(w / "sw") / "sweep_aggregate.csv"));
    CHECK(fs::exists(fs::path(w / "sw") / "neighbors.csv"));
}
