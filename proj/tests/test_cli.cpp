#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "opdyn/csv.hpp"
#include "opdyn/scenario_io.hpp"

namespace fs = std::filesystem;
using namespace opdyn;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

fs::path scratch() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("opdyn_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

Result cli(const std::string& args) {
    const auto out = scratch() / "stdout.txt";
    const auto err = scratch() / "stderr.txt";
    const std::string cmd = std::string(OPDYN_CLI_PATH) + " " + args + " >" + out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    return {WEXITSTATUS(status), read_text_file(out), read_text_file(err)};
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("help lists every scenario key") {
    for (const char* sub : {"run", "sweep1", "sweep2", "net-stats"}) {
        const auto r = cli(std::string(sub) + " --help");
        CHECK(r.code == 0);
        for (auto key : scenario_keys()) CHECK(r.out.find("--" + std::string(key)) != std::string::npos);
    }
}

TEST_CASE("run from a scenario file with flag overrides") {
    const auto cfg = scratch() / "row.scn";
    write_text_file(cfg, "agents = 100\ntv_pct = 70\nwa_pct = 30\nmax_ticks = 1\n");
    const auto r = cli("run --config " + cfg.string() + " --seeds 0,1");
    CHECK(r.code == 0);
    CHECK(lines(r.out) == 1 + 2 * 2);

    const auto out = scratch() / "ts.csv";
    const auto r2 = cli("run -c " + cfg.string() + " --seeds 0,1 --tolerance 0.2 -o " + out.string());
    CHECK(r2.code == 0);
    const auto ts = read_text_file(out);
    CHECK(ts.find("tol0.2_tv70_wa30_wz0,1,1,") != std::string::npos);
    CHECK(cli("run -c " + cfg.string() + " --seeds 0,1 --tolerance 0.2").out == ts);

    const auto both = cli("run -c " + cfg.string() + " --seeds 0 --format both -o " + out.string());
    CHECK(both.code == 0);
    const auto summary = read_text_file(out.string() + ".summary.csv");
    CHECK(summary.rfind("tolerance,tv_pct,wa_pct,white_pct,", 0) == 0);
    CHECK(summary.find("0.5,70,30,0,") != std::string::npos);
}

TEST_CASE("validation failures exit with 1") {
    CHECK(cli("run --tv_pct 70 --wa_pct 30").code == 1);  // missing agents
    const auto r = cli("run --agents 100 --tv_pct 60 --wa_pct 30");
    CHECK(r.code == 1);
    CHECK(r.err.find("tv_pct + wa_pct + white_pct") != std::string::npos);
    CHECK(cli("run --agents 100 --white_pct 100 --tolerance 3").code == 1);
    CHECK(cli("run --agents 100 --white_pct 100 --no-such-flag 1").code == 1);
    CHECK(cli("frobnicate").code == 1);
}

TEST_CASE("io failures exit with 2") {
    CHECK(cli("run --config /nonexistent/file.scn").code == 2);
    const auto r = cli("run --agents 10 --white_pct 100 --max_ticks 1 -o /nonexistent/dir/out.csv");
    CHECK(r.code == 2);
    CHECK(r.err.find("/nonexistent/dir/out.csv") != std::string::npos);
}

TEST_CASE("sweeps write summaries with threshold blocks") {
    const auto r1 = cli("sweep1 --max_ticks 5 --seeds 0..1");
    CHECK(r1.code == 0);
    CHECK(lines(r1.out) == 1 + 33 + 1 + 1 + 3);
    CHECK(r1.out.find("tolerance,inversion_threshold_wa_pct\n0.2,") != std::string::npos);

    const auto r2 = cli("sweep2 --max_ticks 5 --seeds 0 --tolerances 0.5");
    CHECK(r2.code == 0);
    CHECK(lines(r2.out) == 1 + 8 + 1 + 1 + 1);
    CHECK(r2.out.find("0.5,70,0,30,") != std::string::npos);
}

TEST_CASE("net-stats") {
    const auto edges = scratch() / "edges.txt";
    const auto r = cli("net-stats --seed 3 --edges " + edges.string());
    CHECK(r.code == 0);
    CHECK(r.out.rfind("nodes,100\nedges,197\n", 0) == 0);
    CHECK(r.out.find("\ndegree,count\n") != std::string::npos);
    const auto list = read_text_file(edges);
    CHECK(lines(list) == 197);
    CHECK(cli("net-stats --seed 3 --edges " + edges.string()).out == r.out);
    CHECK(cli("net-stats --net_core 2 --net_attach 3").code == 1);
}
