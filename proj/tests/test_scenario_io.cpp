#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>

#include "opdyn/csv.hpp"
#include "opdyn/error.hpp"
#include "opdyn/scenario_io.hpp"

using namespace opdyn;

namespace {

ConfigError parse_error(std::string_view text) {
    try {
        parse_scenario_file(text);
    } catch (const ConfigError& e) {
        return e;
    }
    FAIL("expected ConfigError");
    return ConfigError("unreachable");
}

std::size_t count_lines(const std::string& s) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("minimal file gives a 70/30 row with defaults") {
    const auto c = parse_scenario_file("# scenario 1 row\nagents = 100\ntv_pct = 70\nwa_pct = 30\n");
    CHECK(c.population.n == 100);
    CHECK(c.population.tv_count == 70);
    CHECK(c.population.wa_count == 30);
    CHECK(c.population.white_count == 0);
    CHECK(c.population.tolerance == 0.5);
    CHECK(c.population.convergence == 0.5);
    CHECK(c.population.expert_mode == ExpertMode::Converge);
    CHECK(c.media == kDefaultMedia);
    CHECK(c.expert == kDefaultExpert);
    CHECK(c.network.seed_core_size == 3);
    CHECK(c.network.attach_count == 2);
    CHECK(c.controls == RunControls{100, 1e-4, 10});
    CHECK(c.seeds == std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
    CHECK(c.edge_activation == EdgeActivation::Once);
    CHECK(c.update_reads == UpdateReads::Live);
    CHECK_FALSE(c.fixed_network);
}

TEST_CASE("every key is honoured") {
    const auto c = parse_scenario_file(
        "agents = 200\n"
        "tv_pct = 50   # trailing comment\n"
        "wa_pct = 20\n"
        "white_pct = 30\n"
        "tolerance = 0.8\n"
        "convergence_m = 0.25\n"
        "expert_mode = adopt\n"
        "media_welfare = 0.1\nmedia_security = 0.9\n"
        "expert_welfare = 0.7\nexpert_security = 0.2\n"
        "net_core = 4\nnet_attach = 3\n"
        "max_ticks = 50\neps = 0\npatience = 3\n"
        "seeds = 3..5\n"
        "edge_activation = per_direction\nupdate_reads = snapshot\nfixed_network = true\n");
    CHECK(c.population.tv_count == 100);
    CHECK(c.population.wa_count == 40);
    CHECK(c.population.white_count == 60);
    CHECK(c.population.expert_mode == ExpertMode::Adopt);
    CHECK(c.population.convergence == 0.25);
    CHECK(c.media.value == OpinionPair{0.1, 0.9});
    CHECK(c.expert.value == OpinionPair{0.7, 0.2});
    CHECK(c.network.seed_core_size == 4);
    CHECK(c.controls == RunControls{50, 0.0, 3});
    CHECK(c.seeds == std::vector<std::uint64_t>{3, 4, 5});
    CHECK(c.edge_activation == EdgeActivation::PerDirection);
    CHECK(c.update_reads == UpdateReads::Snapshot);
    CHECK(c.fixed_network);
    CHECK(parse_scenario_file("agents=10\nwhite_pct=100\nseeds = 4, 1,9\n").seeds ==
          std::vector<std::uint64_t>{4, 1, 9});
}

TEST_CASE("later keys override earlier ones") {
    const auto c = parse_scenario_file("agents = 100\nwhite_pct = 100\ntolerance = 0.2\ntolerance = 0.8\n");
    CHECK(c.population.tolerance == 0.8);
}

TEST_CASE("validation errors carry key and line") {
    auto e = parse_error("tv_pct = 100\n");
    CHECK(e.key() == "agents");

    e = parse_error("agents = 100\ntv_pct = 60\nwa_pct = 30\n");
    CHECK(e.key() == "tv_pct+wa_pct+white_pct");
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("90") != std::string::npos);

    e = parse_error("agents = 100\nwhite_pct = 100\n\ntolerance = 1.5\n");
    CHECK(e.key() == "tolerance");
    CHECK(e.line() == 4);
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);

    e = parse_error("agents = 100\nwhite_pct = 100\nconvergence_m = 0.7\n");
    CHECK(e.key() == "convergence_m");
    CHECK(e.line() == 3);

    CHECK(parse_error("agents = 100\nwhite_pct = 100\nbogus = 1\n").line() == 3);
    CHECK(parse_error("agents = 100\nwhite_pct = 100\nnot a pair\n").line() == 3);
    CHECK(parse_error("agents = 1e2\nwhite_pct = 100\n").key() == "agents");
    CHECK(parse_error("agents = 100\nwhite_pct = 100\nexpert_mode = trust\n").key() == "expert_mode");
    CHECK(parse_error("agents = 100\nwhite_pct = 100\nseeds = 1,,2\n").key() == "seeds");
    CHECK(parse_error("agents = 100\nwhite_pct = 100\nnet_attach = 4\n").key() == "net_attach");
    CHECK(parse_error("agents = 30\ntv_pct = 33\nwa_pct = 67\n").key() == "tv_pct");
    CHECK(parse_error("agents = 100\nwhite_pct = 100\nmedia_security = 8\n").key() == "media_security");
    CHECK(parse_error("agents = 100\nwhite_pct = 100\nfixed_network = yes\n").key() == "fixed_network");
}

TEST_CASE("render/parse round trip on random valid configs") {
    Rng rng(31);
    for (int trial = 0; trial < 500; ++trial) {
        ScenarioConfig c;
        auto& p = c.population;
        p.n = 100 * (1 + rng.below(3));
        const std::size_t tv = rng.below(101);
        const std::size_t wa = rng.below(101 - tv);
        p.tv_count = tv * p.n / 100;
        p.wa_count = wa * p.n / 100;
        p.white_count = p.n - p.tv_count - p.wa_count;
        p.tolerance = rng.uniform01();
        p.convergence = 0.5 * (1.0 - rng.uniform01());
        p.expert_mode = rng.below(2) ? ExpertMode::Adopt : ExpertMode::Converge;
        c.media.value = {rng.uniform01(), rng.uniform01()};
        c.expert.value = {rng.uniform01(), rng.uniform01()};
        c.network.n = p.n;
        c.network.seed_core_size = 2 + rng.below(5);
        c.network.attach_count = 1 + rng.below(c.network.seed_core_size);
        c.controls = {1 + rng.below(500), rng.uniform01() * 1e-3, 1 + rng.below(20)};
        c.seeds.clear();
        for (std::size_t k = 0, len = 1 + rng.below(12); k < len; ++k) c.seeds.push_back(rng.next_u64());
        c.edge_activation = rng.below(2) ? EdgeActivation::PerDirection : EdgeActivation::Once;
        c.update_reads = rng.below(2) ? UpdateReads::Snapshot : UpdateReads::Live;
        c.fixed_network = rng.below(2) == 1;
        REQUIRE(parse_scenario_file(render_scenario(c)) == c);
    }
}

TEST_CASE("real formatting is shortest round-trip") {
    CHECK(format_real(0.2) == "0.2");
    CHECK(format_real(0.1 + 0.2) == "0.30000000000000004");
    CHECK(format_real(1.0) == "1");
    CHECK(format_real(0.0) == "0");
    CHECK(format_real(1e-4) == "1e-04");
    Rng rng(4);
    for (int i = 0; i < 10000; ++i) {
        const double x = rng.uniform01();
        CHECK(std::stod(format_real(x)) == x);
    }
}

TEST_CASE("time series csv") {
    ScenarioConfig c;
    c.population.tv_count = 70;
    c.population.wa_count = 30;
    c.population.white_count = 0;
    c.controls.max_ticks = 1;
    c.seeds = {0};
    const std::vector<ScenarioConfig> configs{c};
    const auto results = run_batch(configs);
    const auto csv = write_timeseries_csv(results);
    CHECK(count_lines(csv) == 3);
    CHECK(csv.rfind("scenario,seed,tick,mean_welfare,mean_security,std_welfare,std_security\n", 0) == 0);
    CHECK(csv.find("\ntol0.5_tv70_wa30_wz0,0,0,") != std::string::npos);
    CHECK(csv.find("\ntol0.5_tv70_wa30_wz0,0,1,") != std::string::npos);
    CHECK(csv.find('\r') == std::string::npos);
    CHECK(csv == write_timeseries_csv(run_batch(configs)));
    CHECK_THROWS_AS(write_timeseries_csv({}), UsageError);
}

TEST_CASE("summary csv") {
    const std::vector<double> tolerances = {0.2, 0.5, 0.8};
    const auto configs = sweep_scenario1(tolerances, ScenarioConfig{});
    const auto results = run_batch(configs);
    const auto aggregates = aggregate_batch(results, configs);
    const auto thresholds = thresholds_by_tolerance(aggregates, false);
    const auto csv = write_summary_csv(aggregates, thresholds);

    const auto block = csv.find("\n\ntolerance,inversion_threshold_wa_pct\n");
    REQUIRE(block != std::string::npos);
    const std::string rows = csv.substr(0, block + 1);
    const std::string tail = csv.substr(block + 2);
    CHECK(count_lines(rows) == 1 + 33);
    CHECK(count_lines(tail) == 1 + 3);

    // The `inverted` column agrees with the final means row by row.
    std::size_t pos = rows.find('\n') + 1;
    for (const auto& a : aggregates) {
        const auto end = rows.find('\n', pos);
        const std::string line = rows.substr(pos, end - pos);
        const std::string expect = format_real(a.final.mean_welfare) + ',' +
                                   format_real(a.final.mean_security) + ',' +
                                   (a.final.mean_welfare > a.final.mean_security ? "true" : "false");
        CHECK(line.ends_with(expect));
        pos = end + 1;
    }
    for (const auto& t : thresholds) {
        const std::vector<AggregateResult> group = [&] {
            std::vector<AggregateResult> g;
            for (const auto& a : aggregates)
                if (a.tolerance == t.tolerance) g.push_back(a);
            return g;
        }();
        const auto th = find_inversion_threshold(group);
        const std::string expect =
            format_real(t.tolerance) + ',' + (th ? std::to_string(*th) : std::string("none")) + '\n';
        CHECK(tail.find(expect) != std::string::npos);
    }
}

TEST_CASE("file io errors name the path") {
    const auto bad = std::filesystem::path("/nonexistent-dir/out.csv");
    try {
        write_text_file(bad, "x");
        FAIL("expected IoError");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find(bad.string()) != std::string::npos);
    }
    CHECK_THROWS_AS(read_text_file(bad), IoError);
}
