#include <catch_amalgamated.hpp>

#include "mcport/pipeline.hpp"
#include "test_support.hpp"

#include <cstdlib>
#include <iostream>
#include <fstream>
#include <sstream>

using namespace mcport;
using namespace mcport::testing;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = MCPORT_FIXTURE_DIR;

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunConfig config_for(const fs::path& manifest, const fs::path& out, std::size_t n = 500)
{
    RunConfig c;
    c.manifest = manifest;
    c.out_dir = out;
    c.split = default_split();
    c.search.num_candidates = n;
    return c;
}

fs::path write_manifest(const fs::path& dir, const std::string& body)
{
    auto p = dir / "manifest.json";
    std::ofstream(p) << body;
    return p;
}

std::string asset(const std::string& ticker)
{
    return "{\"ticker\":\"" + ticker + "\",\"path\":\"" + (kFixtures / "auto_like" / (ticker + ".csv")).string() + "\"}";
}

int count_lines(const std::string& s)
{
    return static_cast<int>(std::count(s.begin(), s.end(), '\n'));
}

} // namespace

TEST_CASE("manifest parsing", "[pipeline]")
{
    auto single = parse_manifest(R"({"name":"x","assets":[{"ticker":"A","path":"a.csv","index_weight":3.5}]})", "/data");
    REQUIRE(single.size() == 1);
    CHECK(single[0].assets[0].path == fs::path("/data/a.csv"));
    CHECK(single[0].assets[0].index_weight == 3.5);

    auto batch = parse_manifest(R"({"universes":[{"name":"a","assets":[]},{"name":"b","assets":[]}]})", "/");
    CHECK(batch.size() == 2);

    CHECK_THROWS_AS(parse_manifest("{not json", "/"), DataError);
    CHECK_THROWS_AS(parse_manifest(R"({"name":"a","assets":[{"ticker":"A","path":"x"},{"ticker":"A","path":"y"}]})", "/"), DataError);
    CHECK_THROWS_AS(parse_manifest(R"({"universes":[{"name":"a","assets":[]},{"name":"a","assets":[]}]})", "/"), DataError);
    CHECK_THROWS_AS(parse_manifest(R"({"name":"../up","assets":[]})", "/"), DataError);
}

TEST_CASE("load_universe drops the late listing and splits", "[pipeline]")
{
    auto specs = load_manifest(kFixtures / "auto_like" / "manifest.json");
    auto data = load_universe(specs.at(0), default_split());
    CHECK(data.train.num_assets() == 9);
    CHECK(data.excluded == std::vector<std::string>{"TII"});
    CHECK(format_date(data.train.dates().front()) == "2017-01-02");
    CHECK(format_date(data.test.dates().back()) == "2021-12-31");
}

TEST_CASE("a one-asset universe is rejected", "[pipeline]")
{
    auto dir = fresh_temp_dir("one_asset");
    auto m = write_manifest(dir, "{\"name\":\"solo\",\"assets\":[" + asset("MSZ") + "]}");
    auto specs = load_manifest(m);
    CHECK_THROWS_WITH(load_universe(specs[0], default_split()), Catch::Matchers::ContainsSubstring("universe too small"));
    CHECK(execute(Command::optimize, config_for(m, dir / "out")) == 1);
    CHECK_FALSE(fs::exists(dir / "out" / "solo"));
}

TEST_CASE("run writes the full artifact tree", "[pipeline]")
{
    auto dir = fresh_temp_dir("run_tree");
    auto cfg = config_for(kFixtures / "auto_like" / "manifest.json", dir / "out");
    REQUIRE(execute(Command::run, cfg) == 0);
    auto u = dir / "out" / "auto_like";
    for (const char* f : {"selection.json", "weights.csv", "ratios.csv", "candidates.csv", "cumulative_returns.csv"})
        CHECK(fs::exists(u / f));
    for (auto o : kAllObjectives) {
        auto name = std::string(to_string(o));
        CHECK(fs::exists(u / ("frontier_" + name + ".csv")));
        CHECK(fs::exists(u / ("frontier_" + name + ".svg")));
        CHECK(fs::exists(u / ("cumret_" + name + "_train.csv")));
        CHECK(fs::exists(u / ("cumret_" + name + "_test.csv")));
    }
    auto summary = slurp(dir / "out" / "summary.csv");
    CHECK(count_lines(summary) == 2);
    CHECK(summary.find("NA") == std::string::npos);
    CHECK(count_lines(slurp(u / "weights.csv")) == 10);
    CHECK(count_lines(slurp(u / "candidates.csv")) == 501);
}

TEST_CASE("separate commands reproduce the combined run", "[pipeline]")
{
    auto dir = fresh_temp_dir("split_cmds");
    auto manifest = kFixtures / "auto_like" / "manifest.json";
    REQUIRE(execute(Command::run, config_for(manifest, dir / "a")) == 0);
    REQUIRE(execute(Command::optimize, config_for(manifest, dir / "b")) == 0);
    REQUIRE(execute(Command::backtest, config_for(manifest, dir / "b")) == 0);
    REQUIRE(execute(Command::frontier, config_for(manifest, dir / "b")) == 0);
    for (const auto& entry : fs::recursive_directory_iterator(dir / "a")) {
        if (!entry.is_regular_file())
            continue;
        auto rel = fs::relative(entry.path(), dir / "a");
        INFO(rel.string());
        REQUIRE(slurp(entry.path()) == slurp(dir / "b" / rel));
    }
}

TEST_CASE("backtest without optimize artifacts fails cleanly", "[pipeline]")
{
    auto dir = fresh_temp_dir("no_opt");
    CHECK(execute(Command::backtest, config_for(kFixtures / "auto_like" / "manifest.json", dir / "out")) == 1);
    CHECK_FALSE(fs::exists(dir / "out" / "summary.csv"));
}

TEST_CASE("an empty training window fails and names the window", "[pipeline]")
{
    auto dir = fresh_temp_dir("empty_train");
    auto cfg = config_for(kFixtures / "auto_like" / "manifest.json", dir / "out");
    using namespace std::chrono;
    cfg.split.train_start = Date{2017y / January / 1};
    cfg.split.train_end = Date{2017y / January / 1};
    CHECK_THROWS(cfg.validate());
    cfg.split = default_split();
    // A weekend: every asset has history before it, but no trading rows.
    cfg.split.train_start = Date{2016y / January / 9};
    cfg.split.train_end = Date{2016y / January / 10};

    std::ostringstream captured;
    auto* old = std::cerr.rdbuf(captured.rdbuf());
    int status = execute(Command::run, cfg);
    std::cerr.rdbuf(old);
    CHECK(status == 1);
    CHECK(captured.str().find("train window") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / "out" / "auto_like"));
}

TEST_CASE("a failing universe in a batch removes everything written", "[pipeline]")
{
    auto dir = fresh_temp_dir("rollback");
    auto m = write_manifest(dir, "{\"universes\":[{\"name\":\"good\",\"assets\":[" + asset("MSZ") + "," + asset("TAM") +
                                     "]},{\"name\":\"bad\",\"assets\":[" + asset("BAJ") + "]}]}");
    CHECK(execute(Command::run, config_for(m, dir / "out")) == 1);
    CHECK_FALSE(fs::exists(dir / "out" / "good"));
    CHECK_FALSE(fs::exists(dir / "out" / "summary.csv"));
}

TEST_CASE("a six-universe batch yields six summary rows in manifest order", "[pipeline]")
{
    auto dir = fresh_temp_dir("batch");
    auto m = kFixtures / "batch_manifest.json";
    REQUIRE(execute(Command::run, config_for(m, dir / "out", 300)) == 0);
    std::istringstream in(slurp(dir / "out" / "summary.csv"));
    std::string line;
    std::getline(in, line);
    std::vector<std::string> names;
    while (std::getline(in, line))
        names.push_back(line.substr(0, line.find(',')));
    CHECK(names == std::vector<std::string>{"auto", "banking", "metal", "fmcg", "healthcare", "it"});
}

TEST_CASE("CLI flags override the config file", "[pipeline][cli]")
{
    auto dir = fresh_temp_dir("cli");
    std::ofstream(dir / "cfg.toml") << "manifest = \"" << (kFixtures / "auto_like" / "manifest.json").string()
                                    << "\"\nout = \"" << (dir / "from_file").string() << "\"\ncandidates = 50\n";
    std::string cli = MCPORT_CLI;
    std::string base = cli + " run --config " + (dir / "cfg.toml").string();
    REQUIRE(std::system((base + " > /dev/null 2>&1").c_str()) == 0);
    CHECK(count_lines(slurp(dir / "from_file" / "auto_like" / "candidates.csv")) == 51);

    REQUIRE(std::system((base + " --candidates 70 --out " + (dir / "from_flag").string() + " > /dev/null 2>&1").c_str()) == 0);
    CHECK(count_lines(slurp(dir / "from_flag" / "auto_like" / "candidates.csv")) == 71);

    CHECK(std::system((cli + " run --manifest x.json --out y --test-end 2021-13-01 > /dev/null 2>&1").c_str()) != 0);
    CHECK(std::system((cli + " explode --manifest x.json --out y > /dev/null 2>&1").c_str()) != 0);
}
