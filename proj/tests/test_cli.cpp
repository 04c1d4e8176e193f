#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "support/fixtures.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun run(const std::string& args)
{
    const std::string cmd = std::string(GEODIAM_CLI) + " " + args + " 2>/dev/null";
    CliRun r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string fixture(const std::string& name) { return (fixtures::corpus_dir() / name).string(); }

fs::path temp_dir()
{
    const fs::path p = fs::temp_directory_path() / ("geodiam_cli_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
}

} // namespace

TEST(Cli, ValidatePrintsCanonicalDomain)
{
    const CliRun r = run("validate " + fixture("hole_square.json"));
    ASSERT_EQ(r.code, 0);
    const json j = json::parse(r.out);
    EXPECT_TRUE(j["valid"].get<bool>());
    EXPECT_EQ(j["n"], 8);
    EXPECT_EQ(j["holes"], 1);
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run("validate /nonexistent/domain.json").code, 1);
    EXPECT_EQ(run("nosuchcommand").code, 1);
    const fs::path dir = temp_dir();
    const fs::path bad = dir / "bad.json";
    std::ofstream(bad) << "{\"outer\": [[0,0],[1,0]], \"holes\": []}";
    EXPECT_EQ(run("validate " + bad.string()).code, 2);
    const fs::path junk = dir / "junk.json";
    std::ofstream(junk) << "{not json";
    EXPECT_EQ(run("validate " + junk.string()).code, 1);
    EXPECT_EQ(run("distance " + fixture("unit_square.json") + " --from 0,0 --to 5,5").code, 2);
    EXPECT_EQ(run("oracle " + fixture("unit_square.json") + " --resolution 3").code, 2);
    fs::remove_all(dir);
}

TEST(Cli, DistanceOnSquare)
{
    const CliRun r = run("distance " + fixture("unit_square.json") + " --from 0,0 --to 1,1");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("1.4142135623730951"), std::string::npos);
    EXPECT_TRUE(json::parse(r.out)["bends"].empty());
}

TEST(Cli, SpmOnConvexDomainHasNoArcs)
{
    const CliRun r = run("spm " + fixture("convex_hexagon.json") + " --source 0");
    ASSERT_EQ(r.code, 0);
    const json j = json::parse(r.out);
    EXPECT_TRUE(j["arcs"].empty());
    EXPECT_EQ(j["source_vertex"], 0);
}

TEST(Cli, CandidatesIncludeBoundaryFeet)
{
    const CliRun r = run("candidates " + fixture("hole_square.json") + " --threads 1");
    ASSERT_EQ(r.code, 0);
    bool foot = false;
    for (const auto& c : json::parse(r.out)) foot = foot || c["provenance"]["kind"] == "BoundaryFoot";
    EXPECT_TRUE(foot);
}

TEST(Cli, DiameterReport)
{
    const CliRun r = run("diameter " + fixture("hole_square.json") + " --report --threads 1");
    ASSERT_EQ(r.code, 0);
    const json j = json::parse(r.out);
    EXPECT_NEAR(j["distance"].get<double>(), 6.141164864840266, 1e-12);
    EXPECT_EQ(j["report"]["holes"], 1);
    EXPECT_TRUE(j["report"].contains("timings_ms"));
}

TEST(Cli, DiameterIsDeterministic)
{
    const std::string args = "diameter " + fixture("domain_s13_n9_h3.json");
    const CliRun a = run(args + " --threads 1");
    const CliRun b = run(args + " --threads 3");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, RenderWritesOnePathPerRing)
{
    const fs::path dir = temp_dir();
    const fs::path out = dir / "square.svg";
    ASSERT_EQ(run("render " + fixture("unit_square.json") + " --out " + out.string()).code, 0);
    const std::string svg = fixtures::read(out);
    std::size_t paths = 0;
    for (std::size_t pos = 0; (pos = svg.find("<path", pos)) != std::string::npos; ++pos) ++paths;
    EXPECT_EQ(paths, 1u);
    EXPECT_NE(svg.find("<svg"), std::string::npos);
    EXPECT_EQ(run("render " + fixture("unit_square.json") + " --out " + out.string() + " --width 10").code, 1);
    fs::remove_all(dir);
}

TEST(Cli, GenerateWritesIndexedCorpus)
{
    const fs::path dir = temp_dir() / "gen";
    const CliRun r = run("oracle --generate " + dir.string() + " --seed 4 --count 3 --n-outer 9 --holes 1");
    ASSERT_EQ(r.code, 0);
    const json index = json::parse(fixtures::read(dir / "index.json"));
    ASSERT_EQ(index.size(), 3u);
    EXPECT_EQ(index[0]["file"], "domain_s4_n9_h1.json");
    for (const auto& e : index) EXPECT_EQ(run("validate " + (dir / e["file"].get<std::string>()).string()).code, 0);
    fs::remove_all(dir.parent_path());
}
