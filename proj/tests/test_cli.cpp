#include "cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using ordltl::cli::run_cli;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& contents)
{
    const auto path = std::filesystem::temp_directory_path() / ("ordltl_test_" + name);
    std::ofstream(path) << contents;
    return path.string();
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("sat")
{
    const Run bot = cli({"sat", "p & !p"});
    CHECK(bot.code == 0);
    CHECK(bot.out.rfind("UNSAT", 0) == 0);

    const Run p = cli({"sat", "p"});
    CHECK(p.code == 0);
    CHECK(p.out.find("witness: {p}") != std::string::npos);

    const Run g = cli({"sat", "G X T", "--format", "json"});
    CHECK(g.code == 0);
    const auto j = nlohmann::json::parse(g.out);
    CHECK(j["schemaVersion"] == 1);
    CHECK(j["status"] == "SAT");
    CHECK(j["level"] == 1);
    CHECK(j["bound"] == "w^4");
    CHECK(j["witness"].contains("omega"));
    CHECK(j["stats"].contains("stateCount"));
    CHECK_FALSE(j["stats"].contains("elapsedMillis"));

    const Run timed = cli({"sat", "p", "--format", "json", "--timing"});
    CHECK(nlohmann::json::parse(timed.out)["stats"].contains("elapsedMillis"));

    const Run lvl = cli({"sat", "G X T", "--max-level", "0", "--format", "json"});
    CHECK(nlohmann::json::parse(lvl.out)["status"] == "UNSAT");
    CHECK(nlohmann::json::parse(lvl.out)["bound"] == "w");
}

TEST_CASE("sat output is byte-identical across runs")
{
    for (const char* f : {"p", "p & !p", "G X T", "G F p & F G !p"}) {
        const Run a = cli({"sat", f, "--format", "json"});
        CHECK(cli({"sat", f, "--format", "json"}).out == a.out);
        CHECK(cli({"sat", f, "--format", "json"}).out == a.out);
    }
}

TEST_CASE("witness file round-trips through eval")
{
    const auto path = (std::filesystem::temp_directory_path() / "ordltl_test_witness.json").string();
    REQUIRE(cli({"sat", "G X T & G F p & G F !p", "--witness-out", path}).code == 0);
    const Run e = cli({"eval", "G X T & G F p & G F !p", path});
    CHECK(e.code == 0);
    CHECK(e.out == "true\n");
}

TEST_CASE("parse errors exit 2 with a position")
{
    const Run r = cli({"sat", "p U"});
    CHECK(r.code == 2);
    CHECK(r.err.find("position 4") != std::string::npos);
    CHECK(r.err.find("p U\n     ^") != std::string::npos);
    CHECK(cli({"sat", "(p"}).code == 2);
    CHECK(cli({"dot", "p &"}).code == 2);
}

TEST_CASE("usage errors exit 2, help exits 0")
{
    CHECK(cli({}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({"sat", "p", "--max-level", "5"}).code == 2);
    CHECK(cli({"sat", "p", "--format", "xml"}).code == 2);
    CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("eval")
{
    const std::string fp = temp_file("fp.json", R"({"cat":[{"letter":[]},{"letter":["p"]}]})");
    CHECK(cli({"eval", "F p", fp}).out == "true\n");
    const std::string single = temp_file("single.json", R"({"letter":["p"]})");
    CHECK(cli({"eval", "X T", single}).out == "false\n");
    const std::string gq = temp_file("gq.json", R"({"omega":{"letter":["q"]}})");
    CHECK(cli({"eval", "G q", gq}).out == "true\n");
    const Run j = cli({"eval", "G q", gq, "--format", "json"});
    CHECK(j.out == "{\"schemaVersion\":1,\"value\":true,\"length\":\"w\"}\n");

    const std::string bad = temp_file("bad.json", R"({"omega":5})");
    CHECK(cli({"eval", "p", bad}).code == 2);
    CHECK(cli({"eval", "p", "/nonexistent/word.json"}).code == 2);
}

TEST_CASE("dot")
{
    const Run p = cli({"dot", "p"});
    CHECK(p.code == 0);
    CHECK(p.out == read_file(std::string(ORDLTL_GOLDEN_DIR) + "/dot_p.dot"));
    CHECK(cli({"dot", "p"}).out == p.out);
    const Run e = cli({"dot", "p & !p"});
    CHECK(e.code == 0);
    CHECK(e.out.find("no initial states") != std::string::npos);
}

TEST_CASE("state bound override exits 3")
{
    ::setenv("ORDLTL_MAX_STATES", "2", 1);
    const Run r = cli({"sat", "p U q"});
    const Run d = cli({"dot", "p U q"});
    ::unsetenv("ORDLTL_MAX_STATES");
    CHECK(r.code == 3);
    CHECK(d.code == 3);
    CHECK(cli({"sat", "p U q"}).code == 0);
}

TEST_CASE("check")
{
    const Run ok = cli({"check", "--cases", "30", "--lasso-draws", "50", "--seed", "5"});
    CHECK(ok.code == 0);
    CHECK(cli({"check", "--cases", "30", "--lasso-draws", "50", "--seed", "5"}).out == ok.out);
    const Run bad = cli({"check", "--cases", "200", "--lasso-draws", "50", "--inject-mutant", "limit-a"});
    CHECK(bad.code == 1);
    CHECK(bad.out.find("\"ok\":false") != std::string::npos);
    CHECK(cli({"check", "--props", "4"}).code == 2);
    CHECK(cli({"check", "--inject-mutant", "other"}).code == 2);
}
