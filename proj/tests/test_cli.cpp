#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <memory>
#include <string>

#include "json.hpp"

#include "ospvoa/json_io.hpp"

using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args)
{
    const std::string cmd = std::string(OSPVOA_CLI) + " " + args + " 2>/dev/null";
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0)
        out.append(buf.data(), n);
    const int status = pclose(pipe.release());
    return {WEXITSTATUS(status), out};
}

json run_json(const std::string& args, int expected_code = 0)
{
    auto r = run(args);
    EXPECT_EQ(r.code, expected_code) << args;
    return json::parse(r.out);
}

} // namespace

TEST(Cli, FusionTable)
{
    auto r = run("fusion --family osp -k 1 --format table");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("M(2) x M(2) = M(1) + M(3)"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("M(4) x M(4) = M(1)"), std::string::npos);
}

TEST(Cli, ThetaIdentityPasses)
{
    auto doc = run_json("theta-identity -p 5 --pprime 1 -r 1 -s 0 -N 20");
    EXPECT_TRUE(doc["holds"].get<bool>());
    EXPECT_TRUE(ospvoa::json_io::revalidate(doc).empty());
}

TEST(Cli, FpdimKeys)
{
    auto r = run("fpdim -k 1");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\"fp_Sk\""), std::string::npos);
    EXPECT_NE(r.out.find("\"corollary_holds\": true"), std::string::npos);
    auto doc = json::parse(r.out);
    EXPECT_EQ(ospvoa::json_io::parse_rational(doc["fp_Lkeven_exact"]), 1);
}

TEST(Cli, UsageErrorsExitTwo)
{
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("smatrix").code, 2);
    EXPECT_EQ(run("smatrix -k 1 -p 5 --pprime 1").code, 2);
    EXPECT_EQ(run("theta-identity -p 5 --pprime 1").code, 2);
    EXPECT_EQ(run("theta-identity -p 4 --pprime 2 -r 1").code, 2);
    EXPECT_EQ(run("fusion -k 1 --format xml").code, 2);
    EXPECT_EQ(run("nosuchcommand").code, 2);
}

TEST(Cli, EnvironmentDefaults)
{
    auto r = run("char -k 1 -r 1");
    auto env = run("char -k 1 -r 1 --format json");
    EXPECT_EQ(r.out, env.out);
    auto shortened = run_json("char -k 1 -r 1 -N 3");
    setenv("OSPVOA_N", "3", 1);
    auto from_env = run_json("char -k 1 -r 1");
    unsetenv("OSPVOA_N");
    EXPECT_EQ(shortened, from_env);
}

TEST(Cli, DocumentsRevalidate)
{
    for (const char* args : {"smatrix -k 2 --family extended", "tmatrix --family vir --u 3 -p 5",
                             "verlinde -k 3 --family sl2", "minweight --u 5 -p 9", "coset-char -k 1 --nu 0 -r 1 -N 8",
                             "coset-smatrix -k 2", "char --family vir --u 3 -p 5 -r 1 -s 2 -N 8",
                             "stransform-check -k 1 -N 20"}) {
        auto doc = run_json(args);
        auto problems = ospvoa::json_io::revalidate(doc);
        EXPECT_TRUE(problems.empty()) << args << ": " << (problems.empty() ? "" : problems.front());
    }
}

TEST(Cli, TamperedDocumentIsRejected)
{
    auto doc = run_json("smatrix -k 1 --family sl2");
    doc["entries"][0][1]["re"] = "0.9";
    EXPECT_FALSE(ospvoa::json_io::revalidate(doc).empty());
}

TEST(Cli, TamperedIdentityIsRejected)
{
    auto doc = run_json("decompose -k 1 -r 1 -N 6");
    EXPECT_TRUE(ospvoa::json_io::revalidate(doc).empty());
    doc["holds"] = false;
    doc["discrepancy"] = {{"w", {{"num", "0"}, {"den", "1"}}}};
    EXPECT_FALSE(ospvoa::json_io::revalidate(doc).empty());
}
