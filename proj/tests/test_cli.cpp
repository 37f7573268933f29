#include "polyk0/cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

namespace {

const std::string kFixtures = POLYK0_FIXTURES_DIR;

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "polyk0");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = polyk0::run_subcommand(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json parse(const Run& r) { return nlohmann::json::parse(r.out); }

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class Cli : public ::testing::Test {
protected:
    static void SetUpTestSuite() { setenv("POLYK0_FIXTURES", kFixtures.c_str(), 1); }
};

} // namespace

TEST_F(Cli, LambdaAtMinusOne)
{
    auto r = run({"lambda", "--i", "2", "--at", "-1"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "1\n");
}

TEST_F(Cli, LambdaAndAdamsValues)
{
    EXPECT_EQ(run({"lambda", "--i", "3", "--at", "-2"}).out, "-4\n");
    EXPECT_EQ(run({"lambda", "--i", "2", "--at", "100000000000000000000"}).out,
              "4999999999999999999950000000000000000000\n");
    EXPECT_EQ(run({"lambda", "--i", "4", "--at", "7", "--adams"}).out, "7\n");
}

TEST_F(Cli, VerifyAllSuite)
{
    auto r = run({"verify-all", "--suite", "passi"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_TRUE(parse(r)["passed"].get<bool>());
}

TEST_F(Cli, CharacterQuotient)
{
    auto r = run({"char", "--functor", "tensor:2", "--vars", "2", "--mod", "2", "--compare", "frobenius"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(parse(r)["quotient"], "m(1,1)");
}

TEST_F(Cli, CharacterWithoutQuotient)
{
    auto r = run({"char", "--functor", "sym:3", "--vars", "3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(parse(r)["character"]["string"], "m(1,1,1) + m(2,1) + m(3)");
    EXPECT_EQ(run({"char", "--functor", "sym:3", "--vars", "3", "--compare", "frobenius"}).code, 2);
}

TEST_F(Cli, GoldenFiles)
{
    const std::vector<std::pair<std::string, std::vector<std::string>>> cases{
        {"snf.json", {"snf", "--matrix", "snf_example.json"}},
        {"monoid_quotient_cyclic4.json", {"monoid-quotient", "--monoid", "cyclic4.json", "--degree", "2"}},
        {"extend_binom2.json", {"extend", "--map", "binom2.json"}},
        {"k0_collapse.json", {"k0", "--spec", "collapse.json"}},
        {"dold_kan_two.json", {"dold-kan", "--complex", "two.json"}},
        {"derive_sym2.json", {"derive", "--functor", "sym:2", "--complex", "two.json"}},
        {"char_tensor2.json", {"char", "--functor", "tensor:2", "--vars", "2", "--mod", "2", "--compare", "frobenius"}},
    };
    for (const auto& [golden, args] : cases) {
        auto r = run(args);
        EXPECT_EQ(r.code, 0) << golden << ": " << r.err;
        EXPECT_EQ(r.out, slurp(kFixtures + "/golden/" + golden)) << golden;
    }
}

TEST_F(Cli, SnfCokernel)
{
    auto j = parse(run({"snf", "--matrix", "[[2, 4], [6, 8]]"}));
    EXPECT_EQ(j["cokernel"], "Z/2 + Z/4");
    EXPECT_EQ(j["rank"], 2);
}

TEST_F(Cli, MonoidQuotientOfTheNaturals)
{
    auto j = parse(run({"monoid-quotient", "--monoid", "naturals.json", "--degree", "2"}));
    EXPECT_EQ(j["group"]["describe"], "Z^3");
    EXPECT_EQ(j["basis"], nlohmann::json({"1", "t", "t^2"}));
    auto f = parse(run({"monoid-quotient", "--monoid", "cyclic4.json", "--degree", "5", "--mod", "2"}));
    EXPECT_EQ(f["group"]["describe"], "Z/2 + Z/2 + Z/2 + Z/2");
}

TEST_F(Cli, GroupCompletionOfAnAbsorbingMonoid)
{
    auto j = parse(run({"group-complete", "--monoid", "truncated_three.json"}));
    EXPECT_EQ(j["group"]["describe"], "0");
}

TEST_F(Cli, VerifyDegreeReportsAWitness)
{
    auto fail = run({"verify-degree", "--map", "square_table.json", "--degree", "1"});
    EXPECT_EQ(fail.code, 1);
    auto j = parse(fail);
    EXPECT_FALSE(j["holds"].get<bool>());
    EXPECT_EQ(j["witness"]["value"], "2");
    EXPECT_EQ(run({"verify-degree", "--map", "square_table.json"}).code, 0);
}

TEST_F(Cli, ExtendRejectsAFailedDegree)
{
    EXPECT_EQ(run({"extend", "--map", "square_table.json", "--degree", "1"}).code, 1);
}

TEST_F(Cli, InducedMapOnRanks)
{
    auto j = parse(run({"k0", "--spec", "ranks.json", "--induce", "binom2.json", "--degree", "2"}));
    EXPECT_TRUE(j["factors"].get<bool>());
    for (const auto& v : j["induced"]["values"]) {
        polyk0::Int x(v["at"][0].get<std::string>());
        EXPECT_EQ(polyk0::Int(v["value"].get<std::string>()), x * (x - 1) / 2);
    }
}

TEST_F(Cli, InducedMapThatBreaksARelation)
{
    const std::string map = R"({"domain": {"type": "free", "rank": 2}, "degree": 1, "mahler": {"0,1": "1"}})";
    auto r = run({"k0", "--spec", "collapse.json", "--induce", map, "--target", "ranks.json", "--degree", "1"});
    EXPECT_EQ(r.code, 1);
    EXPECT_FALSE(parse(r)["factors"].get<bool>());
}

TEST_F(Cli, CechNerveOfTheInclusion)
{
    auto j = parse(run({"cech", "--map", "inclusion.json", "--functor", "sym:2"}));
    EXPECT_EQ(j["euler_class"], "1");
    EXPECT_EQ(j["nerve"]["ranks"], nlohmann::json({2, 3, 4, 5}));
    EXPECT_EQ(j["output_ranks"], nlohmann::json({3, 6, 10, 15}));
    EXPECT_EQ(j["output_normalized_ranks"], nlohmann::json({3, 3, 1, 0}));
    EXPECT_EQ(j["output_skeletal_degree"], 2);
}

TEST_F(Cli, UsageErrors)
{
    EXPECT_EQ(run({}).code, 2);
    auto unknown = run({"frobnicate"});
    EXPECT_EQ(unknown.code, 2);
    EXPECT_NE(unknown.err.find("frobnicate"), std::string::npos);
    auto missing = run({"lambda", "--i", "2"});
    EXPECT_EQ(missing.code, 2);
    EXPECT_NE(missing.err.find("--at"), std::string::npos);
    EXPECT_EQ(run({"snf", "--matrix", "[[1, 2], [3]"}).code, 2);
    EXPECT_EQ(run({"snf", "--matrix", "no_such_file.json"}).code, 2);
    EXPECT_EQ(run({"--format", "xml", "lambda", "--i", "1", "--at", "1"}).code, 2);
    EXPECT_EQ(run({"derive", "--functor", "schur:2", "--complex", "two.json"}).code, 2);
    EXPECT_EQ(run({"cech", "--map", "[[1], [0]]", "--mod", "4", "--levels", "2"}).code, 2);
}

TEST_F(Cli, CapIsEnforced)
{
    EXPECT_EQ(run({"--cap", "3", "group-complete", "--monoid", "cyclic4.json"}).code, 2);
    EXPECT_EQ(run({"--cap", "4", "group-complete", "--monoid", "cyclic4.json"}).code, 0);
}

TEST_F(Cli, TableFormat)
{
    auto r = run({"--format", "table", "snf", "--matrix", "[[2, 4], [6, 8]]"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("cokernel: Z/2 + Z/4"), std::string::npos);
    auto v = run({"--format", "table", "verify-all", "--suite", "lambda"});
    EXPECT_EQ(v.out.rfind("PASS lambda", 0), 0u);
}

TEST_F(Cli, OutputIsReproducible)
{
    auto a = run({"--seed", "7", "verify-all", "--suite", "closed-form", "--suite", "fermat"});
    auto b = run({"--seed", "7", "verify-all", "--suite", "closed-form", "--suite", "fermat"});
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST_F(Cli, BinaryMatchesInProcessRun)
{
    const std::string tmp = ::testing::TempDir() + "polyk0_cli_out.json";
    const std::string cmd = std::string("POLYK0_FIXTURES=") + kFixtures + " " + POLYK0_BINARY +
                            " derive --functor sym:2 --complex two.json > " + tmp;
    int status = std::system(cmd.c_str());
    ASSERT_EQ(status, 0);
    EXPECT_EQ(slurp(tmp), slurp(kFixtures + "/golden/derive_sym2.json"));
    std::remove(tmp.c_str());

    int fail = std::system((std::string(POLYK0_BINARY) + " lambda > /dev/null 2>&1").c_str());
    ASSERT_TRUE(WIFEXITED(fail));
    EXPECT_EQ(WEXITSTATUS(fail), 2);
}
