#include "cli.hpp"

#include "sunflower/family.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using namespace sunflower;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run sfl(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() / ("sfl_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    std::string write(const std::string& name, const std::string& content) const
    {
        std::ofstream(path(name), std::ios::binary) << content;
        return path(name);
    }

    fs::path dir_;
};

}  // namespace

TEST_F(CliTest, GenExtremalWritesFamily)
{
    const auto r = sfl({"gen", "--extremal", "--p", "3", "--k", "2", "-o", path("fam.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(read_family_file(path("fam.json")), generate_extremal(3, 2));
    const auto s = sfl({"gen", "--extremal", "--p", "3", "--k", "2"});
    EXPECT_EQ(s.out, serialize_family(generate_extremal(3, 2)));
}

TEST_F(CliTest, GenRandomNeedsSeed)
{
    EXPECT_EQ(sfl({"gen", "--random", "--n", "8", "--k", "2", "--l", "9"}).code, 2);
    const auto a = sfl({"gen", "--random", "--n", "8", "--k", "2", "--l", "9", "--seed", "4", "--distinct"});
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(parse_family(a.out), generate_random_family(8, 2, 9, 4, true));
}

TEST_F(CliTest, SpreadVerdictsAndExitCodes)
{
    sfl({"gen", "--extremal", "--p", "3", "--k", "2", "-o", path("fam.json")});
    const auto bad = sfl({"spread", "--family", path("fam.json"), "--r", "19/10"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.out.find("Z={1}"), std::string::npos);
    EXPECT_NE(bad.out.find("count=2"), std::string::npos);
    EXPECT_EQ(sfl({"spread", "--family", path("fam.json"), "--r", "2"}).code, 0);
    EXPECT_EQ(sfl({"spread", "--family", path("fam.json"), "--r", "1.9"}).code, 1);
    const auto num = sfl({"spread", "--family", path("fam.json")});
    EXPECT_EQ(num.code, 0);
    EXPECT_NE(num.out.find("spread number: 2"), std::string::npos);
    const auto js = sfl({"spread", "--family", path("fam.json"), "--r", "19/10", "--json"});
    EXPECT_EQ(js.out, "{\"r\":\"19/10\",\"spread\":false,\"witness\":{\"Z\":[1],\"count\":2}}\n");
}

TEST_F(CliTest, Chi)
{
    const auto fam = write("f.json", R"({"n":3,"k":2,"sets":[[1,2],[1,3],[2,3]]})");
    const auto r = sfl({"chi", "--family", fam, "--x", "1", "--w", "3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "chi={1} witness=2 size=1\n");
    EXPECT_EQ(sfl({"chi", "--family", fam, "--x", "4", "--w", "3"}).code, 2);
    EXPECT_EQ(sfl({"chi", "--family", fam, "--x", "1", "--w", "7"}).code, 2);
}

TEST_F(CliTest, SunflowerMethods)
{
    const auto nine = sfl({"gen", "--random", "--n", "8", "--k", "2", "--l", "9", "--seed", "1", "--distinct", "-o", path("nine.json")});
    ASSERT_EQ(nine.code, 0);
    const auto er = sfl({"sunflower", "--family", path("nine.json"), "--p", "3", "--method", "erdos-rado"});
    EXPECT_EQ(er.code, 0);
    EXPECT_EQ(er.out.rfind("core=", 0), 0u);

    sfl({"gen", "--extremal", "--p", "3", "--k", "2", "-o", path("ext.json")});
    const auto none = sfl({"sunflower", "--family", path("ext.json"), "--p", "3"});
    EXPECT_EQ(none.code, 1);
    EXPECT_EQ(none.out, "none\n");

    EXPECT_EQ(sfl({"sunflower", "--family", path("ext.json"), "--p", "3", "--method", "spread"}).code, 2);
    EXPECT_EQ(sfl({"sunflower", "--family", path("ext.json"), "--p", "3", "--method", "spread", "--seed", "1"}).code, 1);
    EXPECT_EQ(sfl({"sunflower", "--family", path("ext.json"), "--p", "3", "--method", "magic"}).code, 2);
}

TEST_F(CliTest, Disjoint)
{
    const auto fam = write("f.json", R"({"n":6,"k":1,"sets":[[1],[2],[3],[4],[5],[6]]})");
    const auto r = sfl({"disjoint", "--family", fam, "--p", "3", "--max-iters", "5", "--seed", "2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("sets=", 0), 0u);
    EXPECT_EQ(sfl({"disjoint", "--family", fam, "--p", "3"}).code, 2);
}

TEST_F(CliTest, Kraft)
{
    const auto good = sfl({"kraft", "--code", write("c.txt", "0\n10\n11\n")});
    EXPECT_EQ(good.code, 0);
    EXPECT_NE(good.out.find("kraft sum: 1\n"), std::string::npos);
    EXPECT_NE(good.out.find("mean length: 5/3"), std::string::npos);
    const auto bad = sfl({"kraft", "--code", write("d.txt", "0\n01\n")});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.out.find("words 1 and 2"), std::string::npos);
}

TEST_F(CliTest, AuditEncodingCsv)
{
    sfl({"gen", "--extremal", "--p", "3", "--k", "2", "-o", path("ext.json")});
    const auto r = sfl({"audit-encoding", "--family", path("ext.json"), "--v", "2", "--rho", "4", "--r", "2", "--csv", path("a.csv")});
    EXPECT_EQ(r.code, 0) << r.err;
    const std::string csv = slurp(path("a.csv"));
    EXPECT_EQ(csv.substr(0, csv.find('\n')),
              "x,V,case,total_bits,bits_0a,bits_0b,bits_0c,bits_0c2,bits_0d,bits_0e,bits_1a,bits_1b,bits_1c,chi_u,chi_w");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 25);
    EXPECT_NE(r.out.find("E|chi(X,U)| = 2, E|chi(X,W)| = 1/3"), std::string::npos);
    EXPECT_EQ(sfl({"audit-encoding", "--family", path("ext.json"), "--v", "9"}).code, 2);
}

TEST_F(CliTest, ExperimentRequiresSeedUnlessExact)
{
    sfl({"gen", "--extremal", "--p", "3", "--k", "2", "-o", path("ext.json")});
    EXPECT_EQ(sfl({"experiment", "chi", "--family", path("ext.json"), "--w", "2", "--trials", "100", "--csv", path("x.csv")}).code, 2);
    const auto exact = sfl({"experiment", "coverage", "--family", path("ext.json"), "--w", "2", "--exact", "--csv", path("c.csv")});
    EXPECT_EQ(exact.code, 0);
    EXPECT_EQ(slurp(path("c.csv")), "statistic,m_or_w,value,ci_halfwidth,trials,seed,note\ncoverage_probability,2,2/3,,,,outside gamma<1/2 regime\n");
    EXPECT_EQ(sfl({"experiment", "partition", "--family", path("ext.json"), "--p", "2", "--trials", "50", "--seed", "3", "--csv", path("p.csv")}).code, 0);
    EXPECT_EQ(sfl({"experiment", "contraction", "--family", path("ext.json"), "--r", "4", "--m-max", "2", "--seed", "3", "--csv", path("s.csv")}).code, 0);
    EXPECT_EQ(sfl({"experiment", "bogus", "--family", path("ext.json"), "--csv", path("s.csv")}).code, 2);
}

TEST_F(CliTest, UsageErrors)
{
    EXPECT_EQ(sfl({}).code, 2);
    EXPECT_EQ(sfl({"nope"}).code, 2);
    const auto missing = sfl({"spread", "--family", path("missing.json")});
    EXPECT_EQ(missing.code, 2);
    EXPECT_EQ(std::count(missing.err.begin(), missing.err.end(), '\n'), 1);
    const auto malformed = sfl({"spread", "--family", write("m.json", "{\"n\": 2,\n \"k\": 2,\n \"sets\": [[1,3]]}")});
    EXPECT_EQ(malformed.code, 2);
    EXPECT_NE(malformed.err.find("line 3: element 3 exceeds n=2"), std::string::npos);
    EXPECT_EQ(sfl({"--help"}).code, 0);
}
