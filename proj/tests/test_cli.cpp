#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include <cli.hpp>

using namespace lorcost;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = 0;
    std::string out, err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    Run r;
    r.code = cli::run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::path(LORCOST_TEST_TMP) / ::testing::UnitTest::GetInstance()->current_test_info()->name();
        fs::create_directories(dir_);
    }

    std::string write(const std::string& name, const std::string& text) {
        const auto p = dir_ / name;
        std::ofstream(p) << text;
        return p.string();
    }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

}  // namespace

TEST_F(CliTest, CoOnScanWithFixedShift) {
    const auto t = write("scan8.txt", "0\n1\n2\n3\n4\n5\n6\n7\n");
    const auto r = run({"cost", "--trace", t, "--model", "co", "--B", "2", "--shift", "0"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = Json::parse(r.out);
    EXPECT_EQ(j.at("results").at("total"), 3.0);
    EXPECT_EQ(j.at("schema_version"), "1");
    EXPECT_EQ(j.at("inputs").at("digest"), digest(scan(8)));
}

TEST_F(CliTest, SmoothedCoReportsExactValue) {
    const auto t = write("scan8.txt", "0\n1\n2\n3\n4\n5\n6\n7\n");
    const auto r = run({"cost", "--trace", t, "--model", "co", "--B", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = Json::parse(r.out);
    EXPECT_EQ(j.at("results").at("exact"), "7/2");
    EXPECT_EQ(j.at("results").at("total"), 3.5);
}

TEST_F(CliTest, BidimTwoFinger) {
    const auto t = write("t.txt", "0\n4\n2\n");
    const auto r = run({"cost", "--trace", t, "--model", "bidim", "--M", "16", "--B", "4", "--format", "text"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.substr(0, 8), "total 2\n");
}

TEST_F(CliTest, LorWithBlockLocality) {
    const auto t = write("t.txt", "0\n8\n9\n");
    const auto r = run({"cost", "--trace", t, "--model", "lor", "--ell", "block:4"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_DOUBLE_EQ(Json::parse(r.out).at("results").at("total").get<double>(), 1.25);
}

TEST_F(CliTest, HierarchyLevelCosts) {
    const auto t = write("t.txt", "0\n1\n2\n3\n4\n5\n6\n7\n");
    const auto h = write("h.csv", "M,B,C\n4,2,1\n16,4,2\n");
    const auto r = run({"cost", "--trace", t, "--model", "hierarchy", "--hierarchy", h, "--level-model", "co"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = Json::parse(r.out);
    EXPECT_EQ(j.at("results").at("level_costs").size(), 2u);
}

TEST_F(CliTest, UsageErrors) {
    const auto t = write("t.txt", "0\n1\n");
    EXPECT_EQ(run({"cost", "--trace", t, "--model", "co"}).code, cli::usage);
    EXPECT_EQ(run({"cost", "--trace", t, "--model", "lor"}).code, cli::usage);
    EXPECT_EQ(run({"cost", "--trace", t, "--model", "lor", "--ell", "cubic"}).code, cli::usage);
    EXPECT_EQ(run({"cost", "--trace", t, "--model", "nosuch"}).code, cli::usage);
    EXPECT_EQ(run({"cost", "--trace", path("missing.txt"), "--model", "co", "--B", "2"}).code, cli::usage);
    EXPECT_EQ(run({"cost", "--trace", write("bad.txt", "0\nx\n"), "--model", "co", "--B", "2"}).code, cli::usage);
    EXPECT_EQ(run({"gen", "trace", "stage_halving", "--B", "6"}).code, cli::usage);
    EXPECT_EQ(run({"gen", "trace", "nosuch"}).code, cli::usage);
    EXPECT_EQ(run({"check", "--suite", "nosuch"}).code, cli::usage);
    EXPECT_EQ(run({}).code, cli::usage);
}

TEST_F(CliTest, PreconditionErrors) {
    const auto t = write("t.txt", "0\n1\n");
    EXPECT_EQ(run({"plotdata", "--trace", t, "--M", "4", "--B", "4"}).code, cli::precondition);
    const auto down = write("down.txt", "5\n1\n");
    EXPECT_EQ(run({"cost", "--trace", down, "--model", "co", "--B", "2"}).code, cli::precondition);
}

TEST_F(CliTest, GenTraceScan) {
    const auto r = run({"gen", "trace", "scan", "--n", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "0\n1\n2\n3\n");
}

TEST_F(CliTest, GenLayout) {
    const auto r = run({"gen", "layout", "veb", "--d", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "heap_index,position");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, 7);
}

TEST_F(CliTest, GenRoundTrip) {
    const auto p = path("ds.txt");
    ASSERT_EQ(run({"gen", "trace", "disjoint_scan", "--section-count", "4", "--section-length", "3", "--seed", "2",
                   "--out", p})
                  .code,
              0);
    const auto e = load_trace_file(p);
    EXPECT_EQ(e.accesses, (generate({TraceKind::disjoint_scan,
                                     {{"section_count", 4}, {"section_length", 3}, {"seed", 2}}})
                               .accesses));
}

TEST_F(CliTest, PlotData) {
    const auto t = write("t.txt", "0\n4\n2\n");
    const auto r = run({"plotdata", "--trace", t, "--M", "16", "--B", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "index,address,time,cost\n1,0,0,1\n2,4,1,1\n3,2,2,0\n");
    const auto empty = write("empty.txt", "");
    EXPECT_EQ(run({"plotdata", "--trace", empty, "--M", "16", "--B", "4"}).out, "index,address,time,cost\n");
}

TEST_F(CliTest, CheckSuiteJson) {
    const auto r = run({"check", "--suite", "co_jb"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = Json::parse(r.out);
    EXPECT_EQ(j.at("provenance").at("seeds")[0], 7);
    const auto& rep = j.at("results").at("reports")[0];
    EXPECT_EQ(rep.at("check_id"), "co_jb");
    EXPECT_EQ(rep.at("cases_run"), 1600);
}

TEST_F(CliTest, CheckEquivLrReportsItsCases) {
    const auto r = run({"check", "--suite", "equiv_lr", "--format", "text"});
    EXPECT_TRUE(r.code == cli::ok || r.code == cli::check_failed);
    EXPECT_NE(r.out.find("equiv_lr"), std::string::npos);
    const auto slash = r.out.find('/');
    ASSERT_NE(slash, std::string::npos);
    EXPECT_GE(std::stoul(r.out.substr(slash + 1)), 100u);
}

TEST_F(CliTest, Version) {
    const auto r = run({"--version"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find(version), std::string::npos);
}
