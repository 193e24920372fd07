#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "ihc/cli.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result ihc_run(std::vector<std::string> args) {
    args.insert(args.begin(), "ihc");
    std::ostringstream out, err;
    const int code = ihc::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(IHC_SAMPLES_DIR) + "/" + name; }

}  // namespace

TEST(Cli, HomologyJsonIsExact) {
    auto r = ihc_run({"homology", "join_sphere(0,torus)", "--theory", "tame", "--perversity", "zero", "--coeff", "z",
                      "--format", "json"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "{\"0\":{\"betti\":1},\"1\":{\"betti\":2},\"2\":{\"betti\":0},\"3\":{\"betti\":1}}\n");
}

TEST(Cli, HomologyCsvAndTorsion) {
    auto r = ihc_run({"homology", "rp2", "--theory", "king", "--perversity", "zero", "--format", "csv"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "degree,betti,torsion\n0,1,\n1,0,2\n2,0,\n");
}

TEST(Cli, VerifyConeSucceeds) {
    auto r = ihc_run({"verify", "cone", "--base", "torus", "--pv", "1", "--coeff", "z"});
    EXPECT_EQ(r.code, 0) << r.err << r.out;
    EXPECT_NE(r.out.find("PASS  cone_blowup"), std::string::npos);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, SampleFilesLoad) {
    auto r = ihc_run({"validate", sample("hexagon_cone.json"), "--format", "json"});
    EXPECT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["simplices"], 25);
    EXPECT_EQ(j["pseudomanifold"]["closed"], false);
    auto b = ihc_run({"blowup", sample("suspended_torus.json"), "--perversity", "top", "--format", "json"});
    EXPECT_EQ(b.out, "{\"0\":{\"betti\":1},\"1\":{\"betti\":2},\"2\":{\"betti\":0},\"3\":{\"betti\":1}}\n");
}

TEST(Cli, InputErrorsExitOne) {
    EXPECT_EQ(ihc_run({"validate", sample("bad_level.json")}).code, 1);
    EXPECT_EQ(ihc_run({"validate", "/nonexistent/space.json"}).code, 1);
    EXPECT_EQ(ihc_run({"homology", "klein"}).code, 1);
    EXPECT_EQ(ihc_run({"homology", "torus", "--coeff", "zp:4"}).code, 1);
    EXPECT_EQ(ihc_run({"homology", "torus", "--perversity", "middle"}).code, 1);
    EXPECT_EQ(ihc_run({"bogus"}).code, 1);
    EXPECT_EQ(ihc_run({}).code, 1);
    auto r = ihc_run({"validate", sample("bad_level.json")});
    EXPECT_NE(r.err.find("BadLevel"), std::string::npos) << r.err;
}

TEST(Cli, PreconditionErrorsExitTwo) {
    auto r = ihc_run({"verify", "poincare", "--space", "cone(rp2)", "--coeff", "z"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("zp:2"), std::string::npos);
    EXPECT_EQ(ihc_run({"verify", "poincare", "--space", "cone(rp2)", "--coeff", "zp:2"}).code, 0);
    EXPECT_EQ(ihc_run({"verify", "complementary", "--space", "torus", "--coeff", "z"}).code, 2);
}

TEST(Cli, OutputFileMatchesStdout) {
    const auto path = std::filesystem::temp_directory_path() / "ihc_cli_out.json";
    std::vector<std::string> args{"homology", "cone(torus)", "--theory", "cochain", "--format", "json"};
    auto direct = ihc_run(args);
    args.push_back("--out");
    args.push_back(path.string());
    auto filed = ihc_run(args);
    EXPECT_EQ(filed.code, 0);
    EXPECT_TRUE(filed.out.empty());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), direct.out);
    std::filesystem::remove(path);
}

TEST(Cli, OutputIsIndependentOfThreadCount) {
    const std::vector<std::string> base{"verify", "cone", "--base", "torus", "--pv", "-1", "0", "1", "2", "--format", "json"};
    auto one = base, four = base;
    one.insert(one.end(), {"--threads", "1"});
    four.insert(four.end(), {"--threads", "4"});
    auto a = ihc_run(one), b = ihc_run(four);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(nlohmann::json::parse(a.out).size(), 16u);
}

TEST(Cli, ParallelMapKeepsOrderAndRethrows) {
    std::vector<std::function<int()>> jobs;
    for (int i = 0; i < 20; ++i) jobs.push_back([i] { return i * i; });
    auto out = ihc::cli::parallel_map(jobs, 4);
    for (int i = 0; i < 20; ++i) EXPECT_EQ(out[static_cast<std::size_t>(i)], i * i);
    jobs.push_back([]() -> int { throw ihc::Error(ihc::ErrorKind::BadParam, "boom"); });
    EXPECT_THROW(ihc::cli::parallel_map(jobs, 3), ihc::Error);
}
