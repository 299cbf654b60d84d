#include "qrcut/rational.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

struct CliRun {
    int status = -1;
    std::string out;
};

CliRun run(const std::string& args) {
    const std::string cmd = std::string(QRCUT_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed");
    CliRun r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

Json run_json(const std::string& args, int expected_status = 0) {
    const CliRun r = run(args);
    EXPECT_EQ(r.status, expected_status) << args << "\n" << r.out;
    return Json::parse(r.out);
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir = fs::temp_directory_path() / ("qrcut_cli_" + std::to_string(getpid()) + "_" +
                                           ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
    std::string path(const std::string& name) const { return (dir / name).string(); }
    fs::path dir;
};

}  // namespace

TEST_F(Cli, RankExamples) {
    auto j = run_json("rank --t 8 --k 2 --v 4,4");
    EXPECT_EQ(j["computed_rank"], 21);
    EXPECT_EQ(j["predicted_rank"], "21");
    EXPECT_EQ(j["match"], true);
    EXPECT_EQ(j["config"]["v"], Json::array({4, 4}));
    j = run_json("rank --t 9 --k 2 --v 4,5");
    EXPECT_EQ(j["computed_rank"], 36);
    EXPECT_EQ(j["match"], true);
    j = run_json("rank --t 5 --k 2 --v 1,4");
    EXPECT_TRUE(j["predicted_rank"].is_null());
    EXPECT_EQ(j["regime"], "degenerate");
    EXPECT_EQ(run("rank --t 5 --k 2 --v 1,3").status, 2);
    EXPECT_EQ(run("rank --t 6 --k 3 --v 3,3").status, 2);
}

TEST_F(Cli, SpectrumExamples) {
    auto j = run_json("spectrum --t 12 --k 3");
    EXPECT_EQ(j["lambda1_zero"], true);
    EXPECT_EQ(j["others_positive"], true);
    EXPECT_EQ(j["implied_rank"], "209");
    j = run_json("spectrum --t 8 --k 2 --check-gram");
    std::vector<std::string> mult;
    for (const auto& row : j["eigenvalues"]) mult.push_back(row["multiplicity"]);
    EXPECT_EQ(mult, (std::vector<std::string>{"1", "7", "20"}));
    EXPECT_EQ(j["multiplicity_sum"], "28");
    EXPECT_EQ(j["gram_decomposition_exact"], true);
    EXPECT_EQ(run("spectrum --t 7 --k 3").status, 2);
}

TEST_F(Cli, GoodFunctionExamples) {
    auto j = run_json("goodfn --j 2 --k 3 --brute");
    EXPECT_EQ(j["closed_form"], "3");
    EXPECT_EQ(j["brute_force"], 3);
    EXPECT_EQ(j["equal"], true);
    EXPECT_EQ(run_json("goodfn --j 1 --k 5")["closed_form"], "0");
    EXPECT_EQ(run_json("goodfn --j 0 --k 4")["closed_form"], "1");
    EXPECT_EQ(run("goodfn --j 8 --k 8 --brute").status, 2);
}

TEST_F(Cli, SampleIsDeterministic) {
    auto j = run_json("sample ckp --n 100 --k 2 --p 1/4 --seed 7 --out " + path("a.hg"));
    EXPECT_EQ(j["density_inside_b"], "0");
    run_json("sample ckp --n 100 --k 2 --p 1/4 --seed 7 --out " + path("b.hg"));
    EXPECT_EQ(slurp(path("a.hg")), slurp(path("b.hg")));
    run_json("sample ckp --n 100 --k 2 --p 1/4 --seed 8 --out " + path("c.hg"));
    EXPECT_NE(slurp(path("a.hg")), slurp(path("c.hg")));
    j = run_json("sample gnp --n 40 --k 3 --p 0 --seed 1 --out " + path("e.hg"));
    EXPECT_EQ(j["edges"], 0);
    EXPECT_EQ(slurp(path("e.hg")), "40 3 indicator\n");
    EXPECT_EQ(run("sample ckp --n 11 --k 2 --p 1/4").status, 2);
}

TEST_F(Cli, SameFlagsSameReport) {
    const std::string args = "verify identity --r 4 --k 3 --samples 20 --seed 9";
    EXPECT_EQ(run(args).out, run(args).out);
}

TEST_F(Cli, VerifySuites) {
    auto j = run_json("verify identity --r 5 --k 3 --samples 100");
    EXPECT_EQ(j["samples_exact"], 100);
    EXPECT_EQ(j["monomials"]["higher_order_coefficients_zero"], true);
    EXPECT_EQ(run("verify identity --r 5 --k 3 --p 0.25").status, 2);
    j = run_json("verify structure --t 8 --k 2 --p 1/4");
    EXPECT_EQ(j["affine_point_rank"], 8);
    EXPECT_EQ(j["nullspace_in_span"], true);
    EXPECT_EQ(run("verify nonsense").status, 2);
    EXPECT_EQ(run("verify cuts").status, 2);
}

TEST_F(Cli, PlantedSeparation) {
    run_json("sample ckp --n 60 --k 3 --p 3/10 --seed 3 --out " + path("c.hg") + " --planted-out " + path("c.set"));
    auto cuts = run_json("verify cuts --in " + path("c.hg") + " --alpha 1/3,1/3,1/3 --trials 20 --p 3/10 --planted " + path("c.set"));
    EXPECT_EQ(cuts["pass"], true);
    EXPECT_EQ(cuts["statistics"]["samples_drawn"], 20);
    auto d1 = run_json("verify d1 --in " + path("c.hg") + " --p 3/10 --planted " + path("c.set"), 1);
    EXPECT_EQ(d1["pass"], false);
    EXPECT_GT(d1["statistics"]["max_abs_z"].get<double>(), 10);
}

TEST_F(Cli, SolveWritesVectors) {
    auto j = run_json("solve --t 8 --k 2 --p 1/4 --out " + path("s.vec"));
    EXPECT_EQ(j["nullity"], 7);
    EXPECT_EQ(j["system_rank"], 21);
    const std::string text = slurp(path("s.vec"));
    EXPECT_EQ(text.rfind("8 2 1/4\n", 0), 0u);
}

TEST_F(Cli, CutNormQuotientDensity) {
    {
        std::ofstream(path("k4.g")) << "4\n1 1 1\n1 1\n1\n";
        std::ofstream(path("e4.g")) << "4\n0 0 0\n0 0\n0\n";
    }
    auto j = run_json("cutnorm " + path("k4.g") + " " + path("e4.g"));
    EXPECT_EQ(j["value"], "3/4");
    EXPECT_EQ(j["exact"], true);
    EXPECT_EQ(run_json("cutnorm " + path("k4.g") + " " + path("k4.g"))["value"], "0");
    j = run_json("quotient --in " + path("k4.g") + " --t 2 --out " + path("q.g"));
    EXPECT_EQ(slurp(path("q.g")), "4\n0 1 1\n1 1\n0\n");
    EXPECT_EQ(j["cut_norm_to_quotient"], "1/4");  // the two intra-part edges, both orders, over 4^2
    EXPECT_EQ(run("quotient --in " + path("k4.g") + " --t 3").status, 2);
    EXPECT_EQ(run("cutnorm " + path("k4.g") + " " + path("missing.g")).status, 2);

    // exact planted weights quotient to a solution of the balanced system
    {
        std::ofstream f(path("x.hg"));
        f << "8 2 fractional\n";
        // weights 2pj/k with A = {1..4}, p = 1/4: 1/2 inside A, 1/4 across, 0 inside B
        int r = 0;
        for (int b = 2; b <= 8; ++b)
            for (int a = 1; a < b; ++a, ++r) {
                const int j = (a <= 4) + (b <= 4);
                if (j) f << r << ' ' << (j == 2 ? "1/2" : "1/4") << '\n';
            }
    }
    j = run_json("density --in " + path("x.hg") + " --t 4 --p 1/4 --out " + path("d.vec"));
    EXPECT_EQ(j["solves_balanced_system"], true);
    EXPECT_EQ(slurp(path("d.vec")), "4 2 1/4\n0 1/2\n1 1/4\n2 1/4\n3 1/4\n4 1/4\n5 0\n");
}

TEST_F(Cli, JsonRoundTrip) {
    for (const std::string args : {"rank --t 6 --k 2 --v 3,3", "spectrum --t 12 --k 3", "verify structure --t 6 --k 2 --p 1/3"}) {
        const CliRun r = run(args);
        const Json j = Json::parse(r.out);
        EXPECT_EQ(Json::parse(j.dump(2)), j);
        EXPECT_EQ(j.dump(2) + "\n", r.out);
    }
    // exact values come back as the same rationals
    const Json s = run_json("spectrum --t 12 --k 3");
    for (const auto& row : s["eigenvalues"]) {
        const auto q = qrcut::parse_rational(row["lambda"].get<std::string>());
        EXPECT_EQ(qrcut::to_string(q), row["lambda"].get<std::string>());
    }
}

TEST_F(Cli, OtherFormats) {
    const CliRun csv = run("rank --t 6 --k 2 --v 3,3 --format csv");
    EXPECT_EQ(csv.status, 0);
    EXPECT_EQ(csv.out.rfind("key,value\n", 0), 0u);
    EXPECT_NE(csv.out.find("computed_rank,10\n"), std::string::npos);
    const CliRun text = run("rank --t 6 --k 2 --v 3,3 --format text");
    EXPECT_NE(text.out.find("computed_rank: 10\n"), std::string::npos);
    EXPECT_NE(text.out.find("config.v[1]: 3\n"), std::string::npos);
    EXPECT_EQ(run("rank --t 6 --k 2 --v 3,3 --format xml").status, 2);
}
