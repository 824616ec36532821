#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "minkprobe/distances.hpp"
#include "minkprobe/io.hpp"
#include "minkprobe/hausdorff.hpp"
#include "minkprobe/minkowski.hpp"
#include "minkprobe/shapes.hpp"

using namespace minkprobe;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("minkprobe_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }

  fs::path path(const std::string& name) const { return dir_ / name; }

  void write(const std::string& name, const std::string& text) const { write_text_file(path(name), text); }

  Result run(const std::string& args) const {
    const std::string cmd = std::string(MINKPROBE_CLI_PATH) + " " + args + " > " + path("stdout").string() +
                            " 2> " + path("stderr").string();
    const int status = std::system(cmd.c_str());
    Result r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = read_text_file(path("stdout"));
    r.err = read_text_file(path("stderr"));
    return r;
  }

  fs::path dir_;
};

const char* kSquare = R"({"dim":2,"atoms":[{"n":[1,0],"w":1},{"n":[0,1],"w":1},{"n":[-1,0],"w":1},{"n":[0,-1],"w":1}]})";

}  // namespace

TEST_F(Cli, ReconstructSquare) {
  write("sq.json", kSquare);
  const auto r = run("reconstruct --measure " + path("sq.json").string() + " --out " + path("body.json").string() +
                     " --report " + path("report.json").string());
  ASSERT_EQ(r.code, 0) << r.err;
  const Polytope body = polytope_from_json(read_json_file(path("body.json")));
  EXPECT_LE(min_translate_hausdorff(body, unit_square()).value, 1e-12);
  const auto report = read_json_file(path("report.json"));
  for (const char* key : {"body", "residual", "iterations", "converged"}) EXPECT_TRUE(report.contains(key)) << key;

  // thin shell: same bytes as the library call
  const auto direct = reconstruct(measure_from_json(json::parse(kSquare)));
  write_json_file(path("direct.json"), polytope_to_json(direct.body));
  EXPECT_EQ(read_text_file(path("direct.json")), read_text_file(path("body.json")));
}

TEST_F(Cli, ReconstructNotZeroMean) {
  write("two.json", R"({"dim":2,"atoms":[{"n":[1,0],"w":1},{"n":[0,1],"w":1}]})");
  const auto r = run("reconstruct --measure " + path("two.json").string() + " --out " + path("b.json").string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("NotZeroMean"), std::string::npos);
}

TEST_F(Cli, DistanceTotalVariation) {
  write("a.json", R"({"dim":2,"atoms":[{"n":[1,0],"w":1}]})");
  write("b.json", R"({"dim":2,"atoms":[{"n":[0,1],"w":1}]})");
  auto r = run("distance --a " + path("a.json").string() + " --b " + path("b.json").string() +
               " --which tv --out " + path("r.json").string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "1\n");
  EXPECT_DOUBLE_EQ(read_json_file(path("r.json"))["d_tv"].get<double>(), 1.0);

  r = run("distance --a " + path("a.json").string() + " --b " + path("b.json").string() + " --which cd --out " +
          path("c.json").string());
  ASSERT_EQ(r.code, 0) << r.err;
  const auto c = read_json_file(path("c.json"))["d_c"];
  EXPECT_LE(c["lower"].get<double>(), c["upper"].get<double>());
  EXPECT_TRUE(c["witness"].is_string());
}

TEST_F(Cli, SampleProjectAndIdempotence) {
  auto r = run("sample --body cube --n 50 --seed 3 --noise 0.05 --out " + path("n1.json").string());
  ASSERT_EQ(r.code, 0) << r.err;
  r = run("sample --body cube --n 50 --seed 3 --noise 0.05 --out " + path("n2.json").string());
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(read_text_file(path("n1.json")), read_text_file(path("n2.json")));
  int dim = 0;
  const auto normals = normals_from_json(read_json_file(path("n1.json")), dim);
  EXPECT_EQ(dim, 3);
  EXPECT_EQ(normals, sample_normals(unit_cube(), 50, 3, 0.05));

  write_json_file(path("m.json"), measure_to_json(empirical_measure(3, normals)));
  r = run("project --measure " + path("m.json").string() + " --mode radial --out " + path("p.json").string());
  ASSERT_EQ(r.code, 0) << r.err;
  const auto p = measure_from_json(read_json_file(path("p.json")));
  EXPECT_LE(p.mean().norm(), 1e-12);

  // A normals file is read as its empirical measure.
  r = run("project --measure " + path("n1.json").string() + " --mode radial --out " + path("q.json").string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_text_file(path("q.json")), read_text_file(path("p.json")));
}

TEST_F(Cli, HausdorffPrintsValue) {
  write_json_file(path("k.json"), polytope_to_json(centered_square(1.0)));
  write_json_file(path("l.json"), polytope_to_json(centered_square(1.1).translated(vec2(0.05, 0))));
  auto r = run("hausdorff --a " + path("k.json").string() + " --b " + path("l.json").string() + " --min-translate");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(std::stod(r.out), 0.1 * std::sqrt(2.0), 1e-4);
  r = run("hausdorff --a square --b square");
  EXPECT_EQ(r.out, "0\n");
}

TEST_F(Cli, ExperimentAndPlot) {
  write("cfg.toml", "body = \"square\"\nN_schedule = [10, 100]\ntrials = 3\nseed = 1\nout_dir = \"out\"\n");
  auto r = run("experiment --config " + path("cfg.toml").string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("N=10 "), std::string::npos);
  EXPECT_NE(r.err.find("N=100 "), std::string::npos);
  EXPECT_TRUE(fs::exists(path("out/results.csv")));
  EXPECT_TRUE(fs::exists(path("out/manifest.json")));

  r = run("plot --csv " + path("out/results.csv").string() + " --kind scaling --out " + path("fig.svg").string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_text_file(path("fig.svg")).rfind("<svg", 0), 0u);

  write("empty.csv", "");
  r = run("plot --csv " + path("empty.csv").string() + " --kind tail --out " + path("e.svg").string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("MalformedCSV"), std::string::npos);
}

TEST_F(Cli, ScalingNeedsThreeNValues) {
  write("cfg.toml",
        "body = \"square\"\nN_schedule = [100]\ntrials = 30\nseed = 1\nout_dir = \"out\"\nstudy = \"scaling\"\n");
  const auto r = run("experiment --config " + path("cfg.toml").string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("InsufficientTrials"), std::string::npos);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("reconstruct --measure " + path("missing.json").string()).code, 2);
  EXPECT_EQ(run("distance --a x --b y --which l2").code, 2);
  EXPECT_EQ(run("sample --body sphere --n 3 --seed 1 --out x.json").code, 2);
  EXPECT_EQ(run("hausdorff --a square --b square --bogus").code, 2);
}

TEST_F(Cli, MalformedJsonIsDomainError) {
  write("bad.json", "{not json");
  const auto r = run("reconstruct --measure " + path("bad.json").string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("MalformedInput"), std::string::npos);
}
