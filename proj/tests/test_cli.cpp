#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "smurf/coefficient_file.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const fs::path capture = fs::temp_directory_path() / "smurf_cli_out.txt";
  const std::string cmd =
      std::string(SMURF_CLI_PATH) + " " + args + " >" + capture.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  std::ifstream in(capture);
  std::stringstream buf;
  buf << in.rdbuf();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, buf.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("smurf_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, SteadyVector) {
  const auto r = run("steady --n-states 4 --px 0.7");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("3,0.5913793103"), std::string::npos);
  const auto u = run("steady --n-states 5 --px 0.5");
  EXPECT_NE(u.out.find("4,0.2\n"), std::string::npos);
}

TEST_F(Cli, SteadyCurves) {
  const auto r = run("steady --n-states 2 --curves --points 5");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("px,P0,P1\n"), std::string::npos);
  EXPECT_NE(r.out.find("0.25,0.75,0.25\n"), std::string::npos);
}

TEST_F(Cli, SynthesizeConstantExpression) {
  ASSERT_EQ(run("synthesize --expr 0.5 --arity 2 --n-states 4 --out " + path("c.json")).code, 0);
  const auto t = smurf::read_coefficients(path("c.json"));
  ASSERT_EQ(t.size(), 16u);
  for (double w : t.weights()) EXPECT_NEAR(w, 0.5, 1e-6);
}

TEST_F(Cli, SynthesizeEvalSweepShow) {
  ASSERT_EQ(run("synthesize --target softmax2_c1 --n-states 3 --out " + path("s.json")).code, 0);
  ASSERT_EQ(run("eval --coeffs " + path("s.json") +
                " --lengths 16,64 --eval-points 5 --seed 2 --out " + path("e.csv"))
                .code,
            0);
  std::ifstream csv(path("e.csv"));
  std::string header, columns;
  std::getline(csv, header);
  std::getline(csv, columns);
  EXPECT_EQ(header.rfind("# metric:", 0), 0u);
  EXPECT_NE(columns.find("abs_error_fit"), std::string::npos);

  const auto a = run("eval --coeffs " + path("s.json") + " --lengths 32 --eval-points 3");
  const auto b = run("eval --coeffs " + path("s.json") + " --lengths 32 --eval-points 3");
  EXPECT_EQ(a.out, b.out);

  const auto sw = run("sweep --target softmax2_c1 --n-states 2,3 --lengths 8,32 --eval-points 3");
  ASSERT_EQ(sw.code, 0);
  EXPECT_NE(sw.out.find("\n2,8,"), std::string::npos);
  EXPECT_NE(sw.out.find("\n3,32,"), std::string::npos);

  const auto sh = run("show " + path("s.json"));
  ASSERT_EQ(sh.code, 0);
  EXPECT_NE(sh.out.find("softmax2_c1"), std::string::npos);
}

TEST_F(Cli, ConfigFileWithOverride) {
  {
    std::ofstream cfg(path("run.json"));
    cfg << R"({"target": "tanh_act", "n_states": 4, "out": ")" << path("from_file.json")
        << "\"}";
  }
  ASSERT_EQ(run("synthesize --config " + path("run.json") + " --n-states 6").code, 0);
  EXPECT_EQ(smurf::read_coefficients(path("from_file.json")).n_states(), 6);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("synthesize --target nope").code, 2);
  EXPECT_EQ(run("synthesize --target euclidean2 --n-states 1").code, 2);
  EXPECT_EQ(run("synthesize --target euclidean2 --n-states 100").code, 2);
  EXPECT_EQ(run("synthesize --expr 'x1 +' --arity 1").code, 2);
  EXPECT_EQ(run("bogus").code, 2);
  EXPECT_EQ(run("show " + path("missing.json")).code, 4);
  EXPECT_EQ(run("synthesize --target euclidean2 --out /nonexistent/dir/t.json").code, 4);
  {
    std::ofstream bad(path("bad.json"));
    bad << "{\"format_version\": 1}";
  }
  EXPECT_EQ(run("eval --coeffs " + path("bad.json")).code, 4);
  ASSERT_EQ(run("synthesize --target euclidean2 --out " + path("e.json")).code, 0);
  EXPECT_EQ(run("eval --coeffs " + path("e.json") + " --target tanh_act").code, 2);
  EXPECT_EQ(run("sweep --target euclidean2 --lengths 64,16").code, 2);
}
