#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  const char* p = std::getenv("HJHOM_CLI");
  REQUIRE_MESSAGE(p != nullptr, "HJHOM_CLI must point at the CLI binary");
  return p;
}

int run(const std::string& args) {
  const int rc = std::system((cli_path() + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("hjhom_cli_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("exit codes: config errors and bad usage") {
  // condition min(lambda, mu) >= 16/eta violated
  CHECK(run("verify --set env.lambda=20 --set env.mu=20") == 2);
  // malformed override
  CHECK(run("prob --set not_a_pair") == 2);
  // unknown subcommand
  CHECK(run("frobnicate") == 2);
  // missing config file is an I/O failure
  CHECK(run("prob --config /no/such/file.cfg") == 3);
  // unwritable output directory
  CHECK(run("prob --set env.lambda=1 --set env.mu=1 --set prob.trials=10"
            " --out /no/such/dir") == 3);
}

TEST_CASE("prob command: determinism and config-file equivalence") {
  TempDir a, b, c;
  const std::string common =
      " --set env.lambda=1 --set env.mu=1 --set env.seed=5"
      " --set prob.k=2 --set prob.trials=500";
  CHECK(run("prob --out " + a.path.string() + common) == 0);
  CHECK(run("prob --out " + b.path.string() + common) == 0);
  const std::string csv_a = slurp(a.path / "prob.csv");
  CHECK(csv_a == slurp(b.path / "prob.csv"));  // byte identical
  CHECK(csv_a.rfind("# config_hash=", 0) == 0);

  // the same settings via a config file give the same output
  const fs::path cfg = c.path / "run.cfg";
  {
    std::ofstream out(cfg);
    out << "# probability experiment\n"
           "env.lambda = 1\n"
           "env.mu = 1\n"
           "env.seed = 5\n"
           "prob.k = 2\n"
           "prob.trials = 500\n";
  }
  CHECK(run("prob --out " + c.path.string() + " --config " + cfg.string()) == 0);
  CHECK(slurp(c.path / "prob.csv") == csv_a);
}

TEST_CASE("prob command: degenerate search radius writes a zero row") {
  TempDir d;
  CHECK(run("prob --out " + d.path.string() +
            " --set env.lambda=1 --set env.mu=1 --set prob.delta=0") == 0);
  const std::string csv = slurp(d.path / "prob.csv");
  CHECK(csv.find(",0,0,0,0\n") != std::string::npos);
}

TEST_CASE("env command: artifacts and determinism") {
  TempDir a, b;
  const std::string common =
      " --set env.seed=9 --set env.k_max=2 --set env.window_radius=40";
  CHECK(run("env --out " + a.path.string() + common) == 0);
  CHECK(run("env --out " + b.path.string() + common) == 0);
  for (const char* name : {"rectangles.csv", "c_heatmap.pgm", "env_metadata.txt"}) {
    CHECK(fs::exists(a.path / name));
    CHECK(slurp(a.path / name) == slurp(b.path / name));
  }
  const std::string pgm = slurp(a.path / "c_heatmap.pgm");
  CHECK(pgm.rfind("P5\n", 0) == 0);
  const std::string csv = slurp(a.path / "rectangles.csv");
  CHECK(csv.find("orientation,k,l,m,length,width,complete\n") != std::string::npos);
}

TEST_CASE("assumptions command passes on a small environment") {
  CHECK(run("assumptions --set env.k_max=1 --set env.window_radius=30") == 0);
}

TEST_CASE("verify command: small stratified run passes") {
  TempDir d;
  CHECK(run("verify --out " + d.path.string() +
            " --set verify.k=1 --set verify.samples_per_case=25") == 0);
  const std::string csv = slurp(d.path / "verify_supersolution.csv");
  CHECK(csv.find("t,x1,x2,case,residual,case_bound\n") != std::string::npos);
  CHECK(fs::exists(d.path / "verify_subsolution.csv"));
}

TEST_CASE("demo-oscillation: empty schedule writes an empty table") {
  TempDir d;
  CHECK(run("demo-oscillation --out " + d.path.string()) == 0);
  const std::string csv = slurp(d.path / "oscillation.csv");
  CHECK(csv.find("orientation,k,T,u_T,u_over_T\n") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);  // comment + header only
}
