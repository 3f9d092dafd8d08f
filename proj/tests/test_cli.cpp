// Drives the raccel executable: exit codes and byte-identical output.
#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

int raccel(const std::string &args) {
  const std::string cmd = std::string(RACCEL_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch() {
  const fs::path d = fs::temp_directory_path() / ("raccel-cli-" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, ExitCodes) {
  const fs::path d = scratch();
  EXPECT_EQ(raccel("list-problems"), 0);
  EXPECT_EQ(raccel(""), 2);
  EXPECT_EQ(raccel("frobnicate"), 2);
  EXPECT_EQ(raccel("run --p -1"), 2);
  EXPECT_EQ(raccel("run --problem torus"), 2);
  EXPECT_EQ(raccel("run --version 3"), 2);
  EXPECT_EQ(raccel("verify nosuch"), 2);
  EXPECT_EQ(raccel("plot"), 2);
  EXPECT_EQ(raccel("plot " + (d / "missing.csv").string()), 3);
  EXPECT_EQ(raccel("run --problem quadratic --algo rgd --h 1 --n 1 --iters 1 --out " + (d / "q.csv").string()), 0);
  EXPECT_EQ(raccel("run --problem quadratic --h 0.5 --out " + (d / "div.csv").string()), 1);
  EXPECT_TRUE(fs::exists(d / "div.csv"));
  EXPECT_EQ(raccel("plot " + (d / "q.csv").string() + " " + (d / "div.csv").string() + " -o " + (d / "p.svg").string()), 0);
  EXPECT_TRUE(fs::exists(d / "p.svg"));
  fs::remove_all(d);
}

TEST(Cli, SeedPrecedence) {
  const fs::path d = scratch();
  std::ofstream(d / "c.ini") << "seed = 1\niters = 50\n";
  const std::string base = "run --config " + (d / "c.ini").string() + " --out ";
  ASSERT_EQ(raccel(base + (d / "file.csv").string()), 0);
  ASSERT_EQ(raccel("run --seed 1 --iters 50 --out " + (d / "flag1.csv").string()), 0);
  ASSERT_EQ(setenv("RIEMANN_ACCEL_SEED", "9", 1), 0);
  ASSERT_EQ(raccel(base + (d / "env.csv").string()), 0);
  ASSERT_EQ(raccel(base + (d / "flag.csv").string() + " --seed 1"), 0);
  unsetenv("RIEMANN_ACCEL_SEED");
  ASSERT_EQ(raccel("run --seed 9 --iters 50 --out " + (d / "flag9.csv").string()), 0);
  EXPECT_EQ(slurp(d / "file.csv"), slurp(d / "flag1.csv"));  // file value used
  EXPECT_EQ(slurp(d / "env.csv"), slurp(d / "flag9.csv"));   // env beats file
  EXPECT_EQ(slurp(d / "flag.csv"), slurp(d / "flag1.csv"));  // flag beats env
  EXPECT_NE(slurp(d / "file.csv"), slurp(d / "env.csv"));
  fs::remove_all(d);
}

TEST(Cli, MultiSectionConfigWritesOneCsvPerRun) {
  const fs::path d = scratch();
  std::ofstream(d / "m.ini") << "iters = 100\n[a]\nout = " << (d / "a.csv").string() << "\n[b]\nalgo = rgd\nout = "
                             << (d / "b.csv").string() << "\n";
  EXPECT_EQ(raccel("run --config " + (d / "m.ini").string()), 0);
  EXPECT_TRUE(fs::exists(d / "a.csv"));
  EXPECT_TRUE(fs::exists(d / "b.csv"));
  EXPECT_EQ(raccel("run --config " + (d / "m.ini").string() + " --out " + (d / "x.csv").string()), 2);
  EXPECT_EQ(raccel("run --config " + (d / "nope.ini").string()), 2);
  fs::remove_all(d);
}
