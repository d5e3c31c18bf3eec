#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "config.hpp"

namespace fs = std::filesystem;
using hkink::cli::ConfigError;
using hkink::cli::parse_config;

namespace {

const char* kSmall = R"({
  "eigen": {"intervals_r": 16, "intervals_t": 8},
  "schedule": [2, 4],
  "newton": {"cells_r": 12, "cells_theta": 24, "cells_t": 24},
  "farfield": {"a_values": [0, 0.6, 1], "rmax": 20, "step": 0.01},
  "planar": {"directions": 16, "pairs": 128}
})";

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("hkink_cli_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

int run(const std::string& args) {
  const std::string cmd = std::string(HKINK_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string message(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Config, Defaults) {
  const auto c = parse_config("{}");
  EXPECT_EQ(c.n, 1);
  EXPECT_EQ(c.nonlinearity, "cubic");
  EXPECT_EQ(c.schedule, (std::vector<double>{2.0, 4.0, 8.0}));
  EXPECT_EQ(c.eigen_grid.intervals_r, 64);
  EXPECT_EQ(c.eigen_grid.intervals_t, 32);
}

TEST(Config, Errors) {
  EXPECT_NE(message("{\n  \"n\": 1,\n  \"schedule\": [2, \n}").find("line 4"), std::string::npos);
  EXPECT_NE(message(R"({"eigen": {"interval_r": 8}})").find("eigen.interval_r"), std::string::npos);
  EXPECT_NE(message(R"({"n": "one"})").find("'n'"), std::string::npos);
  EXPECT_NE(message(R"({"schedule": [4, 2]})").find("schedule"), std::string::npos);
  EXPECT_NE(message(R"({"nonlinearity": "quartic"})").find("nonlinearity"), std::string::npos);
  EXPECT_NE(message(R"({"solver": {"method": "lu"}})").find("solver.method"), std::string::npos);
  EXPECT_NE(message(R"({"farfield": {"a_values": [1.5]}})").find("farfield.a_values"), std::string::npos);
  EXPECT_EQ(message(kSmall), "");
}

TEST(Cli, ExitCodes) {
  const fs::path dir = scratch("codes");
  write(dir / "good.json", kSmall);
  write(dir / "bad.json", "{\"n\": 0}");
  write(dir / "broken.json", "{");
  EXPECT_EQ(run("eig --dry-run --config " + (dir / "good.json").string()), 0);
  EXPECT_EQ(run("eig --config " + (dir / "bad.json").string()), 2);
  EXPECT_EQ(run("eig --config " + (dir / "broken.json").string()), 2);
  EXPECT_EQ(run("eig --config " + (dir / "missing.json").string()), 2);
  EXPECT_EQ(run("nosuchcommand"), 2);
  EXPECT_EQ(run("construct --config " + (dir / "good.json").string() + " --out " + (dir / "empty").string()), 4);
  fs::remove_all(dir);
}

TEST(Cli, VerifyCatchesCorruptedField) {
  const fs::path dir = scratch("fault");
  write(dir / "cfg.json", kSmall);
  const std::string common = " --config " + (dir / "cfg.json").string() + " --out " + (dir / "out").string();
  ASSERT_EQ(run("eig" + common), 0);
  ASSERT_EQ(run("construct" + common), 0);
  ASSERT_EQ(run("verify" + common), 0);

  // flip the sign of one value above the seam
  const fs::path field = dir / "out" / "construct" / "u_full.csv";
  std::ifstream in(field);
  std::stringstream ss;
  ss << in.rdbuf();
  in.close();
  std::string text = ss.str();
  std::size_t pos = text.size();
  for (int k = 0; k < 40; ++k) pos = text.rfind('\n', pos - 1);
  const std::size_t comma = text.rfind(',', text.find('\n', pos + 1));
  text.insert(comma + 1, "-");
  write(field, text);
  EXPECT_EQ(run("verify" + common), 5);

  // a construct with a stale eigenpair is refused
  write(dir / "out" / "eig" / "eigenpair.json", "{}");
  EXPECT_EQ(run("construct" + common), 4);
  fs::remove_all(dir);
}
