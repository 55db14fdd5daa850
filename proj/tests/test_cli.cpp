#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Proc {
  int status = -1;
  std::string out;
};

Proc cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "'" TWISTALG_CLI_PATH "' " + args + " 2>&1";
  Proc r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) throw std::runtime_error("popen failed");
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& tag) {
  const fs::path d = fs::temp_directory_path() / ("twistalg_cli_" + tag + "_" + std::to_string(::getpid()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST(Cli, FreefieldWeylRelation) {
  const Proc r = cli("run freefield --param sites=8 --param sym_cap=3 --param max_sites=8 --param full_sites=4 --format csv");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("weyl_commutator(p,q)=ħ: pass"), std::string::npos);
  EXPECT_EQ(r.out.rfind("kind,name,key,value\n", 0), 0u);
}

TEST(Cli, SusyJsonReport) {
  const Proc r = cli("run susy --param N=1");
  ASSERT_EQ(r.status, 0) << r.out;
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("suite"), "susy");
  EXPECT_TRUE(j.at("passed").get<bool>());
  EXPECT_EQ(j.at("config").at("seed"), 1729);
  EXPECT_FALSE(j.contains("timings"));
  bool found = false;
  for (const auto& c : j.at("checks"))
    if (c.at("name") == "twist_image dim=2") {
      found = true;
      EXPECT_EQ(c.at("verdict"), "pass");
    }
  EXPECT_TRUE(found);
  bool in_summary = false;
  for (const auto& s : j.at("summary")) in_summary = in_summary || s == "twist_image dim=2: pass";
  EXPECT_TRUE(in_summary);
}

TEST(Cli, UsageErrors) {
  Proc r = cli("run nosuch");
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("unknown suite 'nosuch'"), std::string::npos) << r.out;
  r = cli("run bf --param max_n=9");
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("max_n"), std::string::npos) << r.out;
  r = cli("run bf --param g=so3");
  EXPECT_EQ(r.status, 2);
  r = cli("run susy --param bogus=1");
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("bogus"), std::string::npos);
  r = cli("run susy --param N");
  EXPECT_EQ(r.status, 2);
  r = cli("run susy --format xml");
  EXPECT_EQ(r.status, 2);
  r = cli("frobnicate");
  EXPECT_EQ(r.status, 2);
}

TEST(Cli, ListSchema) {
  const Proc r = cli("list --format json");
  ASSERT_EQ(r.status, 0);
  const json j = json::parse(r.out);
  ASSERT_TRUE(j.is_array());
  std::vector<std::string> names;
  for (const auto& s : j) names.push_back(s.at("name"));
  EXPECT_EQ(names, (std::vector<std::string>{"susy", "freefield", "bf", "vertex", "koszul", "all"}));
  EXPECT_EQ(json::parse(j.dump()), j);
  EXPECT_EQ(cli("list --format json").out, r.out);
  const Proc text = cli("list");
  EXPECT_EQ(text.status, 0);
  EXPECT_NE(text.out.find("sym_cap=4"), std::string::npos);
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const fs::path d = scratch("config");
  {
    std::ofstream c(d / "cfg.json");
    c << R"({"suite": "susy", "format": "csv", "seed": 7, "params": {"N": 1, "samples": "3"}})";
  }
  Proc r = cli("run --config '" + (d / "cfg.json").string() + "'");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("config,param,N,1\n"), std::string::npos);
  EXPECT_NE(r.out.find("config,seed,,7\n"), std::string::npos);
  r = cli("run --config '" + (d / "cfg.json").string() + "' --param N=2 --seed 11");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("config,param,N,2\n"), std::string::npos);
  EXPECT_NE(r.out.find("config,param,samples,3\n"), std::string::npos);
  EXPECT_NE(r.out.find("config,seed,,11\n"), std::string::npos);
  r = cli("run --config '" + (d / "missing.json").string() + "'");
  EXPECT_EQ(r.status, 2);
  fs::remove_all(d);
}

TEST(Cli, OutputDirectoryFromEnvironment) {
  const fs::path d = scratch("outdir");
  const Proc r = cli("run koszul --param weight_cap=2 --param tensor_cap=2 --format csv", "TWISTALG_OUT_DIR='" + d.string() + "'");
  ASSERT_EQ(r.status, 0) << r.out;
  const fs::path f = d / "koszul.csv";
  ASSERT_TRUE(fs::exists(f));
  EXPECT_NE(r.out.find("report: " + f.string()), std::string::npos);
  EXPECT_NE(r.out.find(": pass"), std::string::npos);
  EXPECT_EQ(slurp(f).rfind("kind,name,key,value\n", 0), 0u);

  const fs::path explicit_out = d / "nested" / "r.json";
  const Proc r2 = cli("run susy --param N=1 --out '" + explicit_out.string() + "'", "TWISTALG_OUT_DIR='" + d.string() + "'");
  ASSERT_EQ(r2.status, 0);
  EXPECT_TRUE(fs::exists(explicit_out));
  EXPECT_FALSE(fs::exists(d / "susy.json"));
  EXPECT_TRUE(json::parse(slurp(explicit_out)).at("passed").get<bool>());
  fs::remove_all(d);
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
  for (const std::string args : {"run susy --param N=2", "run susy --param N=2 --format csv",
                                 "run koszul --param weight_cap=3 --param tensor_cap=3 --seed 5"}) {
    const Proc a = cli(args), b = cli(args);
    EXPECT_EQ(a.status, 0);
    EXPECT_EQ(a.out, b.out) << args;
  }
}

TEST(Cli, TimingsOnlyOnRequest) {
  const Proc r = cli("run susy --param N=1 --timings");
  ASSERT_EQ(r.status, 0);
  const json j = json::parse(r.out);
  ASSERT_TRUE(j.contains("timings"));
  EXPECT_FALSE(j.at("timings").empty());
  const Proc c = cli("run susy --param N=1 --timings --format csv");
  EXPECT_NE(c.out.find("\ntiming,"), std::string::npos);
}
