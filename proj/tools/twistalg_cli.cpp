// twistalg: batch runner for the verification suites.
//
//   twistalg run <suite> [--param k=v]... [--format json|csv] [--out PATH]
//                [--seed N] [--config FILE] [--timings]
//   twistalg list [--format text|json]
//
// Exit status: 0 all checks pass, 1 some check failed, 2 usage or parameter error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <twistalg/suites.hpp>

namespace {

using nlohmann::json;

struct RunOptions {
  std::string suite;
  std::vector<std::string> params;
  std::string format;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string config;
  bool timings = false;
};

std::map<std::string, std::string> parse_params(const std::vector<std::string>& kvs) {
  std::map<std::string, std::string> out;
  for (const auto& kv : kvs) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw std::invalid_argument("--param expects k=v, got '" + kv + "'");
    out[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return out;
}

std::string param_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw std::invalid_argument("config: parameter values must be strings or integers");
}

int do_run(const RunOptions& o) {
  // config file first, flags override
  std::string suite, format = "json", out;
  std::uint64_t seed = twistalg::kDefaultSeed;
  std::map<std::string, std::string> params;
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) throw std::invalid_argument("cannot read config " + o.config);
    json c;
    try {
      c = json::parse(in);
    } catch (const json::parse_error& e) {
      throw std::invalid_argument("config " + o.config + ": " + e.what());
    }
    if (c.contains("suite")) suite = c.at("suite").get<std::string>();
    if (c.contains("format")) format = c.at("format").get<std::string>();
    if (c.contains("out")) out = c.at("out").get<std::string>();
    if (c.contains("seed")) seed = c.at("seed").get<std::uint64_t>();
    if (c.contains("params"))
      for (const auto& [k, v] : c.at("params").items()) params[k] = param_text(v);
  }
  if (!o.suite.empty()) suite = o.suite;
  if (!o.format.empty()) format = o.format;
  if (!o.out.empty()) out = o.out;
  if (o.seed) seed = *o.seed;
  for (const auto& [k, v] : parse_params(o.params)) params[k] = v;
  if (suite.empty()) throw std::invalid_argument("no suite given");
  if (format != "json" && format != "csv") throw std::invalid_argument("unknown format '" + format + "'");

  const twistalg::Report rep = twistalg::run_suite(suite, params, seed);
  const std::string text =
      format == "json" ? twistalg::report_json(rep, o.timings).dump(2) + "\n" : twistalg::report_csv(rep, o.timings);

  if (out.empty())
    if (const char* dir = std::getenv("TWISTALG_OUT_DIR"); dir && *dir)
      out = (std::filesystem::path(dir) / (suite + "." + format)).string();
  if (out.empty()) {
    std::cout << text;
  } else {
    const std::filesystem::path p(out);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << text;
    for (const auto& line : rep.summary()) std::cout << line << "\n";
    std::cout << "report: " << out << "\n";
  }
  return rep.ok() ? 0 : 1;
}

int do_list(const std::string& format) {
  const auto& reg = twistalg::suite_registry();
  if (format == "json") {
    json arr = json::array();
    for (const auto& s : reg) arr.push_back(s.schema());
    std::cout << arr.dump(2) << "\n";
    return 0;
  }
  if (format != "text") throw std::invalid_argument("unknown format '" + format + "'");
  for (const auto& s : reg) {
    std::cout << s.name << "  " << s.doc << "\n";
    for (const auto& p : s.params) {
      std::cout << "    " << p.name << "=" << p.def << "  ";
      if (p.is_choice()) {
        std::cout << "{";
        for (std::size_t i = 0; i < p.choices.size(); ++i) std::cout << (i ? "," : "") << p.choices[i];
        std::cout << "}";
      } else {
        std::cout << "[" << p.lo << "," << p.hi << "]";
      }
      std::cout << "  " << p.doc << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twistalg verification suites"};
  app.require_subcommand(1);

  RunOptions ro;
  auto* run = app.add_subcommand("run", "run a suite and emit a report");
  run->add_option("suite", ro.suite, "susy, freefield, bf, vertex, koszul or all");
  run->add_option("--param", ro.params, "suite parameter k=v (repeatable)");
  run->add_option("--format", ro.format, "json or csv (default json)");
  run->add_option("--out", ro.out, "report path (default: $TWISTALG_OUT_DIR/<suite>.<format>, else stdout)");
  run->add_option("--seed", ro.seed, "seed for randomized sweeps");
  run->add_option("--config", ro.config, "JSON config; flags override it");
  run->add_flag("--timings", ro.timings, "include wall-clock timings (breaks byte-identical reports)");

  std::string list_format = "text";
  auto* list = app.add_subcommand("list", "list suites with parameter schemas");
  list->add_option("--format", list_format, "text or json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*run) return do_run(ro);
    return do_list(list_format);
  } catch (const std::exception& e) {
    std::cerr << "twistalg: " << e.what() << "\n";
    return 2;
  }
}
