#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "ietlab/error.hpp"
#include "ietlab/experiments.hpp"

using namespace ietlab;

namespace {

Json load(const std::string& path) {
  if (path.empty()) return Json::object();
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ConfigError, "cannot open " + path, "config");
    buf << in.rdbuf();
  }
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ConfigError, std::string("not valid JSON: ") + e.what(), "config");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ietlab: rotations, symmetric 3-IETs and cocycles at arbitrary precision"};
  app.require_subcommand(1);

  std::string config;
  std::string set_json;
  ConfigOverrides ov;
  int bits = 0, threads = 0;
  std::uint64_t seed = 0;
  std::string out;

  for (const auto& kind : experiment_kinds()) {
    auto* sub = app.add_subcommand(kind, "run the " + kind + " experiment");
    sub->add_option("config", config, "JSON config file ('-' for stdin)");
    sub->add_option("--set", set_json, "inline JSON object merged over the config");
    sub->add_option("--bits", bits, "working precision in bits (default: IETLAB_BITS or 256)");
    sub->add_option("--seed", seed, "random seed");
    sub->add_option("--out", out, "output directory for the report and CSV files");
    sub->add_option("--threads", threads, "thread budget for data-parallel sweeps");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string kind = app.get_subcommands().front()->get_name();
  auto* sub = app.get_subcommands().front();
  if (sub->count("--bits")) ov.bits = bits;
  if (sub->count("--seed")) ov.seed = seed;
  if (sub->count("--out")) ov.out = out;
  if (sub->count("--threads")) ov.threads = threads;

  try {
    Json doc = load(config);
    if (!set_json.empty()) {
      Json patch;
      try {
        patch = Json::parse(set_json);
      } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::ConfigError, std::string("not valid JSON: ") + e.what(), "--set");
      }
      if (!patch.is_object() || !doc.is_object()) throw Error(ErrorKind::ConfigError, "--set needs a JSON object", "--set");
      doc.update(patch);
    }
    ExperimentConfig c = parse_config(doc, kind, ov);
    return run(c, std::cout, std::cerr);
  } catch (const Error& e) {
    std::cerr << error_json(e).dump() << '\n';
    return is_numeric_failure(e.kind()) ? 2 : 1;
  }
}
