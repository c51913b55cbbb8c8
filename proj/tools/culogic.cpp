// Batch front end: check theories against models, run the law suites,
// classify connectives, and operate on PERs and metric bridges.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "culogic/cli.hpp"

namespace {

using culogic::cli::CommandResult;
using culogic::cli::RunConfig;

int emit(const CommandResult& result, const RunConfig& config,
         const std::string& out_path) {
  std::string payload =
      config.format == "json" ? result.report.dump(2) + "\n" : result.text;
  if (out_path.empty()) {
    std::cout << payload;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return 2;
    }
    out << payload;
  }
  return result.exit_code;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"continuous-logic predicates, hyperdoctrine laws, PERs and "
               "metric bridges"};
  app.require_subcommand(1);
  app.fallthrough();  // let global flags follow the subcommand

  RunConfig config;
  std::string out_path;
  std::string grid_text = "1/16";
  app.add_option("--seed", config.seed, "random seed for the law suites");
  app.add_option("--trials", config.trials, "instances per law suite");
  app.add_option("--grid", grid_text, "stratum grid resolution, 1/2^k");
  app.add_option("--format", config.format, "text or json");
  app.add_option("--out", out_path, "write the report to a file");

  std::string model_path, theory_path;
  auto* check = app.add_subcommand("check", "check a theory against a model");
  check->add_option("model", model_path, "model JSON file")->required();
  check->add_option("theory", theory_path, "theory file")->required();

  auto* laws_cmd = app.add_subcommand("laws", "run the randomized law suites");
  laws_cmd->add_option("--inject-mutation", config.mutation,
                       "test-only fault injection (e.g. exists-as-sup)");

  std::string expr;
  std::size_t arity = 0;
  auto* classify = app.add_subcommand("classify-connective",
                                      "classify a connective expression");
  classify->add_option("expr", expr, "expression, e.g. \"1-x\"")->required();
  classify->add_option("--arity", arity, "treat the connective as n-ary");

  std::string per_sub;
  std::vector<std::string> per_files;
  auto* per = app.add_subcommand("per", "operate on PERs and functional relations");
  per->add_option("action", per_sub, "verify | compose | mono | sub")->required();
  per->add_option("files", per_files, "input files");

  std::string bridge_sub;
  std::vector<std::string> bridge_files;
  auto* bridge = app.add_subcommand("bridge", "metric-space bridge operations");
  bridge->add_option("action", bridge_sub,
                     "g | extract | metric-from-per | product")
      ->required();
  bridge->add_option("files", bridge_files, "input files");

  CLI11_PARSE(app, argc, argv);

  try {
    config.grid = culogic::Rat::parse(grid_text);
  } catch (const culogic::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  CommandResult result;
  if (check->parsed()) {
    result = culogic::cli::cmd_check(model_path, theory_path, config);
  } else if (laws_cmd->parsed()) {
    result = culogic::cli::cmd_laws(config);
  } else if (classify->parsed()) {
    result = culogic::cli::cmd_classify(expr, config, arity);
  } else if (per->parsed()) {
    result = culogic::cli::cmd_per(per_sub, per_files);
  } else if (bridge->parsed()) {
    result = culogic::cli::cmd_bridge(bridge_sub, bridge_files);
  }
  return emit(result, config, out_path);
}
