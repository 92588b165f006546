#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "grrlab/census.hpp"

namespace {

struct CliOptions {
  std::string q_spec;
  int samples = 0;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string emit = "json";
  std::string out;
  std::string cache;
  bool no_shortcut = false;
  bool timings = false;
  std::string export_graph;
};

void add_common_options(CLI::App* cmd, CliOptions& opts) {
  cmd->add_option("--q", opts.q_spec,
                  "q values: comma list and/or inclusive ranges, e.g. 5,7..13 "
                  "(ranges keep prime powers only)");
  cmd->add_option("--samples", opts.samples, "sample count for sampled experiments");
  cmd->add_option("--seed", opts.seed, "RNG seed (default 0; reports are "
                                       "byte-identical for a fixed seed)");
  cmd->add_option("--jobs", opts.jobs, "worker threads for candidate fan-out");
  cmd->add_option("--emit", opts.emit, "report format: json|csv|md")
      ->check(CLI::IsMember({"json", "csv", "md"}));
  cmd->add_option("--out", opts.out, "output path (default stdout)");
  cmd->add_option("--cache", opts.cache,
                  "group table cache directory (GRRLAB_CACHE overrides)");
  cmd->add_flag("--no-shortcut", opts.no_shortcut,
                "verify generation by closure instead of the maximality shortcut");
  cmd->add_flag("--timings", opts.timings, "include runtime_ms in reports");
  cmd->add_option("--export-graph", opts.export_graph,
                  "directory for adjacency list exports of found GRR graphs");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"grrlab: cubic graphical regular representations of PSL2(q)"};
  app.require_subcommand(1);

  CliOptions opts;
  std::vector<std::pair<std::string, CLI::App*>> cmds;
  for (const std::string& name : grr::all_experiments()) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
    add_common_options(sub, opts);
    cmds.emplace_back(name, sub);
  }
  CLI::App* all_cmd = app.add_subcommand("all", "run every experiment");
  add_common_options(all_cmd, opts);
  cmds.emplace_back("all", all_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  grr::RunConfig cfg;
  for (auto& [name, sub] : cmds)
    if (sub->parsed()) cfg.experiments.push_back(name);
  cfg.samples = opts.samples;
  cfg.seed = opts.seed;
  cfg.jobs = opts.jobs;
  cfg.emit = opts.emit == "csv"  ? grr::EmitFormat::Csv
             : opts.emit == "md" ? grr::EmitFormat::Md
                                 : grr::EmitFormat::Json;
  cfg.out_path = opts.out;
  cfg.cache_dir = opts.cache;
  if (const char* env = std::getenv("GRRLAB_CACHE")) cfg.cache_dir = env;
  cfg.no_shortcut = opts.no_shortcut;
  cfg.timings = opts.timings;
  cfg.export_graph_dir = opts.export_graph;
  if (!opts.q_spec.empty()) {
    try {
      cfg.qs = grr::parse_q_spec(opts.q_spec);
    } catch (const std::exception& e) {
      std::cerr << "invalid --q: " << e.what() << "\n";
      return 2;
    }
  }

  grr::CensusRun run = grr::run_census(cfg);
  if (run.exit_code == 2) {
    std::cerr << "invalid input: " << run.error << "\n";
    return 2;
  }

  if (cfg.out_path.empty()) {
    grr::emit_records(std::cout, cfg, run.records);
  } else {
    std::ofstream os(cfg.out_path);
    if (!os) {
      std::cerr << "cannot open output path: " << cfg.out_path << "\n";
      return 2;
    }
    grr::emit_records(os, cfg, run.records);
  }
  return run.exit_code;
}
