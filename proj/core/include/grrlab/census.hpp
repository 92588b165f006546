#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "grrlab/autgrp.hpp"
#include "grrlab/bounds.hpp"
#include "grrlab/cayley.hpp"
#include "grrlab/pgl2.hpp"
#include "grrlab/witness.hpp"

namespace grr {

enum class EmitFormat { Json, Csv, Md };

/// One census run: which experiments, at which q, how to sample and emit.
/// A fixed seed makes the default report byte-identical across runs; the
/// opt-in timings flag adds runtime_ms fields (and gives up byte identity).
struct RunConfig {
  std::vector<long long> qs;               // empty: per-experiment defaults
  std::vector<std::string> experiments;    // "all" expands to every experiment
  int samples = 0;                         // 0: per-experiment default
  std::uint64_t seed = 0;
  int jobs = 1;
  EmitFormat emit = EmitFormat::Json;
  std::string out_path;                    // empty: stdout
  std::string cache_dir;                   // empty: no table cache
  bool no_shortcut = false;                // disable the maximality shortcut
  bool timings = false;
  std::string export_graph_dir;            // find-grr: dump found GRR graphs
};

struct CensusRecord {
  std::string experiment;
  long long q = 0;
  int p = 0, f = 0, d = 0;
  bool confirmed = true;
  nlohmann::json details;
  double runtime_ms = 0.0;
};

/// Caches field contexts and group tables across the experiments of a run.
class Workspace {
 public:
  explicit Workspace(std::string cache_dir = "");

  const FieldCtx& field(long long q);
  const GroupTable& psl(long long q);
  const GroupTable& pgl(long long q);

 private:
  const GroupTable& table(long long q, GroupKind kind);

  std::string cache_dir_;
  std::map<long long, std::unique_ptr<FieldCtx>> fields_;
  std::map<std::pair<long long, int>, std::unique_ptr<GroupTable>> tables_;
};

CensusRecord exp_verify_q7(Workspace& ws, const RunConfig& cfg);
CensusRecord exp_find_grr(Workspace& ws, long long q, const RunConfig& cfg);
CensusRecord exp_prop31(Workspace& ws, long long q, const RunConfig& cfg);
CensusRecord exp_theorem14(Workspace& ws, long long q, const RunConfig& cfg);
CensusRecord exp_prop15(Workspace& ws, long long q, const RunConfig& cfg);
CensusRecord exp_structure(Workspace& ws, long long q, const RunConfig& cfg);
CensusRecord exp_crosscheck(Workspace& ws, long long q, const RunConfig& cfg);

const std::vector<std::string>& all_experiments();
std::vector<long long> default_qs(const std::string& experiment);

// Throws std::invalid_argument for q outside an experiment's domain.
void validate_experiment_q(const std::string& experiment, long long q);

struct CensusRun {
  std::vector<CensusRecord> records;
  int exit_code = 0;  // 0 confirmed, 1 violation, 2 invalid input
  std::string error;  // set when exit_code == 2
};

CensusRun run_census(const RunConfig& cfg);

nlohmann::json header_json(const RunConfig& cfg);
nlohmann::json record_json(const CensusRecord& r, bool timings);
void emit_records(std::ostream& os, const RunConfig& cfg,
                  const std::vector<CensusRecord>& records);

// "5,7..13,27" -> numbers and prime-power-filtered inclusive ranges.
std::vector<long long> parse_q_spec(const std::string& spec);

}  // namespace grr
