#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "steiner/analysis.hpp"
#include "steiner/types.hpp"

namespace steiner::stages {

// --- configuration stage ---

struct ConfigsResult {
  std::size_t classes = 0;
  std::size_t underlying_classes = 0;
  long long wilson_index = -1;  // manifest index of the Wilson class, -1 if absent
  std::string manifest_path;
};

// Classify (m, r) configurations, write one file per class plus the
// manifest CSV `index,canonical_hex,aut_order,wilson_flag,graph6_underlying`.
// With exclude_wilson the Wilson row is tombstoned in the manifest.
ConfigsResult run_configs(int m, int r, const std::string& out_dir, bool exclude_wilson,
                          int threads);

struct ManifestRow {
  std::uint64_t index = 0;
  std::string canonical_hex;
  std::uint64_t aut_order = 1;
  int wilson_flag = 0;
  bool tombstoned = false;
  std::string graph6_underlying;
};

std::vector<ManifestRow> read_manifest(const std::string& path);
std::string config_file_name(std::uint64_t index);

// --- pipeline stage ---

struct PipelineStageResult {
  std::uint64_t configs_processed = 0;  // committed by this invocation
  std::uint64_t designs_accepted = 0;   // by this invocation
  bool resumed = false;
};

// Process the shard's configurations in index order, appending ledger rows
// `config_index,design_seq,aut_order,u,i1,i3,canonical_hex` and a stats row
// per configuration to `<ledger>.configs.csv`. The checkpoint records the
// last fully committed configuration; the stage refuses to run when the
// checkpoint and ledger row counts disagree. stop_after_configs is a test
// hook simulating interruption after that many commits.
PipelineStageResult run_pipeline_stage(int v, const std::string& manifest_path, int shard_index,
                                       int shard_count, const std::string& ledger_path,
                                       const std::string& checkpoint_path, bool emit_designs,
                                       int threads, std::uint64_t stop_after_configs = 0);

std::string config_stats_path(const std::string& ledger_path);
std::vector<analysis::DesignLedgerRow> read_design_ledger(const std::string& path);
std::vector<analysis::ConfigMassRow> read_config_stats(const std::string& path);

// --- verification stage ---

struct VerifyResult {
  bool scope_complete = false;
  bool mass_equal = false;
  std::string lhs, rhs;  // decimal strings
  std::string report_text;
};

// Mass check plus aggregation tables over a ledger produced by the
// pipeline stage. When the stats rows do not cover every non-Wilson
// manifest row the scope is declared partial and no equality is claimed.
VerifyResult run_verify(int v, const std::string& ledger_path, const std::string& manifest_path);

}  // namespace steiner::stages
