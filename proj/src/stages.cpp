#include "steiner/stages.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include "steiner/canon.hpp"
#include "steiner/configgen.hpp"
#include "steiner/io.hpp"
#include "steiner/pipeline.hpp"

namespace steiner::stages {

namespace fs = std::filesystem;

std::string config_file_name(std::uint64_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "config_%05llu.txt", static_cast<unsigned long long>(index));
  return buf;
}

ConfigsResult run_configs(int m, int r, const std::string& out_dir, bool exclude_wilson,
                          int threads) {
  auto records = configgen::classify_configurations(m, r, threads);
  if (records.empty()) throw input_error("no configurations exist for these parameters");
  if (exclude_wilson) {
    // Raises data_error when nothing is flagged; only meaningful for (14,3).
    (void)configgen::exclude_wilson(records);
  }

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw io_error("cannot create output directory " + out_dir);

  ConfigsResult result;
  result.classes = records.size();
  result.underlying_classes = configgen::underlying_graph_classes(records);

  std::string manifest = "index,canonical_hex,aut_order,wilson_flag,graph6_underlying\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    io::write_configuration(rec.config, (fs::path(out_dir) / config_file_name(i)).string());
    std::string row = std::to_string(i) + ',' + canon::to_hex(rec.canonical_bytes) + ',' +
                      std::to_string(rec.aut.order) + ',' + (rec.wilson_flag ? "1" : "0") + ',' +
                      io::to_graph6(rec.underlying) + '\n';
    if (rec.wilson_flag) {
      result.wilson_index = static_cast<long long>(i);
      if (exclude_wilson) row = "#tombstone," + row;
    }
    manifest += row;
  }
  result.manifest_path = (fs::path(out_dir) / "manifest.csv").string();
  io::write_file(result.manifest_path, manifest);
  return result;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::string text = io::read_file(path);
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

std::uint64_t to_u64(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    std::uint64_t value = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return value;
  } catch (const std::exception&) {
    throw data_error(std::string("malformed number in ") + what + ": '" + s + "'");
  }
}

}  // namespace

std::vector<ManifestRow> read_manifest(const std::string& path) {
  auto lines = read_lines(path);
  if (lines.empty() || lines[0] != "index,canonical_hex,aut_order,wilson_flag,graph6_underlying") {
    throw data_error("manifest header missing or unrecognized");
  }
  std::vector<ManifestRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    ManifestRow row;
    std::string data = lines[i];
    if (data.rfind("#tombstone,", 0) == 0) {
      row.tombstoned = true;
      data = data.substr(11);
    }
    auto fields = split_csv(data);
    if (fields.size() != 5) throw data_error("manifest row has wrong field count");
    row.index = to_u64(fields[0], "manifest index");
    row.canonical_hex = fields[1];
    row.aut_order = to_u64(fields[2], "manifest aut_order");
    row.wilson_flag = fields[3] == "1" ? 1 : 0;
    row.graph6_underlying = fields[4];
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string config_stats_path(const std::string& ledger_path) {
  return ledger_path + ".configs.csv";
}

namespace {

constexpr const char* kLedgerHeader = "config_index,design_seq,aut_order,u,i1,i3,canonical_hex";
constexpr const char* kStatsHeader = "config_index,aut_order,factorization_count,accepted_designs";

struct Checkpoint {
  std::string scope;
  long long last_config = -1;
  std::uint64_t ledger_rows = 0;
  std::uint64_t stats_rows = 0;
};

std::string scope_string(int v, int shard_index, int shard_count) {
  return "v" + std::to_string(v) + " shard=" + std::to_string(shard_index) + "/" +
         std::to_string(shard_count);
}

Checkpoint read_checkpoint(const std::string& path) {
  auto lines = read_lines(path);
  if (lines.size() < 5 || lines[0] != "steiner-checkpoint v1") {
    throw data_error("unrecognized checkpoint file");
  }
  Checkpoint cp;
  if (lines[1].rfind("scope=", 0) != 0) throw data_error("checkpoint scope missing");
  cp.scope = lines[1].substr(6);
  if (lines[2].rfind("last_config=", 0) != 0) throw data_error("checkpoint last_config missing");
  cp.last_config = std::stoll(lines[2].substr(12));
  if (lines[3].rfind("ledger_rows=", 0) != 0) throw data_error("checkpoint ledger_rows missing");
  cp.ledger_rows = to_u64(lines[3].substr(12), "checkpoint");
  if (lines[4].rfind("stats_rows=", 0) != 0) throw data_error("checkpoint stats_rows missing");
  cp.stats_rows = to_u64(lines[4].substr(11), "checkpoint");
  return cp;
}

void write_checkpoint(const std::string& path, const Checkpoint& cp) {
  std::string text = "steiner-checkpoint v1\nscope=" + cp.scope +
                     "\nlast_config=" + std::to_string(cp.last_config) +
                     "\nledger_rows=" + std::to_string(cp.ledger_rows) +
                     "\nstats_rows=" + std::to_string(cp.stats_rows) + "\n";
  std::string tmp = path + ".tmp";
  io::write_file(tmp, text);
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw io_error("cannot replace checkpoint " + path);
}

std::uint64_t count_data_rows(const std::string& path, const char* header) {
  auto lines = read_lines(path);
  if (lines.empty() || lines[0] != header) throw data_error("ledger header mismatch in " + path);
  std::uint64_t rows = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (!lines[i].empty()) ++rows;
  }
  return rows;
}

struct ConfigWork {
  std::uint64_t index = 0;
  std::string ledger_rows;
  std::string stats_row;
  std::vector<std::pair<std::string, std::string>> design_files;
  std::uint64_t accepted = 0;
  std::uint64_t ledger_row_count = 0;
};

ConfigWork process_config(const ManifestRow& row, const std::string& config_dir, int v,
                          bool emit_designs) {
  Configuration config =
      io::read_configuration((fs::path(config_dir) / config_file_name(row.index)).string());
  configgen::ConfigRecord record = configgen::make_record(std::move(config));
  if (canon::to_hex(record.canonical_bytes) != row.canonical_hex ||
      record.aut.order != row.aut_order) {
    throw data_error("configuration file does not match its manifest row");
  }

  ConfigWork work;
  work.index = row.index;
  std::uint64_t seq = 0;
  pipeline::ConfigRunStats stats =
      pipeline::run_pipeline(record, v, [&](const pipeline::AcceptedDesign& design) {
        work.ledger_rows += std::to_string(row.index) + ',' + std::to_string(seq) + ',' +
                            std::to_string(design.aut_order) + ',' + std::to_string(design.u) +
                            ',' + std::to_string(design.i1) + ',' + std::to_string(design.i3) +
                            ',' + design.canonical_hex + '\n';
        if (emit_designs) {
          char name[64];
          std::snprintf(name, sizeof name, "design_%05llu_%06llu.txt",
                        static_cast<unsigned long long>(row.index),
                        static_cast<unsigned long long>(seq));
          work.design_files.emplace_back(name, io::format_design(design.design));
        }
        ++seq;
        return true;
      });
  if (stats.truncated) throw data_error("pipeline run unexpectedly truncated");
  if (!stats.fano_orbit_identity) throw data_error("fano orbit identity failed");
  if (stats.stage1_orbit_sum != stats.factorization_count) {
    throw data_error("factorization orbit identity failed");
  }
  work.accepted = stats.designs_accepted;
  work.ledger_row_count = seq;
  work.stats_row = std::to_string(row.index) + ',' + std::to_string(row.aut_order) + ',' +
                   std::to_string(stats.factorization_count) + ',' +
                   std::to_string(stats.designs_accepted) + '\n';
  return work;
}

}  // namespace

PipelineStageResult run_pipeline_stage(int v, const std::string& manifest_path, int shard_index,
                                       int shard_count, const std::string& ledger_path,
                                       const std::string& checkpoint_path, bool emit_designs,
                                       int threads, std::uint64_t stop_after_configs) {
  if (shard_count <= 0 || shard_index < 0 || shard_index >= shard_count) {
    throw input_error("shard index must lie below the shard count");
  }
  auto manifest = read_manifest(manifest_path);
  std::string config_dir = fs::path(manifest_path).parent_path().string();
  std::string stats_path = config_stats_path(ledger_path);
  std::string scope = scope_string(v, shard_index, shard_count);

  PipelineStageResult result;
  Checkpoint cp;
  cp.scope = scope;
  if (fs::exists(checkpoint_path)) {
    cp = read_checkpoint(checkpoint_path);
    if (cp.scope != scope) throw data_error("checkpoint scope does not match this invocation");
    if (!fs::exists(ledger_path) || !fs::exists(stats_path)) {
      throw data_error("checkpoint present but ledger files are missing");
    }
    if (count_data_rows(ledger_path, kLedgerHeader) != cp.ledger_rows ||
        count_data_rows(stats_path, kStatsHeader) != cp.stats_rows) {
      throw data_error("checkpoint and ledger row counts disagree; manual intervention required");
    }
    result.resumed = true;
  } else {
    if (fs::exists(ledger_path) || fs::exists(stats_path)) {
      throw data_error("ledger exists without a checkpoint; manual intervention required");
    }
    io::write_file(ledger_path, std::string(kLedgerHeader) + "\n");
    io::write_file(stats_path, std::string(kStatsHeader) + "\n");
    write_checkpoint(checkpoint_path, cp);
  }

  std::vector<ManifestRow> todo;
  for (const auto& row : manifest) {
    if (row.tombstoned || row.wilson_flag) continue;
    if (row.index % static_cast<std::uint64_t>(shard_count) !=
        static_cast<std::uint64_t>(shard_index)) {
      continue;
    }
    if (static_cast<long long>(row.index) <= cp.last_config) continue;
    todo.push_back(row);
  }
  std::sort(todo.begin(), todo.end(),
            [](const ManifestRow& a, const ManifestRow& b) { return a.index < b.index; });

  std::string designs_dir = ledger_path + ".designs";
  if (emit_designs) fs::create_directories(designs_dir);

  std::ofstream ledger(ledger_path, std::ios::app | std::ios::binary);
  std::ofstream stats(stats_path, std::ios::app | std::ios::binary);
  if (!ledger || !stats) throw io_error("cannot open ledger for append");

  auto commit = [&](ConfigWork work) {
    ledger << work.ledger_rows;
    stats << work.stats_row;
    ledger.flush();
    stats.flush();
    if (!ledger || !stats) throw io_error("ledger append failed");
    for (const auto& [name, content] : work.design_files) {
      io::write_file((fs::path(designs_dir) / name).string(), content);
    }
    cp.last_config = static_cast<long long>(work.index);
    cp.ledger_rows += work.ledger_row_count;
    cp.stats_rows += 1;
    write_checkpoint(checkpoint_path, cp);
    result.designs_accepted += work.accepted;
    ++result.configs_processed;
  };

  if (threads <= 1) {
    for (const auto& row : todo) {
      commit(process_config(row, config_dir, v, emit_designs));
      if (stop_after_configs && result.configs_processed >= stop_after_configs) break;
    }
  } else {
    std::deque<std::future<ConfigWork>> window;
    std::size_t next = 0;
    bool stopping = false;
    while ((next < todo.size() && !stopping) || !window.empty()) {
      while (!stopping && next < todo.size() &&
             window.size() < static_cast<std::size_t>(threads)) {
        const ManifestRow& row = todo[next++];
        window.push_back(std::async(std::launch::async, process_config, row, config_dir, v,
                                    emit_designs));
      }
      commit(window.front().get());
      window.pop_front();
      if (stop_after_configs && result.configs_processed >= stop_after_configs) stopping = true;
    }
  }
  return result;
}

std::vector<analysis::DesignLedgerRow> read_design_ledger(const std::string& path) {
  auto lines = read_lines(path);
  if (lines.empty() || lines[0] != kLedgerHeader) throw data_error("design ledger header mismatch");
  std::vector<analysis::DesignLedgerRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto fields = split_csv(lines[i]);
    if (fields.size() != 7) throw data_error("design ledger row has wrong field count");
    analysis::DesignLedgerRow row;
    row.config_index = to_u64(fields[0], "ledger");
    row.design_seq = to_u64(fields[1], "ledger");
    row.aut_order = to_u64(fields[2], "ledger");
    row.u = to_u64(fields[3], "ledger");
    row.i1 = to_u64(fields[4], "ledger");
    row.i3 = to_u64(fields[5], "ledger");
    row.canonical_hex = fields[6];
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<analysis::ConfigMassRow> read_config_stats(const std::string& path) {
  auto lines = read_lines(path);
  if (lines.empty() || lines[0] != kStatsHeader) throw data_error("config stats header mismatch");
  std::vector<analysis::ConfigMassRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto fields = split_csv(lines[i]);
    if (fields.size() != 4) throw data_error("config stats row has wrong field count");
    analysis::ConfigMassRow row;
    row.config_index = to_u64(fields[0], "stats");
    row.aut_order = to_u64(fields[1], "stats");
    row.factorization_count = to_u64(fields[2], "stats");
    rows.push_back(row);
  }
  return rows;
}

VerifyResult run_verify(int v, const std::string& ledger_path, const std::string& manifest_path) {
  auto designs = read_design_ledger(ledger_path);
  auto config_stats = read_config_stats(config_stats_path(ledger_path));
  auto manifest = read_manifest(manifest_path);

  std::vector<std::uint64_t> expected;
  for (const auto& row : manifest) {
    if (!row.tombstoned && !row.wilson_flag) expected.push_back(row.index);
  }
  std::vector<std::uint64_t> have;
  have.reserve(config_stats.size());
  for (const auto& row : config_stats) have.push_back(row.config_index);
  std::sort(expected.begin(), expected.end());
  std::sort(have.begin(), have.end());

  VerifyResult result;
  result.scope_complete = expected == have;

  std::ostringstream report;
  report << "configurations in scope: " << expected.size() << ", processed: " << have.size()
         << "\n";
  if (result.scope_complete) {
    analysis::MassResult mass = analysis::mass_check(designs, config_stats, v);
    result.mass_equal = mass.equal;
    result.lhs = mass.lhs.get_str();
    result.rhs = mass.rhs.get_str();
    report << "mass lhs = " << result.lhs << "\n";
    report << "mass rhs = " << result.rhs << "\n";
    report << "lhs == rhs: " << (mass.equal ? "true" : "false") << "\n";
  } else {
    report << "scope partial: mass equality not evaluated\n";
  }

  analysis::AggregateReport agg = analysis::aggregate_results(designs);
  report << "designs: " << designs.size() << "\n";
  report << "aut_order,u,i1,i3,count\n";
  for (const auto& row : agg.rows) {
    report << row.aut_order << ',' << row.u << ',' << row.i1 << ',' << row.i3 << ','
           << row.count << "\n";
  }
  report << "aut_order,count\n";
  for (const auto& [order, count] : agg.order_marginal) {
    report << order << ',' << count << "\n";
  }
  result.report_text = report.str();
  return result;
}

}  // namespace steiner::stages
