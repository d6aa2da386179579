// Command-line front end; talks to the engine through the C API only.

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "steiner.h"

namespace {

int thread_count() {
  const char* env = std::getenv("STEINER_THREADS");
  if (!env) return 1;
  int n = std::atoi(env);
  return n > 0 ? n : 1;
}

bool parse_shard(const std::string& spec, int& index, int& count) {
  return std::sscanf(spec.c_str(), "%d/%d", &index, &count) == 2 && count > 0 && index >= 0 &&
         index < count;
}

int fail(steiner_rc rc) {
  std::fprintf(stderr, "error: %s\n", steiner_last_error());
  return static_cast<int>(rc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"classification engine for triple systems with order-7 subsystems"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  // configs
  auto* configs = app.add_subcommand("configs", "classify (m, r) configurations");
  int m = 14, r = 3;
  std::string configs_out = "configs_out";
  bool exclude_wilson = false;
  configs->add_option("--m", m, "number of points")->required();
  configs->add_option("--r", r, "blocks through each point")->required();
  configs->add_option("--out", configs_out, "output directory");
  configs->add_flag("--exclude-wilson", exclude_wilson, "tombstone the double-Fano class");

  // pipeline
  auto* pipe = app.add_subcommand("pipeline", "extend configurations to full designs");
  int v = 15;
  std::string manifest, ledger = "ledger.csv", checkpoint, shard_spec = "0/1";
  bool emit_designs = false;
  pipe->add_option("--v", v, "design order (15, 19 or 21)")->required();
  pipe->add_option("--manifest", manifest, "manifest from the configs stage")->required();
  pipe->add_option("--shard", shard_spec, "shard as i/n (indices congruent to i mod n)");
  pipe->add_option("--out", ledger, "ledger output path");
  pipe->add_option("--checkpoint", checkpoint, "checkpoint path (default <out>.checkpoint)");
  pipe->add_flag("--emit-designs", emit_designs, "write accepted designs next to the ledger");

  // verify
  auto* verify = app.add_subcommand("verify", "mass check and aggregation over a ledger");
  int verify_v = 15;
  std::string verify_ledger, verify_manifest;
  verify->add_option("--v", verify_v, "design order")->required();
  verify->add_option("--ledger", verify_ledger, "design ledger path")->required();
  verify->add_option("--manifest", verify_manifest, "manifest path")->required();

  // estimate
  auto* estimate = app.add_subcommand("estimate", "estimation formulas and constants");
  double with_sub7 = 116635963205551.0;
  double kirkman = -1.0;
  long long latin_n = -1;
  estimate->add_option("--with-sub7", with_sub7, "class count with an order-7 subsystem");
  estimate->add_option("--kirkman", kirkman, "resolvable-system count to scale");
  estimate->add_option("--latin-f", latin_n, "evaluate the sub-Latin-square expectation at n");

  CLI11_PARSE(app, argc, argv);

  if (configs->parsed()) {
    steiner_configs_result result;
    steiner_rc rc = steiner_configs_run(m, r, configs_out.c_str(), exclude_wilson ? 1 : 0,
                                        thread_count(), &result);
    if (rc != STEINER_OK) return fail(rc);
    std::printf("classes: %llu\n", static_cast<unsigned long long>(result.classes));
    std::printf("underlying graph classes: %llu\n",
                static_cast<unsigned long long>(result.underlying_classes));
    if (result.wilson_index >= 0) {
      std::printf("wilson class index: %lld%s\n", static_cast<long long>(result.wilson_index),
                  exclude_wilson ? " (tombstoned)" : "");
    }
    return 0;
  }

  if (pipe->parsed()) {
    int shard_index = 0, shard_count = 1;
    if (!parse_shard(shard_spec, shard_index, shard_count)) {
      std::fprintf(stderr, "error: --shard must be i/n with 0 <= i < n\n");
      return 1;
    }
    if (checkpoint.empty()) checkpoint = ledger + ".checkpoint";
    steiner_pipeline_result result;
    steiner_rc rc = steiner_pipeline_run(v, manifest.c_str(), shard_index, shard_count,
                                         ledger.c_str(), checkpoint.c_str(),
                                         emit_designs ? 1 : 0, thread_count(), &result);
    if (rc != STEINER_OK) return fail(rc);
    std::printf("configurations processed: %llu%s\n",
                static_cast<unsigned long long>(result.configs_processed),
                result.resumed ? " (resumed)" : "");
    std::printf("designs accepted: %llu\n",
                static_cast<unsigned long long>(result.designs_accepted));
    return 0;
  }

  if (verify->parsed()) {
    char* report = nullptr;
    steiner_verify_result result;
    steiner_rc rc = steiner_verify_run(verify_v, verify_ledger.c_str(), verify_manifest.c_str(),
                                       &report, &result);
    if (rc != STEINER_OK) return fail(rc);
    std::fputs(report, stdout);
    steiner_string_free(report);
    return 0;
  }

  if (estimate->parsed()) {
    double value = 0.0;
    std::printf("alpha = %.12g\n", steiner_alpha());
    if (steiner_mu(21, 7, &value) == STEINER_OK) std::printf("mu(21,7) = %.12g\n", value);
    if (steiner_mu(19, 7, &value) == STEINER_OK) std::printf("mu(19,7) = %.12g\n", value);
    steiner_rc rc = steiner_estimate_total(with_sub7, &value);
    if (rc != STEINER_OK) return fail(rc);
    std::printf("estimate from %.0f with-subsystem classes = %.12g\n", with_sub7, value);
    if (kirkman >= 0) {
      rc = steiner_estimate_total(kirkman, &value);
      if (rc != STEINER_OK) return fail(rc);
      std::printf("resolvable estimate from %.0f = %.12g\n", kirkman, value);
    }
    if (latin_n >= 3) {
      rc = steiner_latin_f(latin_n, &value);
      if (rc != STEINER_OK) return fail(rc);
      std::printf("latin_f(%lld) = %.12g\n", latin_n, value);
    }
    return 0;
  }

  return 1;
}
