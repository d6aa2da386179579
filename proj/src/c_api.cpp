#include "steiner.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "steiner/analysis.hpp"
#include "steiner/canon.hpp"
#include "steiner/io.hpp"
#include "steiner/stages.hpp"
#include "steiner/subsys.hpp"
#include "steiner/types.hpp"

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

steiner_rc classify_exception() {
  try {
    throw;
  } catch (const steiner::resource_error& e) {
    g_last_error = e.what();
    return STEINER_ERR_RESOURCE;
  } catch (const steiner::input_error& e) {
    g_last_error = e.what();
    return STEINER_ERR_USAGE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return STEINER_ERR_DATA;
  } catch (...) {
    g_last_error = "unknown error";
    return STEINER_ERR_DATA;
  }
}

template <typename Fn>
steiner_rc guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return STEINER_OK;
  } catch (...) {
    return classify_exception();
  }
}

}  // namespace

struct steiner_design {
  steiner::TripleSystem system;
};

extern "C" {

const char* steiner_version(void) { return "1.0.0"; }

const char* steiner_last_error(void) { return g_last_error.c_str(); }

void steiner_string_free(char* s) { std::free(s); }

steiner_rc steiner_design_read(const char* path, steiner_design** out) {
  if (!path || !out) {
    g_last_error = "null argument";
    return STEINER_ERR_USAGE;
  }
  return guarded([&] { *out = new steiner_design{steiner::io::read_design(path)}; });
}

steiner_rc steiner_design_parse(const char* text, steiner_design** out) {
  if (!text || !out) {
    g_last_error = "null argument";
    return STEINER_ERR_USAGE;
  }
  return guarded([&] { *out = new steiner_design{steiner::io::parse_design(text)}; });
}

steiner_rc steiner_design_write(const steiner_design* d, const char* path) {
  if (!d || !path) {
    g_last_error = "null argument";
    return STEINER_ERR_USAGE;
  }
  return guarded([&] { steiner::io::write_design(d->system, path); });
}

int steiner_design_order(const steiner_design* d) { return d ? d->system.v : 0; }

int steiner_design_block_count(const steiner_design* d) {
  return d ? static_cast<int>(d->system.blocks.size()) : 0;
}

steiner_rc steiner_design_validate(const steiner_design* d, char** report) {
  if (!d) {
    g_last_error = "null argument";
    return STEINER_ERR_USAGE;
  }
  if (report) *report = nullptr;
  try {
    steiner::ValidationResult res = steiner::validate_sts(d->system);
    if (res.ok) {
      g_last_error.clear();
      return STEINER_OK;
    }
    g_last_error = res.message;
    if (report) *report = dup_string(res.message);
    return STEINER_ERR_DATA;
  } catch (...) {
    return classify_exception();
  }
}

steiner_rc steiner_design_canonical_hex(const steiner_design* d, char** hex) {
  if (!d || !hex) {
    g_last_error = "null argument";
    return STEINER_ERR_USAGE;
  }
  return guarded([&] {
    auto canonical = steiner::canon::canonical_form(steiner::canon::encode_sts(d->system));
    *hex = dup_string(steiner::canon::to_hex(canonical.canonical_bytes));
  });
}

steiner_rc steiner_design_aut_order(const steiner_design* d, uint64_t* order) {
  if (!d || !order) {
    g_last_error = "null argument";
    return STEINER_ERR_USAGE;
  }
  return guarded([&] {
    auto canonical = steiner::canon::canonical_form(steiner::canon::encode_sts(d->system));
    *order = canonical.automorphism_order;
  });
}

steiner_rc steiner_design_subsystem_stats(const steiner_design* d, int w, uint64_t* u,
                                          uint64_t* i1, uint64_t* i3) {
  if (!d || !u) {
    g_last_error = "null argument";
    return STEINER_ERR_USAGE;
  }
  return guarded([&] {
    auto subsystems = steiner::subsys::find_subsystems(d->system, w);
    if (w == 7) {
      auto stats = steiner::subsys::intersection_stats(subsystems);
      *u = stats.u;
      if (i1) *i1 = stats.i1;
      if (i3) *i3 = stats.i3;
    } else {
      *u = subsystems.size();
      if (i1) *i1 = 0;
      if (i3) *i3 = 0;
    }
  });
}

void steiner_design_free(steiner_design* d) { delete d; }

steiner_rc steiner_configs_run(int m, int r, const char* out_dir, int exclude_wilson, int threads,
                               steiner_configs_result* out) {
  if (!out_dir) {
    g_last_error = "null argument";
    return STEINER_ERR_USAGE;
  }
  return guarded([&] {
    auto result = steiner::stages::run_configs(m, r, out_dir, exclude_wilson != 0, threads);
    if (out) {
      out->classes = result.classes;
      out->underlying_classes = result.underlying_classes;
      out->wilson_index = result.wilson_index;
    }
  });
}

steiner_rc steiner_pipeline_run(int v, const char* manifest_path, int shard_index,
                                int shard_count, const char* ledger_path,
                                const char* checkpoint_path, int emit_designs, int threads,
                                steiner_pipeline_result* out) {
  if (!manifest_path || !ledger_path || !checkpoint_path) {
    g_last_error = "null argument";
    return STEINER_ERR_USAGE;
  }
  return guarded([&] {
    auto result = steiner::stages::run_pipeline_stage(v, manifest_path, shard_index, shard_count,
                                                      ledger_path, checkpoint_path,
                                                      emit_designs != 0, threads);
    if (out) {
      out->configs_processed = result.configs_processed;
      out->designs_accepted = result.designs_accepted;
      out->resumed = result.resumed ? 1 : 0;
    }
  });
}

steiner_rc steiner_verify_run(int v, const char* ledger_path, const char* manifest_path,
                              char** report, steiner_verify_result* out) {
  if (!ledger_path || !manifest_path) {
    g_last_error = "null argument";
    return STEINER_ERR_USAGE;
  }
  return guarded([&] {
    auto result = steiner::stages::run_verify(v, ledger_path, manifest_path);
    if (report) *report = dup_string(result.report_text);
    if (out) {
      out->scope_complete = result.scope_complete ? 1 : 0;
      out->mass_equal = result.mass_equal ? 1 : 0;
    }
  });
}

steiner_rc steiner_mu(int v, int w, double* out) {
  if (!out) {
    g_last_error = "null argument";
    return STEINER_ERR_USAGE;
  }
  return guarded([&] { *out = steiner::analysis::mu(v, w); });
}

double steiner_alpha(void) { return steiner::analysis::alpha(); }

steiner_rc steiner_estimate_total(double count_with_subsystem, double* out) {
  if (!out) {
    g_last_error = "null argument";
    return STEINER_ERR_USAGE;
  }
  return guarded([&] { *out = steiner::analysis::estimate_total(count_with_subsystem); });
}

steiner_rc steiner_latin_f(long long n, double* out) {
  if (!out) {
    g_last_error = "null argument";
    return STEINER_ERR_USAGE;
  }
  return guarded([&] { *out = steiner::analysis::latin_f(n); });
}

}  // extern "C"
