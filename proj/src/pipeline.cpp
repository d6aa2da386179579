#include "steiner/pipeline.hpp"

#include <algorithm>
#include <cassert>
#include <map>

#include "steiner/canon.hpp"
#include "steiner/kernels.hpp"
#include "steiner/subsys.hpp"

namespace steiner::pipeline {

std::array<Point, 7> w_points(int v) {
  std::array<Point, 7> w;
  for (int i = 0; i < 7; ++i) w[i] = static_cast<Point>(v - 7 + i);
  return w;
}

TripleSystem PartitionedSts::assemble() const {
  std::vector<Block> blocks = d_blocks;
  for (const auto& group : f_blocks) blocks.insert(blocks.end(), group.begin(), group.end());
  blocks.insert(blocks.end(), fano_blocks.begin(), fano_blocks.end());
  return TripleSystem(v, std::move(blocks));
}

namespace {

Factorization apply_to_factorization(const Permutation& p, const Factorization& f) {
  Factorization out;
  out.factors.reserve(f.factors.size());
  for (const auto& factor : f.factors) out.factors.push_back(apply(p, factor));
  std::sort(out.factors.begin(), out.factors.end());
  return out;
}

std::vector<Block> apply_to_block_set(const Permutation& p, const std::vector<Block>& blocks) {
  std::vector<Block> out;
  out.reserve(blocks.size());
  for (const auto& b : blocks) out.push_back(apply(p, b));
  std::sort(out.begin(), out.end());
  return out;
}

// Per-item acceptance: f is kept iff it is the minimum of its orbit. The
// full element list of `a` is swept once, collecting the stabilizer.
bool lexmin_accept(const PermutationGroup& a, const Factorization& f,
                   PermutationGroup* stabilizer) {
  std::vector<Permutation> stab_elements;
  for (const auto& e : a.elements) {
    Factorization image = apply_to_factorization(e, f);
    if (image < f) return false;
    if (image == f) stab_elements.push_back(e);
  }
  if (stabilizer) {
    stabilizer->degree = a.degree;
    stabilizer->order = stab_elements.size();
    stabilizer->generators = stab_elements;
    stabilizer->elements = std::move(stab_elements);
  }
  return true;
}

}  // namespace

std::vector<std::pair<Factorization, PermutationGroup>> lexmin_factorizations(
    const PackedGraph& g, const PermutationGroup& a) {
  std::vector<Factor> factors = kernels::perfect_matchings(g);
  std::vector<Factorization> all = kernels::one_factorizations(g, factors);
  std::vector<std::pair<Factorization, PermutationGroup>> accepted;
  for (const auto& f : all) {
    PermutationGroup stab;
    if (lexmin_accept(a, f, &stab)) accepted.emplace_back(f, std::move(stab));
  }
  return accepted;
}

std::vector<std::vector<Block>> assemble_f_blocks(const Factorization& fact, int v) {
  if (fact.factors.size() != 7) throw input_error("factorization must have exactly 7 factors");
  std::vector<std::vector<Block>> groups(7);
  for (int i = 0; i < 7; ++i) {
    Point wp = static_cast<Point>(v - 7 + i);
    for (auto [x, y] : fact.factors[i].edges) {
      groups[i].push_back(make_block(x, y, wp));
    }
    std::sort(groups[i].begin(), groups[i].end());
  }
  return groups;
}

PermutationGroup extend_group(const PermutationGroup& a1, const Factorization& fact, int v) {
  int m = v - 7;
  if (a1.degree != m) throw input_error("group degree must match the configuration points");
  std::map<Factor, int> factor_index;
  for (int i = 0; i < static_cast<int>(fact.factors.size()); ++i) {
    factor_index[fact.factors[i]] = i;
  }
  PermutationGroup out;
  out.degree = v;
  out.order = a1.order;
  out.elements.reserve(a1.elements.size());
  for (const auto& e : a1.elements) {
    std::vector<Point> img(v);
    for (int p = 0; p < m; ++p) img[p] = e(static_cast<Point>(p));
    for (int i = 0; i < 7; ++i) {
      Factor image = apply(e, fact.factors[i]);
      auto it = factor_index.find(image);
      if (it == factor_index.end()) {
        throw data_error("stabilizer element does not permute the factors");
      }
      img[v - 7 + i] = static_cast<Point>(v - 7 + it->second);
    }
    out.elements.push_back(Permutation(std::move(img)));
  }
  std::sort(out.elements.begin(), out.elements.end());
  out.generators = out.elements;
  return out;
}

std::vector<std::vector<Block>> fano_candidates(int v) {
  static const std::vector<std::vector<Block>> base = [] {
    auto decompositions = kernels::triangle_decompositions(PackedGraph::complete(7));
    std::vector<std::vector<Block>> sets;
    sets.reserve(decompositions.size());
    for (auto& dec : decompositions) {
      std::sort(dec.begin(), dec.end());
      sets.push_back(std::move(dec));
    }
    std::sort(sets.begin(), sets.end());
    return sets;
  }();
  std::vector<std::vector<Block>> out;
  out.reserve(base.size());
  for (const auto& dec : base) {
    std::vector<Block> blocks;
    blocks.reserve(dec.size());
    for (const auto& b : dec) {
      blocks.push_back(Block{static_cast<Point>(b[0] + v - 7), static_cast<Point>(b[1] + v - 7),
                             static_cast<Point>(b[2] + v - 7)});
    }
    out.push_back(std::move(blocks));
  }
  return out;
}

std::vector<std::pair<std::vector<Block>, PermutationGroup>> lexmin_fanos(
    const PermutationGroup& a2, int v) {
  std::vector<std::vector<Block>> candidates = fano_candidates(v);
  std::vector<std::pair<std::vector<Block>, PermutationGroup>> accepted;
  for (const auto& cand : candidates) {
    bool minimal = true;
    std::vector<Permutation> stab;
    for (const auto& e : a2.elements) {
      std::vector<Block> image = apply_to_block_set(e, cand);
      if (image < cand) {
        minimal = false;
        break;
      }
      if (image == cand) stab.push_back(e);
    }
    if (!minimal) continue;
    PermutationGroup a3;
    a3.degree = a2.degree;
    a3.order = stab.size();
    a3.generators = stab;
    a3.elements = std::move(stab);
    accepted.emplace_back(cand, std::move(a3));
  }
  return accepted;
}

std::optional<AcceptedDesign> final_accept(const PartitionedSts& partitioned,
                                           const PermutationGroup& a3) {
  TripleSystem design = partitioned.assemble();
  assert(validate_sts(design).ok);
  auto w = w_points(partitioned.v);
  std::vector<Point> w_sorted(w.begin(), w.end());

  subsys::PairTable table = subsys::make_pair_table(design);
  std::vector<std::vector<Point>> subs = subsys::find_subsystems(table, 7);
  auto w_it = std::find(subs.begin(), subs.end(), w_sorted);
  if (w_it == subs.end()) {
    throw data_error("particularized subsystem missing from the assembled design");
  }

  AcceptedDesign out;
  out.w = w;
  auto stats = subsys::intersection_stats(subs);
  out.u = stats.u;
  out.i1 = stats.i1;
  out.i3 = stats.i3;
  out.i0 = stats.i0;

  if (subs.size() == 1) {
    out.aut_order = a3.order;
  } else {
    canon::SubsystemRanking ranking = canon::canonical_subsystem_ranking(design, subs);
    int w_index = static_cast<int>(w_it - subs.begin());
    const auto& first_orbit = ranking.orbits.front();
    if (!std::binary_search(first_orbit.begin(), first_orbit.end(), w_index)) {
      return std::nullopt;
    }
    // The stage rejections emit one representative per class of pairs, so
    // the designated representative must share W's orbit.
    assert(std::binary_search(first_orbit.begin(), first_orbit.end(),
                              ranking.designated_representative));
    out.aut_order = ranking.aut_order;
  }

  canon::CanonicalResult canonical = canon::canonical_form(canon::encode_sts(design));
  out.canonical_hex = canon::to_hex(canonical.canonical_bytes);
  out.design = std::move(design);
  return out;
}

namespace {

struct StageRunner {
  const configgen::ConfigRecord& record;
  int v;
  const DesignSink& sink;
  ConfigRunStats& stats;
  bool stop = false;

  // Runs stages 2..4 for one accepted factorization.
  void process_accepted(const Factorization& fact, const PermutationGroup& a1) {
    ++stats.accepted_factorizations;
    stats.stage1_orbit_sum += record.aut.order / a1.order;
    PermutationGroup a2 = extend_group(a1, fact, v);
    auto fanos = lexmin_fanos(a2, v);
    std::uint64_t orbit_sum = 0;
    PartitionedSts partitioned;
    partitioned.v = v;
    partitioned.d_blocks = record.config.blocks;
    partitioned.f_blocks = assemble_f_blocks(fact, v);
    for (auto& [fano, a3] : fanos) {
      orbit_sum += a2.order / a3.order;
      partitioned.fano_blocks = fano;
      if (auto accepted = final_accept(partitioned, a3)) {
        ++stats.designs_accepted;
        if (!sink(*accepted)) {
          stop = true;
          stats.truncated = true;
          return;
        }
      }
    }
    if (orbit_sum != 30) stats.fano_orbit_identity = false;
  }
};

}  // namespace

ConfigRunStats run_pipeline(const configgen::ConfigRecord& record, int v, const DesignSink& sink,
                            const PipelineLimits& limits) {
  if (v != 15 && v != 19 && v != 21) throw input_error("pipeline order must be 15, 19 or 21");
  if (record.config.m != v - 7) throw input_error("configuration size does not match v");
  if (record.wilson_flag) throw input_error("Wilson configuration is excluded from the pipeline");

  ConfigRunStats stats;
  StageRunner runner{record, v, sink, stats};

  const PackedGraph& g = record.complement_graph;
  std::vector<Factor> factors = kernels::perfect_matchings(g);
  bool trivial_group = record.aut.order == 1;
  if (!trivial_group && record.aut.elements.empty()) {
    throw input_error("record group elements not materialized");
  }

  bool materialize = true;
  std::vector<Factorization> collected;
  auto result = kernels::for_each_one_factorization(g, factors, [&](const Factorization& fact) {
    ++stats.factorization_count;
    if (limits.max_factorizations && stats.factorization_count > limits.max_factorizations) {
      --stats.factorization_count;  // this one is not processed
      stats.truncated = true;
      return false;
    }
    if (trivial_group) {
      PermutationGroup a1;
      a1.degree = record.aut.degree;
      a1.order = 1;
      a1.elements = {Permutation::identity(record.aut.degree)};
      a1.generators = a1.elements;
      runner.process_accepted(fact, a1);
      return !runner.stop;
    }
    if (materialize) {
      collected.push_back(fact);
      if (collected.size() > limits.materialize_cap) {
        // Too many to hold: fall back to the per-item sweep for everything.
        materialize = false;
        for (const auto& earlier : collected) {
          PermutationGroup a1;
          if (lexmin_accept(record.aut, earlier, &a1)) {
            runner.process_accepted(earlier, a1);
            if (runner.stop) return false;
          }
        }
        collected.clear();
        collected.shrink_to_fit();
        // The current item was already pushed and processed above.
      }
      return true;
    }
    PermutationGroup a1;
    if (lexmin_accept(record.aut, fact, &a1)) runner.process_accepted(fact, a1);
    return !runner.stop;
  });
  if (result.aborted && !stats.truncated) stats.truncated = true;

  if (!trivial_group && materialize && !collected.empty() && !runner.stop) {
    // Orbit partition over the collected factorizations via the generators.
    std::map<Factorization, int> index;
    for (std::size_t i = 0; i < collected.size(); ++i) {
      index[collected[i]] = static_cast<int>(i);
    }
    std::vector<int> orbit_of(collected.size(), -1);
    for (std::size_t i = 0; i < collected.size() && !runner.stop; ++i) {
      if (orbit_of[i] >= 0) continue;
      if (stats.truncated) {
        // Truncated enumeration: orbits may be incomplete, use per-item test.
        PermutationGroup a1;
        if (lexmin_accept(record.aut, collected[i], &a1)) {
          runner.process_accepted(collected[i], a1);
        }
        continue;
      }
      // BFS this orbit; the minimum is the representative.
      std::vector<int> members{static_cast<int>(i)};
      orbit_of[i] = static_cast<int>(i);
      for (std::size_t head = 0; head < members.size(); ++head) {
        for (const auto& gen : record.aut.generators) {
          Factorization image = apply_to_factorization(gen, collected[members[head]]);
          auto it = index.find(image);
          if (it == index.end()) throw data_error("group does not preserve the factorization set");
          if (orbit_of[it->second] < 0) {
            orbit_of[it->second] = static_cast<int>(i);
            members.push_back(it->second);
          }
        }
      }
      int min_member = *std::min_element(members.begin(), members.end(), [&](int a, int b) {
        return collected[a] < collected[b];
      });
      PermutationGroup a1;
      a1.degree = record.aut.degree;
      for (const auto& e : record.aut.elements) {
        if (apply_to_factorization(e, collected[min_member]) == collected[min_member]) {
          a1.elements.push_back(e);
        }
      }
      a1.order = a1.elements.size();
      a1.generators = a1.elements;
      runner.process_accepted(collected[min_member], a1);
    }
  }
  return stats;
}

}  // namespace steiner::pipeline
