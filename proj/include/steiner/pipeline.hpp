#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "steiner/configgen.hpp"
#include "steiner/group.hpp"
#include "steiner/types.hpp"

namespace steiner::pipeline {

// The particularized subsystem always sits on the top seven points.
std::array<Point, 7> w_points(int v);

// A design split by how blocks meet W: inside the complement (d), in one
// point (f, grouped per W-point), or inside W (fano).
struct PartitionedSts {
  int v = 0;
  std::vector<Block> d_blocks;
  std::vector<std::vector<Block>> f_blocks;  // 7 groups, index i for W-point (v-7)+i
  std::vector<Block> fano_blocks;

  TripleSystem assemble() const;
};

struct AcceptedDesign {
  TripleSystem design;
  std::array<Point, 7> w;
  std::uint64_t aut_order = 1;
  std::uint64_t u = 0, i1 = 0, i3 = 0, i0 = 0;
  std::string canonical_hex;
};

// Stage 1: keep the factorizations of g that are lexicographic minima of
// their orbit under a; pairs them with their stabilizer A'.
std::vector<std::pair<Factorization, PermutationGroup>> lexmin_factorizations(
    const PackedGraph& g, const PermutationGroup& a);

// Factor i becomes the blocks through W-point (v-7)+i.
std::vector<std::vector<Block>> assemble_f_blocks(const Factorization& fact, int v);

// Extend A' (degree v-7) to act on all of v points: the W part of each
// element is determined by how it permutes the factors.
PermutationGroup extend_group(const PermutationGroup& a1, const Factorization& fact, int v);

// The 30 labelled order-7 systems on the W points, deterministic order.
std::vector<std::vector<Block>> fano_candidates(int v);

// Stage 2: orbit minima among the 30 candidates under a2, with stabilizers.
std::vector<std::pair<std::vector<Block>, PermutationGroup>> lexmin_fanos(
    const PermutationGroup& a2, int v);

// Final isomorph rejection. Returns the accepted design or nothing.
std::optional<AcceptedDesign> final_accept(const PartitionedSts& partitioned,
                                           const PermutationGroup& a3);

struct PipelineLimits {
  std::uint64_t max_factorizations = 0;  // 0 = unlimited; otherwise stop after this many
  std::size_t materialize_cap = 200'000;  // switch to streaming rejection beyond this
};

struct ConfigRunStats {
  std::uint64_t factorization_count = 0;   // factorizations enumerated
  bool truncated = false;                  // a limit or the sink cut the run short
  std::uint64_t accepted_factorizations = 0;
  std::uint64_t stage1_orbit_sum = 0;      // sum of |A| / |A'| over accepted
  bool fano_orbit_identity = true;         // sum |A''|/|A'''| == 30 held per factorization
  std::uint64_t designs_accepted = 0;
};

using DesignSink = std::function<bool(const AcceptedDesign&)>;

// Process one configuration: all 1-factorizations, both lex-min rejection
// stages, fano completion, and the final canonical-subsystem rejection.
// Emits exactly one design per isomorphism class whose inner configuration
// matches the record (when run without limits).
ConfigRunStats run_pipeline(const configgen::ConfigRecord& record, int v,
                            const DesignSink& sink, const PipelineLimits& limits = {});

}  // namespace steiner::pipeline
