#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "steiner/types.hpp"

namespace steiner::kernels {

// Exact cover: choose options partitioning the item universe.
struct ExactCoverInstance {
  int item_count = 0;
  std::vector<std::vector<int>> options;  // each a strictly ascending item list
};

struct ExactCoverResult {
  std::uint64_t count = 0;
  bool aborted = false;
};

// Visitor receives the chosen option indices sorted ascending; returning
// false aborts the enumeration. A null visitor just counts.
using ExactCoverVisitor = std::function<bool(const std::vector<int>&)>;

ExactCoverResult exact_cover_enumerate(const ExactCoverInstance& inst,
                                       const ExactCoverVisitor& visitor);

// All perfect matchings in deterministic order: branch on the lowest-index
// unmatched vertex, neighbours ascending. Odd order yields an empty list.
std::vector<Factor> perfect_matchings(const PackedGraph& g);

// All unordered 1-factorizations of g, each as the lexicographically sorted
// sequence of its factors. `factors` must be perfect_matchings(g).
std::vector<Factorization> one_factorizations(const PackedGraph& g,
                                              const std::vector<Factor>& factors);

// Streaming form used when the factorization count is too large to hold.
ExactCoverResult for_each_one_factorization(const PackedGraph& g,
                                            const std::vector<Factor>& factors,
                                            const std::function<bool(const Factorization&)>& visitor);

// All partitions of g's edge set into triangles.
std::vector<std::vector<Block>> triangle_decompositions(const PackedGraph& g);

}  // namespace steiner::kernels
