#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "steiner/group.hpp"
#include "steiner/types.hpp"

namespace steiner::configgen {

// One isomorphism class of (m, r) triangle configurations with the derived
// data the extension pipeline needs.
struct ConfigRecord {
  Configuration config;
  PermutationGroup aut;            // automorphism group on the points
  PackedGraph underlying;          // union of the block triangles
  PackedGraph complement_graph;    // complement of the underlying graph
  std::vector<std::uint8_t> canonical_bytes;
  bool wilson_flag = false;        // two disjoint order-7 subsystems
};

// All (m, r) triangle configurations up to isomorphism, one validated record
// per class, ordered by canonical_bytes. Infeasible parameters give an
// empty list. With threads > 1 the search tree is partitioned at a fixed
// depth and subtrees run concurrently; output is identical either way.
std::vector<ConfigRecord> classify_configurations(int m, int r, int threads = 1);

// Number of isomorphism classes among the underlying graphs.
std::size_t underlying_graph_classes(const std::vector<ConfigRecord>& records);

// (order, multiplicity) pairs sorted by order.
std::vector<std::pair<std::uint64_t, std::uint64_t>> aut_order_distribution(
    const std::vector<ConfigRecord>& records);

// Render a distribution as "o1^m1 o2^m2 ...".
std::string format_distribution(
    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& distribution);

// Drop the Wilson-flagged record; throws data_error when none is present.
std::vector<ConfigRecord> exclude_wilson(std::vector<ConfigRecord> records);

// Build the derived record for a single configuration (used for records
// loaded from disk as well as freshly generated ones).
ConfigRecord make_record(Configuration config);

}  // namespace steiner::configgen
