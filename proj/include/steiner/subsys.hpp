#pragma once

#include <cstdint>
#include <vector>

#include "steiner/types.hpp"

namespace steiner::subsys {

// pair -> the third point of the covering block; -1 for uncovered pairs.
// The table is the precomputation shared by all closure calls on a design.
struct PairTable {
  int v = 0;
  std::vector<int> third;  // v*v entries

  int lookup(Point a, Point b) const { return third[a * v + b]; }
};

PairTable make_pair_table(const TripleSystem& s);

// Least superset of `seed` closed under block completion.
std::vector<Point> closure(const PairTable& table, std::vector<Point> seed);

// All point sets of sub-STS(w); w is 7 or 9. Sorted, deduplicated.
std::vector<std::vector<Point>> find_subsystems(const TripleSystem& s, int w);
std::vector<std::vector<Point>> find_subsystems(const PairTable& table, int w);

struct IntersectionStats {
  std::uint64_t u = 0;   // number of order-7 subsystems
  std::uint64_t i1 = 0;  // unordered pairs meeting in 1 point
  std::uint64_t i3 = 0;  // unordered pairs meeting in 3 points
  std::uint64_t i0 = 0;  // disjoint unordered pairs
};

IntersectionStats intersection_stats(const std::vector<std::vector<Point>>& subsystems7);

// Independent oracle: scan every w-subset. Guarded by a subset-count cap.
std::vector<std::vector<Point>> brute_force_subsystems(const TripleSystem& s, int w,
                                                       std::uint64_t subset_cap = 10'000'000);

}  // namespace steiner::subsys
