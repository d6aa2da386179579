#pragma once

#include <cstdint>
#include <vector>

#include "steiner/types.hpp"

namespace steiner {

// A permutation group given by generators, with the full element list
// materialized by closure. Intended for the small groups of this pipeline;
// the cap guards degenerate inputs.
struct PermutationGroup {
  int degree = 0;
  std::vector<Permutation> generators;
  std::vector<Permutation> elements;  // sorted lexicographically by image array
  std::uint64_t order = 1;

  bool contains(const Permutation& p) const;
};

constexpr std::size_t kDefaultElementCap = 1'000'000;

// Breadth-first product closure of the generators. Throws resource_error
// when the element count exceeds the cap.
PermutationGroup group_from_generators(int degree, std::vector<Permutation> generators,
                                       std::size_t element_cap = kDefaultElementCap);

// Orders of all elements including the identity, sorted ascending.
std::vector<int> element_order_multiset(const PermutationGroup& g);

// Blocks = union of the orbits of the representatives under the group
// generated by `generators` (closure not materialized; orbits only).
TripleSystem construct_from_group_orbits(int n, const std::vector<Permutation>& generators,
                                         const std::vector<Block>& representatives);

// Group order from a generator list via a stabilizer chain; does not
// materialize elements, so it handles groups far beyond the closure cap.
// Throws resource_error if the order overflows 64 bits.
std::uint64_t group_order_from_generators(int degree,
                                          const std::vector<Permutation>& generators);

// Orbit partition of 0..degree-1 under the generators; each orbit sorted,
// orbits ordered by smallest member.
std::vector<std::vector<int>> point_orbits(int degree,
                                           const std::vector<Permutation>& generators);

}  // namespace steiner
