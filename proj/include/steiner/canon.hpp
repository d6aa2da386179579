#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "steiner/types.hpp"

namespace steiner::canon {

// Vertex-colored undirected graph, up to 256 vertices. Colors form the
// initial partition that all isomorphisms must respect.
class ColoredGraph {
 public:
  ColoredGraph() = default;
  explicit ColoredGraph(int n, int default_color = 0);

  int order() const { return n_; }
  int stride() const { return stride_; }
  bool edge(int a, int b) const {
    return (adj_[static_cast<std::size_t>(a) * stride_ + (b >> 6)] >> (b & 63)) & 1u;
  }
  void add_edge(int a, int b);
  const std::uint64_t* row(int a) const { return adj_.data() + static_cast<std::size_t>(a) * stride_; }
  int degree(int a) const;

  std::vector<int> color;

  bool operator==(const ColoredGraph&) const = default;

 private:
  int n_ = 0;
  int stride_ = 0;
  std::vector<std::uint64_t> adj_;
};

struct CanonicalResult {
  // Maps original vertex -> canonical position; applying it to the input
  // and serializing reproduces canonical_bytes.
  Permutation canonical_labeling;
  std::vector<std::uint8_t> canonical_bytes;
  std::vector<Permutation> automorphism_generators;
  std::uint64_t automorphism_order = 1;
};

// Canonical form and full color-preserving automorphism group.
// canonical_bytes agree for two graphs iff they are isomorphic.
CanonicalResult canonical_form(const ColoredGraph& g, int vertex_limit = 256);

// Serialization used for canonical_bytes: big-endian u32 order, one byte
// per vertex color, then the upper-triangle adjacency bits MSB-first.
std::vector<std::uint8_t> serialize(const ColoredGraph& g);

std::string to_hex(const std::vector<std::uint8_t>& bytes);

ColoredGraph apply(const Permutation& p, const ColoredGraph& g);

// Bipartite incidence encoding: one color-0 vertex per point, one color-1
// vertex per block, an edge for each incidence.
ColoredGraph encode_sts(const TripleSystem& s);
ColoredGraph encode_configuration(const Configuration& c);

// encode_sts plus one color-2 vertex per listed subsystem, adjacent to the
// subsystem's point-vertices. Each subsystem must be closed under blocks.
ColoredGraph encode_sts_with_subsystems(const TripleSystem& s,
                                        const std::vector<std::vector<Point>>& subsystems);

struct SubsystemRanking {
  // Orbits of the input subsystems under Aut(s), each orbit a sorted list
  // of indices into the input list, orbits in canonical order (first orbit
  // holds the canonically minimum subsystems).
  std::vector<std::vector<int>> orbits;
  // Within the first orbit: the subsystem whose point set is
  // lexicographically least after applying the canonical labeling.
  int designated_representative = -1;
  std::uint64_t aut_order = 1;
};

SubsystemRanking canonical_subsystem_ranking(const TripleSystem& s,
                                             const std::vector<std::vector<Point>>& subsystems);

}  // namespace steiner::canon
