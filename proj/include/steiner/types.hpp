#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "steiner/errors.hpp"

namespace steiner {

using Point = std::uint16_t;

// A block is a 3-subset of points, stored sorted ascending.
using Block = std::array<Point, 3>;

Block make_block(Point a, Point b, Point c);

// An edge is a 2-subset, stored (min, max).
using Edge = std::pair<Point, Point>;

inline Edge make_edge(Point a, Point b) {
  return a < b ? Edge{a, b} : Edge{b, a};
}

// Outcome of a structural validation. Carries the first violation found.
struct ValidationResult {
  bool ok = true;
  std::string message;
  explicit operator bool() const { return ok; }
};

// A triple system (V, B): v points 0..v-1 and a set of 3-element blocks,
// stored sorted lexicographically with no duplicates.
struct TripleSystem {
  int v = 0;
  std::vector<Block> blocks;

  TripleSystem() = default;
  TripleSystem(int v_, std::vector<Block> blocks_);

  bool operator==(const TripleSystem&) const = default;
};

// A triangle configuration: m points, blocks of size 3, every point in
// exactly r blocks, two blocks sharing at most one point.
struct Configuration {
  int m = 0;
  int r = 0;
  std::vector<Block> blocks;

  Configuration() = default;
  Configuration(int m_, int r_, std::vector<Block> blocks_);

  bool operator==(const Configuration&) const = default;
};

// Dense undirected graph on at most 64 vertices, one adjacency word per row.
class PackedGraph {
 public:
  PackedGraph() = default;
  explicit PackedGraph(int n);

  int order() const { return n_; }
  bool edge(int a, int b) const { return (rows_[a] >> b) & 1u; }
  void add_edge(int a, int b);
  std::uint64_t row(int a) const { return rows_[a]; }
  int degree(int a) const;
  int edge_count() const;
  // Edges in lexicographic (min, max) order.
  std::vector<Edge> edges() const;
  // -1 when not regular, the common degree otherwise.
  int regular_degree() const;

  static PackedGraph complete(int n);

  bool operator==(const PackedGraph&) const = default;

 private:
  int n_ = 0;
  std::vector<std::uint64_t> rows_;
};

// A bijection on 0..n-1, stored as its image array.
struct Permutation {
  std::vector<Point> img;

  Permutation() = default;
  explicit Permutation(std::vector<Point> image);

  static Permutation identity(int n);
  // Cycle notation; points absent from every cycle are fixed.
  static Permutation from_cycles(int n, const std::vector<std::vector<Point>>& cycles);

  int degree() const { return static_cast<int>(img.size()); }
  Point operator()(Point p) const { return img[p]; }
  bool is_identity() const;
  Permutation inverse() const;
  // Composition: (p.after(q))(x) = p(q(x)).
  Permutation after(const Permutation& q) const;
  int order() const;

  auto operator<=>(const Permutation&) const = default;
};

// A perfect matching of a host graph: pairwise disjoint edges covering
// every vertex, stored in lexicographic edge order.
struct Factor {
  std::vector<Edge> edges;

  auto operator<=>(const Factor&) const = default;
};

// An ordered sequence of pairwise edge-disjoint factors partitioning the
// edge set of the host graph.
struct Factorization {
  std::vector<Factor> factors;

  auto operator<=>(const Factorization&) const = default;
};

// --- core predicates and constructions ---

// true iff v = 1 or 3 (mod 6).
bool is_admissible_order(long long v);

// Every 2-subset of points covered exactly once.
ValidationResult validate_sts(const TripleSystem& s);

// Replication exactly r at every point, pairwise block intersections <= 1.
ValidationResult validate_configuration(const Configuration& c);

// Factor covers all vertices of g with disjoint edges of g.
ValidationResult validate_factor(const PackedGraph& g, const Factor& f);

// Factors pairwise edge-disjoint and exactly partitioning g's edges.
ValidationResult validate_factorization(const PackedGraph& g, const Factorization& f);

PackedGraph complement(const PackedGraph& g);

// Union of the three edges of each block, as a graph on the point set.
PackedGraph underlying_graph(const Configuration& c);

// --- permutation actions ---

Block apply(const Permutation& p, const Block& b);
TripleSystem apply(const Permutation& p, const TripleSystem& s);
Configuration apply(const Permutation& p, const Configuration& c);
PackedGraph apply(const Permutation& p, const PackedGraph& g);
Factor apply(const Permutation& p, const Factor& f);

}  // namespace steiner
