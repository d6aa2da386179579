#include "steiner/types.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace steiner {

Block make_block(Point a, Point b, Point c) {
  Block blk{a, b, c};
  std::sort(blk.begin(), blk.end());
  if (blk[0] == blk[1] || blk[1] == blk[2]) {
    throw input_error("block has repeated points");
  }
  return blk;
}

TripleSystem::TripleSystem(int v_, std::vector<Block> blocks_)
    : v(v_), blocks(std::move(blocks_)) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end());
  blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
}

Configuration::Configuration(int m_, int r_, std::vector<Block> blocks_)
    : m(m_), r(r_), blocks(std::move(blocks_)) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end());
  blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
}

PackedGraph::PackedGraph(int n) : n_(n), rows_(n, 0) {
  if (n < 0 || n > 64) throw input_error("PackedGraph order must be in 0..64");
}

void PackedGraph::add_edge(int a, int b) {
  if (a == b) throw input_error("loop edge");
  if (a < 0 || b < 0 || a >= n_ || b >= n_) throw input_error("edge endpoint out of range");
  rows_[a] |= std::uint64_t{1} << b;
  rows_[b] |= std::uint64_t{1} << a;
}

int PackedGraph::degree(int a) const { return std::popcount(rows_[a]); }

int PackedGraph::edge_count() const {
  int total = 0;
  for (int i = 0; i < n_; ++i) total += degree(i);
  return total / 2;
}

std::vector<Edge> PackedGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (int a = 0; a < n_; ++a) {
    std::uint64_t bits = rows_[a] >> (a + 1) << (a + 1);
    while (bits) {
      int b = std::countr_zero(bits);
      bits &= bits - 1;
      out.emplace_back(static_cast<Point>(a), static_cast<Point>(b));
    }
  }
  return out;
}

int PackedGraph::regular_degree() const {
  if (n_ == 0) return 0;
  int d = degree(0);
  for (int i = 1; i < n_; ++i) {
    if (degree(i) != d) return -1;
  }
  return d;
}

PackedGraph PackedGraph::complete(int n) {
  PackedGraph g(n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) g.add_edge(a, b);
  }
  return g;
}

Permutation::Permutation(std::vector<Point> image) : img(std::move(image)) {
  std::vector<bool> seen(img.size(), false);
  for (Point p : img) {
    if (p >= img.size() || seen[p]) throw input_error("image array is not a permutation");
    seen[p] = true;
  }
}

Permutation Permutation::identity(int n) {
  Permutation p;
  p.img.resize(n);
  std::iota(p.img.begin(), p.img.end(), Point{0});
  return p;
}

Permutation Permutation::from_cycles(int n, const std::vector<std::vector<Point>>& cycles) {
  Permutation p = identity(n);
  for (const auto& cyc : cycles) {
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      Point from = cyc[i];
      Point to = cyc[(i + 1) % cyc.size()];
      if (from >= n || to >= n) throw input_error("cycle point out of range");
      p.img[from] = to;
    }
  }
  // Re-validate: overlapping cycles can silently break bijectivity.
  return Permutation(std::move(p.img));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < img.size(); ++i) {
    if (img[i] != i) return false;
  }
  return true;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.img.resize(img.size());
  for (std::size_t i = 0; i < img.size(); ++i) p.img[img[i]] = static_cast<Point>(i);
  return p;
}

Permutation Permutation::after(const Permutation& q) const {
  Permutation p;
  p.img.resize(img.size());
  for (std::size_t i = 0; i < img.size(); ++i) p.img[i] = img[q.img[i]];
  return p;
}

int Permutation::order() const {
  std::vector<bool> seen(img.size(), false);
  long long ord = 1;
  for (std::size_t i = 0; i < img.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    std::size_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = img[j];
      ++len;
    }
    ord = std::lcm(ord, static_cast<long long>(len));
  }
  return static_cast<int>(ord);
}

bool is_admissible_order(long long v) {
  if (v < 1) throw input_error("order must be positive");
  long long rem = v % 6;
  return rem == 1 || rem == 3;
}

ValidationResult validate_sts(const TripleSystem& s) {
  if (s.v < 3) return {false, "order below 3"};
  for (const auto& b : s.blocks) {
    if (b[2] >= s.v) throw input_error("block point out of range");
    if (b[0] == b[1] || b[1] == b[2]) throw input_error("block has repeated points");
  }
  std::vector<std::uint8_t> covered(static_cast<std::size_t>(s.v) * s.v, 0);
  auto at = [&](Point a, Point b) -> std::uint8_t& { return covered[a * s.v + b]; };
  for (const auto& b : s.blocks) {
    const Point p[3][2] = {{b[0], b[1]}, {b[0], b[2]}, {b[1], b[2]}};
    for (auto& pr : p) {
      if (at(pr[0], pr[1])++) {
        return {false, "pair {" + std::to_string(pr[0]) + "," + std::to_string(pr[1]) +
                           "} covered more than once"};
      }
    }
  }
  for (Point a = 0; a < s.v; ++a) {
    for (Point b = a + 1; b < s.v; ++b) {
      if (!at(a, b)) {
        return {false,
                "pair {" + std::to_string(a) + "," + std::to_string(b) + "} uncovered"};
      }
    }
  }
  return {};
}

ValidationResult validate_configuration(const Configuration& c) {
  if (c.m < 0 || c.r < 0) return {false, "negative parameters"};
  std::vector<int> deg(c.m, 0);
  std::vector<std::uint8_t> pair_used(static_cast<std::size_t>(c.m) * c.m, 0);
  for (const auto& b : c.blocks) {
    if (b[2] >= c.m) throw input_error("block point out of range");
    if (b[0] == b[1] || b[1] == b[2]) throw input_error("block has repeated points");
    for (Point p : b) ++deg[p];
    const Point pr[3][2] = {{b[0], b[1]}, {b[0], b[2]}, {b[1], b[2]}};
    for (auto& e : pr) {
      if (pair_used[e[0] * c.m + e[1]]++) {
        return {false, "blocks share two points at pair {" + std::to_string(e[0]) + "," +
                           std::to_string(e[1]) + "}"};
      }
    }
  }
  for (int p = 0; p < c.m; ++p) {
    if (deg[p] != c.r) {
      return {false, "point " + std::to_string(p) + " lies in " + std::to_string(deg[p]) +
                         " blocks, expected " + std::to_string(c.r)};
    }
  }
  return {};
}

ValidationResult validate_factor(const PackedGraph& g, const Factor& f) {
  std::uint64_t seen = 0;
  for (auto [a, b] : f.edges) {
    if (a >= g.order() || b >= g.order()) return {false, "factor endpoint out of range"};
    if (!g.edge(a, b)) return {false, "factor uses a non-edge"};
    std::uint64_t mask = (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
    if (seen & mask) return {false, "factor edges not disjoint"};
    seen |= mask;
  }
  std::uint64_t all =
      g.order() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.order()) - 1;
  if (seen != all) return {false, "factor does not cover all vertices"};
  return {};
}

ValidationResult validate_factorization(const PackedGraph& g, const Factorization& f) {
  std::vector<std::uint8_t> used(64 * 64, 0);
  int covered = 0;
  for (const auto& factor : f.factors) {
    if (auto res = validate_factor(g, factor); !res) return res;
    for (auto [a, b] : factor.edges) {
      if (used[a * 64 + b]++) return {false, "edge used by two factors"};
      ++covered;
    }
  }
  if (covered != g.edge_count()) return {false, "factors do not cover all edges"};
  return {};
}

PackedGraph complement(const PackedGraph& g) {
  PackedGraph h(g.order());
  for (int a = 0; a < g.order(); ++a) {
    for (int b = a + 1; b < g.order(); ++b) {
      if (!g.edge(a, b)) h.add_edge(a, b);
    }
  }
  return h;
}

PackedGraph underlying_graph(const Configuration& c) {
  PackedGraph g(c.m);
  for (const auto& b : c.blocks) {
    g.add_edge(b[0], b[1]);
    g.add_edge(b[0], b[2]);
    g.add_edge(b[1], b[2]);
  }
  return g;
}

Block apply(const Permutation& p, const Block& b) {
  return make_block(p(b[0]), p(b[1]), p(b[2]));
}

TripleSystem apply(const Permutation& p, const TripleSystem& s) {
  std::vector<Block> blocks;
  blocks.reserve(s.blocks.size());
  for (const auto& b : s.blocks) blocks.push_back(apply(p, b));
  return TripleSystem(s.v, std::move(blocks));
}

Configuration apply(const Permutation& p, const Configuration& c) {
  std::vector<Block> blocks;
  blocks.reserve(c.blocks.size());
  for (const auto& b : c.blocks) blocks.push_back(apply(p, b));
  return Configuration(c.m, c.r, std::move(blocks));
}

PackedGraph apply(const Permutation& p, const PackedGraph& g) {
  PackedGraph h(g.order());
  for (auto [a, b] : g.edges()) h.add_edge(p(a), p(b));
  return h;
}

Factor apply(const Permutation& p, const Factor& f) {
  Factor out;
  out.edges.reserve(f.edges.size());
  for (auto [a, b] : f.edges) out.edges.push_back(make_edge(p(a), p(b)));
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

}  // namespace steiner
