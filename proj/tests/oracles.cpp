#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "steiner/errors.hpp"

namespace oracles {

std::uint64_t brute_force_aut_order(const steiner::canon::ColoredGraph& g) {
  int n = g.order();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t count = 0;
  do {
    bool ok = true;
    for (int v = 0; v < n && ok; ++v) {
      if (g.color[perm[v]] != g.color[v]) ok = false;
    }
    for (int a = 0; a < n && ok; ++a) {
      for (int b = a + 1; b < n; ++b) {
        if (g.edge(a, b) != g.edge(perm[a], perm[b])) {
          ok = false;
          break;
        }
      }
    }
    if (ok) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

namespace {

std::uint64_t matchings_rec(const PackedGraph& g, std::vector<bool>& used) {
  int v = -1;
  for (int i = 0; i < g.order(); ++i) {
    if (!used[i]) {
      v = i;
      break;
    }
  }
  if (v < 0) return 1;
  std::uint64_t total = 0;
  for (int w = 0; w < g.order(); ++w) {
    if (w == v || used[w] || !g.edge(v, w)) continue;
    used[v] = used[w] = true;
    total += matchings_rec(g, used);
    used[v] = used[w] = false;
  }
  return total;
}

}  // namespace

std::uint64_t brute_force_matching_count(const PackedGraph& g) {
  if (g.order() % 2 != 0) return 0;
  std::vector<bool> used(g.order(), false);
  return matchings_rec(g, used);
}

std::uint64_t brute_force_exact_cover_count(const steiner::kernels::ExactCoverInstance& inst) {
  if (inst.options.size() > 25) throw steiner::input_error("brute force limited to 25 options");
  if (inst.item_count > 64) throw steiner::input_error("brute force limited to 64 items");
  std::vector<std::uint64_t> masks;
  for (const auto& option : inst.options) {
    std::uint64_t m = 0;
    for (int item : option) m |= std::uint64_t{1} << item;
    masks.push_back(m);
  }
  std::uint64_t full = inst.item_count == 64 ? ~std::uint64_t{0}
                                             : (std::uint64_t{1} << inst.item_count) - 1;
  std::uint64_t count = 0;
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << inst.options.size()); ++pick) {
    std::uint64_t covered = 0;
    bool disjoint = true;
    for (std::size_t i = 0; i < masks.size() && disjoint; ++i) {
      if (!((pick >> i) & 1)) continue;
      if (covered & masks[i]) disjoint = false;
      covered |= masks[i];
    }
    if (disjoint && covered == full) ++count;
  }
  return count;
}

namespace {

std::uint64_t factorization_rec(const std::vector<std::uint64_t>& matching_masks,
                                const std::vector<std::vector<int>>& containing_edge,
                                std::uint64_t covered, std::uint64_t full) {
  if (covered == full) return 1;
  int lowest = 0;
  while ((covered >> lowest) & 1) ++lowest;
  std::uint64_t total = 0;
  for (int mi : containing_edge[lowest]) {
    if (matching_masks[mi] & covered) continue;
    total += factorization_rec(matching_masks, containing_edge, covered | matching_masks[mi], full);
  }
  return total;
}

}  // namespace

std::uint64_t brute_force_factorization_count(const PackedGraph& g,
                                              const std::vector<steiner::Factor>& matchings) {
  auto edges = g.edges();
  if (edges.size() > 63) throw steiner::input_error("brute force limited to 63 edges");
  auto edge_index = [&](const steiner::Edge& e) {
    return static_cast<int>(std::lower_bound(edges.begin(), edges.end(), e) - edges.begin());
  };
  std::vector<std::uint64_t> masks;
  std::vector<std::vector<int>> containing_edge(edges.size());
  for (std::size_t i = 0; i < matchings.size(); ++i) {
    std::uint64_t m = 0;
    for (const auto& e : matchings[i].edges) {
      int idx = edge_index(e);
      m |= std::uint64_t{1} << idx;
      containing_edge[idx].push_back(static_cast<int>(i));
    }
    masks.push_back(m);
  }
  std::uint64_t full = (std::uint64_t{1} << edges.size()) - 1;
  return factorization_rec(masks, containing_edge, 0, full);
}

namespace {

std::uint64_t labelled_sts_rec(int v, std::vector<std::uint8_t>& pair_used) {
  int a = -1, b = -1;
  for (int x = 0; x < v && a < 0; ++x) {
    for (int y = x + 1; y < v; ++y) {
      if (!pair_used[x * v + y]) {
        a = x;
        b = y;
        break;
      }
    }
  }
  if (a < 0) return 1;
  std::uint64_t total = 0;
  for (int c = b + 1; c < v; ++c) {
    if (pair_used[a * v + c] || pair_used[b * v + c]) continue;
    pair_used[a * v + b] = pair_used[a * v + c] = pair_used[b * v + c] = 1;
    total += labelled_sts_rec(v, pair_used);
    pair_used[a * v + b] = pair_used[a * v + c] = pair_used[b * v + c] = 0;
  }
  return total;
}

}  // namespace

std::uint64_t count_labelled_sts(int v) {
  if (v > 9) throw steiner::input_error("labelled census limited to v <= 9");
  std::vector<std::uint8_t> pair_used(static_cast<std::size_t>(v) * v, 0);
  return labelled_sts_rec(v, pair_used);
}

namespace {

std::uint64_t labelled_config_rec(int m, int r, int b_target, int placed, Block last,
                                  std::vector<int>& deg, std::vector<std::uint8_t>& pair_used) {
  if (placed == b_target) return 1;
  int u = -1;
  for (int p = 0; p < m; ++p) {
    if (deg[p] < r) {
      u = p;
      break;
    }
  }
  if (u < 0) return 0;
  std::uint64_t total = 0;
  for (int y = u + 1; y < m; ++y) {
    if (deg[y] >= r || pair_used[u * m + y]) continue;
    for (int z = y + 1; z < m; ++z) {
      if (deg[z] >= r || pair_used[u * m + z] || pair_used[y * m + z]) continue;
      Block blk{static_cast<Point>(u), static_cast<Point>(y), static_cast<Point>(z)};
      if (placed > 0 && !(last < blk)) continue;
      ++deg[u];
      ++deg[y];
      ++deg[z];
      pair_used[u * m + y] = pair_used[u * m + z] = pair_used[y * m + z] = 1;
      total += labelled_config_rec(m, r, b_target, placed + 1, blk, deg, pair_used);
      pair_used[u * m + y] = pair_used[u * m + z] = pair_used[y * m + z] = 0;
      --deg[u];
      --deg[y];
      --deg[z];
    }
  }
  return total;
}

}  // namespace

std::uint64_t count_labelled_configurations(int m, int r) {
  if (r == 0) return 1;
  if ((m * r) % 3 != 0) return 0;
  std::vector<int> deg(m, 0);
  std::vector<std::uint8_t> pair_used(static_cast<std::size_t>(m) * m, 0);
  return labelled_config_rec(m, r, m * r / 3, 0, Block{0, 0, 0}, deg, pair_used);
}

// ---- orderly classification of regular graphs over edge sequences ----

namespace {

// Lex-min test for sorted edge sequences, same scheme as the block version
// but written independently for pairs.
class EdgeLexmin {
 public:
  EdgeLexmin(int n, const std::vector<steiner::Edge>& edges) : n_(n), edges_(edges) {
    sigma_.assign(n, -1);
    edge_used_.assign(edges.size(), false);
  }

  bool minimal() { return !smaller(0); }

 private:
  steiner::Edge conceivable(const steiner::Edge& e) const {
    int vals[2];
    int cnt = 0;
    if (sigma_[e.first] >= 0) vals[cnt++] = sigma_[e.first];
    if (sigma_[e.second] >= 0) vals[cnt++] = sigma_[e.second];
    std::uint32_t free_mask = ~label_used_;
    for (int k = cnt; k < 2; ++k) {
      int label = std::countr_zero(free_mask);
      free_mask &= free_mask - 1;
      vals[k] = label;
    }
    if (vals[0] > vals[1]) std::swap(vals[0], vals[1]);
    return {static_cast<Point>(vals[0]), static_cast<Point>(vals[1])};
  }

  bool smaller(std::size_t t) {
    if (t == edges_.size()) return false;
    const steiner::Edge target = edges_[t];
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if (!edge_used_[i] && conceivable(edges_[i]) < target) return true;
    }
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if (edge_used_[i] || conceivable(edges_[i]) != target) continue;
      const auto& e = edges_[i];
      Point unassigned[2];
      int n_un = 0;
      std::uint32_t needed = (std::uint32_t{1} << target.first) | (std::uint32_t{1} << target.second);
      if (sigma_[e.first] >= 0) needed &= ~(std::uint32_t{1} << sigma_[e.first]);
      else unassigned[n_un++] = e.first;
      if (sigma_[e.second] >= 0) needed &= ~(std::uint32_t{1} << sigma_[e.second]);
      else unassigned[n_un++] = e.second;
      int labels[2];
      int n_lab = 0;
      while (needed) {
        labels[n_lab++] = std::countr_zero(needed);
        needed &= needed - 1;
      }
      edge_used_[i] = true;
      int order[2] = {0, 1};
      do {
        for (int k = 0; k < n_un; ++k) {
          sigma_[unassigned[k]] = labels[order[k]];
          label_used_ |= std::uint32_t{1} << labels[order[k]];
        }
        bool found = smaller(t + 1);
        for (int k = 0; k < n_un; ++k) {
          label_used_ &= ~(std::uint32_t{1} << labels[order[k]]);
          sigma_[unassigned[k]] = -1;
        }
        if (found) {
          edge_used_[i] = false;
          return true;
        }
      } while (std::next_permutation(order, order + n_un));
      edge_used_[i] = false;
    }
    return false;
  }

  int n_;
  const std::vector<steiner::Edge>& edges_;
  std::vector<int> sigma_;
  std::uint32_t label_used_ = 0;
  std::vector<bool> edge_used_;
};

void regular_graphs_rec(int n, int k, std::vector<steiner::Edge>& edges, std::vector<int>& deg,
                        std::vector<PackedGraph>& out) {
  if (edges.size() == static_cast<std::size_t>(n) * k / 2) {
    PackedGraph g(n);
    for (auto [a, b] : edges) g.add_edge(a, b);
    out.push_back(std::move(g));
    return;
  }
  int u = -1;
  for (int p = 0; p < n; ++p) {
    if (deg[p] < k) {
      u = p;
      break;
    }
  }
  if (u < 0) return;
  for (int w = u + 1; w < n; ++w) {
    if (deg[w] >= k) continue;
    steiner::Edge e{static_cast<Point>(u), static_cast<Point>(w)};
    if (!edges.empty() && !(edges.back() < e)) continue;
    edges.push_back(e);
    ++deg[u];
    ++deg[w];
    EdgeLexmin tester(n, edges);
    if (tester.minimal()) regular_graphs_rec(n, k, edges, deg, out);
    --deg[u];
    --deg[w];
    edges.pop_back();
  }
}

}  // namespace

std::vector<PackedGraph> classify_regular_graphs(int n, int k) {
  if ((n * k) % 2 != 0) return {};
  std::vector<steiner::Edge> edges;
  std::vector<int> deg(n, 0);
  std::vector<PackedGraph> out;
  regular_graphs_rec(n, k, edges, deg, out);
  return out;
}

PackedGraph petersen_graph() {
  PackedGraph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);        // outer cycle
    g.add_edge(5 + i, 5 + (i + 2) % 5);  // inner pentagram
    g.add_edge(i, 5 + i);              // spokes
  }
  return g;
}

TripleSystem fano_plane() {
  std::vector<Block> blocks;
  for (Point i = 0; i < 7; ++i) {
    blocks.push_back(steiner::make_block(i, (i + 1) % 7, (i + 3) % 7));
  }
  return TripleSystem(7, std::move(blocks));
}

TripleSystem cyclic_sts9() {
  std::vector<Block> blocks = {
      {0, 1, 2}, {3, 4, 5}, {6, 7, 8},  // rows
      {0, 3, 6}, {1, 4, 7}, {2, 5, 8},  // columns
      {0, 4, 8}, {1, 5, 6}, {2, 3, 7},  // one diagonal family
      {0, 5, 7}, {1, 3, 8}, {2, 4, 6},  // the other
  };
  return TripleSystem(9, std::move(blocks));
}

std::vector<Permutation> example108_generators() {
  using C = std::vector<Point>;
  Permutation g1 = Permutation::from_cycles(
      21, {C{0, 9, 19}, C{2, 10, 16}, C{3, 4, 20, 8, 7, 18}, C{5, 6, 15, 14, 11, 13}});
  Permutation g2 = Permutation::from_cycles(
      21, {C{0, 3, 4}, C{2, 5, 6}, C{7, 8, 9, 20, 18, 19}, C{10, 15, 13, 16, 11, 14}, C{12, 17}});
  return {g1, g2};
}

std::vector<Block> example108_representatives() {
  return {{0, 1, 2}, {0, 3, 6}, {0, 9, 19}, {0, 10, 17}, {1, 12, 17}, {2, 5, 6}, {2, 10, 16}};
}

steiner::canon::ColoredGraph random_colored_graph(int n, double edge_prob, int colors,
                                                  std::mt19937& rng) {
  steiner::canon::ColoredGraph g(n);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> color(0, colors - 1);
  for (int v = 0; v < n; ++v) g.color[v] = color(rng);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (coin(rng) < edge_prob) g.add_edge(a, b);
    }
  }
  return g;
}

PackedGraph random_graph(int n, double edge_prob, std::mt19937& rng) {
  PackedGraph g(n);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (coin(rng) < edge_prob) g.add_edge(a, b);
    }
  }
  return g;
}

Permutation random_permutation(int n, std::mt19937& rng) {
  std::vector<Point> img(n);
  std::iota(img.begin(), img.end(), Point{0});
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation(std::move(img));
}

}  // namespace oracles
