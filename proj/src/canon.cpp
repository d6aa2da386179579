#include "steiner/canon.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <deque>
#include <map>
#include <set>

#include "steiner/group.hpp"

namespace steiner::canon {

ColoredGraph::ColoredGraph(int n, int default_color)
    : n_(n), stride_((n + 63) / 64), color(n, default_color) {
  if (n < 0 || n > 256) throw input_error("ColoredGraph order must be in 0..256");
  adj_.assign(static_cast<std::size_t>(n) * stride_, 0);
}

void ColoredGraph::add_edge(int a, int b) {
  if (a == b) throw input_error("loop edge");
  if (a < 0 || b < 0 || a >= n_ || b >= n_) throw input_error("edge endpoint out of range");
  adj_[static_cast<std::size_t>(a) * stride_ + (b >> 6)] |= std::uint64_t{1} << (b & 63);
  adj_[static_cast<std::size_t>(b) * stride_ + (a >> 6)] |= std::uint64_t{1} << (a & 63);
}

int ColoredGraph::degree(int a) const {
  int d = 0;
  for (int w = 0; w < stride_; ++w) d += std::popcount(row(a)[w]);
  return d;
}

std::vector<std::uint8_t> serialize(const ColoredGraph& g) {
  int n = g.order();
  std::vector<std::uint8_t> out;
  out.reserve(4 + n + (static_cast<std::size_t>(n) * (n - 1) / 2 + 7) / 8);
  out.push_back(static_cast<std::uint8_t>(n >> 24));
  out.push_back(static_cast<std::uint8_t>(n >> 16));
  out.push_back(static_cast<std::uint8_t>(n >> 8));
  out.push_back(static_cast<std::uint8_t>(n));
  for (int i = 0; i < n; ++i) {
    if (g.color[i] < 0 || g.color[i] > 255) throw input_error("vertex color out of 0..255");
    out.push_back(static_cast<std::uint8_t>(g.color[i]));
  }
  std::uint8_t cur = 0;
  int bit = 7;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (g.edge(i, j)) cur |= static_cast<std::uint8_t>(1 << bit);
      if (--bit < 0) {
        out.push_back(cur);
        cur = 0;
        bit = 7;
      }
    }
  }
  if (bit != 7) out.push_back(cur);
  return out;
}

std::string to_hex(const std::vector<std::uint8_t>& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 15]);
  }
  return out;
}

ColoredGraph apply(const Permutation& p, const ColoredGraph& g) {
  ColoredGraph h(g.order());
  for (int v = 0; v < g.order(); ++v) h.color[p(static_cast<Point>(v))] = g.color[v];
  for (int a = 0; a < g.order(); ++a) {
    for (int b = a + 1; b < g.order(); ++b) {
      if (g.edge(a, b)) h.add_edge(p(static_cast<Point>(a)), p(static_cast<Point>(b)));
    }
  }
  return h;
}

namespace {

// Ordered partition of the vertices into contiguous cells.
struct Partition {
  std::vector<int> order;   // position -> vertex
  std::vector<int> pos;     // vertex -> position
  std::vector<int> cstart;  // position -> start of its cell
  std::vector<int> cend;    // position -> end of its cell (exclusive)

  bool discrete() const {
    for (std::size_t p = 0; p < order.size(); ++p) {
      if (cend[p] - cstart[p] != 1) return false;
    }
    return true;
  }
};

using Range = std::pair<int, int>;

class Searcher {
 public:
  explicit Searcher(const ColoredGraph& graph)
      : g_(graph), n_(graph.order()), words_(graph.stride()) {}

  CanonicalResult run() {
    Partition root = initial_partition();
    std::vector<std::uint32_t> trace;
    std::deque<Range> work;
    int p = 0;
    while (p < n_) {
      work.emplace_back(p, root.cend[p]);
      p = root.cend[p];
    }
    refine(root, std::move(work), trace);
    descend(root, std::move(trace));

    CanonicalResult result;
    std::vector<Point> img(n_);
    for (int i = 0; i < n_; ++i) img[best_lab_[i]] = static_cast<Point>(i);
    result.canonical_labeling = Permutation(std::move(img));
    result.canonical_bytes = std::move(best_bytes_);
    result.automorphism_generators = gens_;
    result.automorphism_order = group_order_from_generators(n_, gens_);
    return result;
  }

 private:
  enum class CmpState { kLess, kEqual, kWorse };

  Partition initial_partition() const {
    Partition P;
    P.order.resize(n_);
    P.pos.resize(n_);
    P.cstart.resize(n_);
    P.cend.resize(n_);
    for (int v = 0; v < n_; ++v) {
      if (g_.color[v] < 0) throw input_error("negative vertex color");
      P.order[v] = v;
    }
    std::stable_sort(P.order.begin(), P.order.end(),
                     [&](int a, int b) { return g_.color[a] < g_.color[b]; });
    for (int p = 0; p < n_; ++p) P.pos[P.order[p]] = p;
    int start = 0;
    for (int p = 0; p <= n_; ++p) {
      if (p == n_ || (p > 0 && g_.color[P.order[p]] != g_.color[P.order[p - 1]])) {
        for (int q = start; q < p; ++q) {
          P.cstart[q] = start;
          P.cend[q] = p;
        }
        start = p;
      }
    }
    return P;
  }

  // Split cells by neighbour counts against scatter ranges until the
  // partition is equitable. Appends split records to the trace.
  void refine(Partition& P, std::deque<Range> work, std::vector<std::uint32_t>& trace) {
    std::vector<std::uint64_t> scatter(words_);
    std::vector<std::pair<int, int>> kv;  // (key, vertex) for one cell
    while (true) {
      while (!work.empty()) {
        auto [ws, we] = work.front();
        work.pop_front();
        std::fill(scatter.begin(), scatter.end(), 0);
        for (int p = ws; p < we; ++p) {
          int v = P.order[p];
          scatter[v >> 6] |= std::uint64_t{1} << (v & 63);
        }
        int p = 0;
        while (p < n_) {
          int cs = p;
          int ce = P.cend[p];
          p = ce;
          if (ce - cs == 1) continue;
          kv.clear();
          int first_key = -1;
          bool uniform = true;
          for (int q = cs; q < ce; ++q) {
            int v = P.order[q];
            const std::uint64_t* row = g_.row(v);
            int key = 0;
            for (int w = 0; w < words_; ++w) key += std::popcount(row[w] & scatter[w]);
            if (first_key < 0) first_key = key;
            else if (key != first_key) uniform = false;
            kv.emplace_back(key, v);
          }
          if (uniform) continue;
          std::stable_sort(kv.begin(), kv.end(),
                           [](const auto& a, const auto& b) { return a.first < b.first; });
          trace.push_back(0x80000000u | static_cast<std::uint32_t>(cs));
          int sub_start = cs;
          for (int q = cs; q < ce; ++q) {
            P.order[q] = kv[q - cs].second;
            P.pos[P.order[q]] = q;
          }
          for (int q = cs; q <= ce; ++q) {
            bool boundary = (q == ce) || (q > cs && kv[q - cs].first != kv[q - cs - 1].first);
            if (boundary) {
              for (int t = sub_start; t < q; ++t) {
                P.cstart[t] = sub_start;
                P.cend[t] = q;
              }
              trace.push_back(static_cast<std::uint32_t>(kv[sub_start - cs].first));
              trace.push_back(static_cast<std::uint32_t>(q - sub_start));
              work.emplace_back(sub_start, q);
              sub_start = q;
            }
          }
        }
      }
      if (P.discrete()) break;
      // Verification sweep: requeue any cell that still scatters another.
      bool found = false;
      for (int wp = 0; wp < n_ && !found; wp = P.cend[wp]) {
        std::fill(scatter.begin(), scatter.end(), 0);
        for (int q = wp; q < P.cend[wp]; ++q) {
          int v = P.order[q];
          scatter[v >> 6] |= std::uint64_t{1} << (v & 63);
        }
        for (int cp = 0; cp < n_ && !found; cp = P.cend[cp]) {
          if (P.cend[cp] - cp == 1) continue;
          int key0 = -1;
          for (int q = cp; q < P.cend[cp]; ++q) {
            const std::uint64_t* row = g_.row(P.order[q]);
            int key = 0;
            for (int w = 0; w < words_; ++w) key += std::popcount(row[w] & scatter[w]);
            if (key0 < 0) key0 = key;
            else if (key != key0) {
              found = true;
              work.emplace_back(wp, P.cend[wp]);
              break;
            }
          }
        }
      }
      if (!found) break;
    }
    // Final shape record: cell sizes in order.
    trace.push_back(0xC0000000u);
    for (int p = 0; p < n_; p = P.cend[p]) {
      trace.push_back(static_cast<std::uint32_t>(P.cend[p] - p));
    }
  }

  int target_cell(const Partition& P) const {
    int best = -1, best_size = n_ + 1;
    for (int p = 0; p < n_; p = P.cend[p]) {
      int size = P.cend[p] - p;
      if (size > 1 && size < best_size) {
        best = p;
        best_size = size;
      }
    }
    return best;
  }

  std::vector<std::uint8_t> leaf_bytes(const Partition& P) const {
    std::vector<std::uint8_t> out;
    out.reserve(4 + n_ + (static_cast<std::size_t>(n_) * (n_ - 1) / 2 + 7) / 8);
    out.push_back(static_cast<std::uint8_t>(n_ >> 24));
    out.push_back(static_cast<std::uint8_t>(n_ >> 16));
    out.push_back(static_cast<std::uint8_t>(n_ >> 8));
    out.push_back(static_cast<std::uint8_t>(n_));
    for (int p = 0; p < n_; ++p) {
      int c = g_.color[P.order[p]];
      if (c > 255) throw input_error("vertex color out of 0..255");
      out.push_back(static_cast<std::uint8_t>(c));
    }
    std::uint8_t cur = 0;
    int bit = 7;
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) {
        if (g_.edge(P.order[i], P.order[j])) cur |= static_cast<std::uint8_t>(1 << bit);
        if (--bit < 0) {
          out.push_back(cur);
          cur = 0;
          bit = 7;
        }
      }
    }
    if (bit != 7) out.push_back(cur);
    return out;
  }

  void add_automorphism(const std::vector<int>& lab_a, const std::vector<int>& lab_b) {
    std::vector<Point> img(n_);
    for (int i = 0; i < n_; ++i) img[lab_a[i]] = static_cast<Point>(lab_b[i]);
    Permutation perm(std::move(img));
    if (perm.is_identity()) return;
    // Soundness: the map must preserve adjacency and colors exactly.
    for (int v = 0; v < n_; ++v) {
      if (g_.color[perm(static_cast<Point>(v))] != g_.color[v]) {
        throw data_error("canonical search produced a color-breaking map");
      }
    }
    for (int a = 0; a < n_; ++a) {
      for (int b = a + 1; b < n_; ++b) {
        if (g_.edge(a, b) != g_.edge(perm(static_cast<Point>(a)), perm(static_cast<Point>(b)))) {
          throw data_error("canonical search produced a non-automorphism");
        }
      }
    }
    if (gen_keys_.insert(perm.img).second) gens_.push_back(std::move(perm));
  }

  // Union-find over vertices using the discovered generators that fix the
  // current base pointwise.
  void rebuild_orbits(std::vector<int>& parent) const {
    parent.resize(n_);
    for (int i = 0; i < n_; ++i) parent[i] = i;
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& gen : gens_) {
      bool fixes_base = true;
      for (int b : base_) {
        if (gen(static_cast<Point>(b)) != b) {
          fixes_base = false;
          break;
        }
      }
      if (!fixes_base) continue;
      for (int v = 0; v < n_; ++v) {
        int a = find(v);
        int b = find(gen(static_cast<Point>(v)));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }

  void descend(const Partition& P, std::vector<std::uint32_t> trace) {
    std::size_t level = path_traces_.size();
    CmpState cmp_best = CmpState::kLess;
    bool eq_first = true;
    if (have_best_) {
      CmpState parent = path_cmp_.empty() ? CmpState::kEqual : path_cmp_.back();
      if (parent == CmpState::kEqual) {
        if (level >= best_traces_.size()) throw data_error("trace depth inconsistency");
        int c = compare(trace, best_traces_[level]);
        cmp_best = c < 0 ? CmpState::kLess : c > 0 ? CmpState::kWorse : CmpState::kEqual;
      } else {
        cmp_best = parent;
      }
    }
    if (have_first_) {
      bool parent_eq = path_eq_first_.empty() ? true : path_eq_first_.back();
      eq_first = parent_eq && level < first_traces_.size() && trace == first_traces_[level];
    }
    if (have_best_ && cmp_best == CmpState::kWorse && !eq_first) return;
    path_traces_.push_back(std::move(trace));
    path_cmp_.push_back(cmp_best);
    path_eq_first_.push_back(eq_first);

    if (P.discrete()) {
      handle_leaf(P);
      path_traces_.pop_back();
      path_cmp_.pop_back();
      path_eq_first_.pop_back();
      return;
    }

    int cell_start = target_cell(P);
    int cell_end = P.cend[cell_start];
    std::vector<int> candidates(P.order.begin() + cell_start, P.order.begin() + cell_end);

    std::vector<int> explored;
    std::vector<int> orbit_parent;
    std::size_t gens_at_build = SIZE_MAX;
    for (int v : candidates) {
      if (!explored.empty()) {
        if (gens_at_build != gens_.size()) {
          rebuild_orbits(orbit_parent);
          gens_at_build = gens_.size();
        }
        auto find = [&](int x) {
          while (orbit_parent[x] != x) x = orbit_parent[x] = orbit_parent[orbit_parent[x]];
          return x;
        };
        bool equivalent = false;
        int rv = find(v);
        for (int u : explored) {
          if (find(u) == rv) {
            equivalent = true;
            break;
          }
        }
        if (equivalent) continue;
      }
      explored.push_back(v);

      Partition child = P;
      int vp = child.pos[v];
      int other = child.order[cell_start];
      child.order[cell_start] = v;
      child.order[vp] = other;
      child.pos[v] = cell_start;
      child.pos[other] = vp;
      child.cstart[cell_start] = cell_start;
      child.cend[cell_start] = cell_start + 1;
      for (int q = cell_start + 1; q < cell_end; ++q) {
        child.cstart[q] = cell_start + 1;
        child.cend[q] = cell_end;
      }
      std::vector<std::uint32_t> child_trace;
      child_trace.push_back(0xE0000000u | static_cast<std::uint32_t>(cell_start));
      std::deque<Range> work;
      work.emplace_back(cell_start, cell_start + 1);
      if (cell_end - cell_start > 1) work.emplace_back(cell_start + 1, cell_end);
      refine(child, std::move(work), child_trace);

      base_.push_back(v);
      descend(child, std::move(child_trace));
      base_.pop_back();
    }
    path_traces_.pop_back();
    path_cmp_.pop_back();
    path_eq_first_.pop_back();
  }

  void handle_leaf(const Partition& P) {
    CmpState cmp_best = path_cmp_.back();
    bool eq_first = path_eq_first_.back();
    std::vector<std::uint8_t> bytes = leaf_bytes(P);
    if (!have_first_) {
      have_first_ = true;
      first_traces_ = path_traces_;
      first_bytes_ = bytes;
      first_lab_ = P.order;
      std::fill(path_eq_first_.begin(), path_eq_first_.end(), true);
    } else if (eq_first && path_traces_.size() == first_traces_.size() && bytes == first_bytes_) {
      add_automorphism(first_lab_, P.order);
    }
    bool take = false;
    if (!have_best_ || cmp_best == CmpState::kLess) {
      take = true;
    } else if (cmp_best == CmpState::kEqual) {
      if (bytes < best_bytes_) take = true;
      else if (bytes == best_bytes_) add_automorphism(best_lab_, P.order);
    }
    if (take) {
      have_best_ = true;
      best_traces_ = path_traces_;
      best_bytes_ = std::move(bytes);
      best_lab_ = P.order;
      // The new best runs through every node on the current stack, so the
      // whole prefix now compares equal.
      std::fill(path_cmp_.begin(), path_cmp_.end(), CmpState::kEqual);
    }
  }

  static int compare(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a == b) return 0;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()) ? -1 : 1;
  }

  const ColoredGraph& g_;
  int n_;
  int words_;

  std::vector<int> base_;
  std::vector<std::vector<std::uint32_t>> path_traces_;
  std::vector<CmpState> path_cmp_;
  std::vector<bool> path_eq_first_;

  bool have_first_ = false;
  std::vector<std::vector<std::uint32_t>> first_traces_;
  std::vector<std::uint8_t> first_bytes_;
  std::vector<int> first_lab_;

  bool have_best_ = false;
  std::vector<std::vector<std::uint32_t>> best_traces_;
  std::vector<std::uint8_t> best_bytes_;
  std::vector<int> best_lab_;

  std::vector<Permutation> gens_;
  std::set<std::vector<Point>> gen_keys_;
};

}  // namespace

CanonicalResult canonical_form(const ColoredGraph& g, int vertex_limit) {
  if (g.order() < 1) throw input_error("canonical_form requires at least one vertex");
  if (g.order() > vertex_limit) throw resource_error("graph exceeds canonical_form vertex limit");
  Searcher searcher(g);
  return searcher.run();
}

ColoredGraph encode_sts(const TripleSystem& s) {
  int v = s.v;
  int b = static_cast<int>(s.blocks.size());
  ColoredGraph g(v + b);
  for (int i = 0; i < v; ++i) g.color[i] = 0;
  for (int j = 0; j < b; ++j) {
    g.color[v + j] = 1;
    for (Point p : s.blocks[j]) g.add_edge(p, v + j);
  }
  return g;
}

ColoredGraph encode_configuration(const Configuration& c) {
  int m = c.m;
  int b = static_cast<int>(c.blocks.size());
  ColoredGraph g(m + b);
  for (int i = 0; i < m; ++i) g.color[i] = 0;
  for (int j = 0; j < b; ++j) {
    g.color[m + j] = 1;
    for (Point p : c.blocks[j]) g.add_edge(p, m + j);
  }
  return g;
}

ColoredGraph encode_sts_with_subsystems(const TripleSystem& s,
                                        const std::vector<std::vector<Point>>& subsystems) {
  // pair -> third point of the covering block
  std::vector<int> third(static_cast<std::size_t>(s.v) * s.v, -1);
  for (const auto& blk : s.blocks) {
    third[blk[0] * s.v + blk[1]] = blk[2];
    third[blk[0] * s.v + blk[2]] = blk[1];
    third[blk[1] * s.v + blk[2]] = blk[0];
  }
  for (const auto& sub : subsystems) {
    for (std::size_t i = 0; i < sub.size(); ++i) {
      if (sub[i] >= s.v) throw input_error("subsystem point out of range");
      for (std::size_t j = i + 1; j < sub.size(); ++j) {
        int t = third[sub[i] * s.v + sub[j]];
        if (t < 0 || !std::count(sub.begin(), sub.end(), static_cast<Point>(t))) {
          throw input_error("listed subsystem is not closed under blocks");
        }
      }
    }
  }
  ColoredGraph base = encode_sts(s);
  int v = s.v;
  int b = static_cast<int>(s.blocks.size());
  int k = static_cast<int>(subsystems.size());
  ColoredGraph g(v + b + k);
  g.color = base.color;
  g.color.resize(v + b + k, 2);
  for (int i = 0; i < v + b; ++i) {
    for (int j = i + 1; j < v + b; ++j) {
      if (base.edge(i, j)) g.add_edge(i, j);
    }
  }
  for (int t = 0; t < k; ++t) {
    for (Point p : subsystems[t]) g.add_edge(p, v + b + t);
  }
  return g;
}

SubsystemRanking canonical_subsystem_ranking(const TripleSystem& s,
                                             const std::vector<std::vector<Point>>& subsystems) {
  if (subsystems.empty()) throw input_error("subsystem list is empty");
  ColoredGraph g = encode_sts_with_subsystems(s, subsystems);
  CanonicalResult canon = canonical_form(g);
  int first_sub_vertex = s.v + static_cast<int>(s.blocks.size());
  int k = static_cast<int>(subsystems.size());

  auto orbit_partition = point_orbits(g.order(), canon.automorphism_generators);
  SubsystemRanking out;
  out.aut_order = canon.automorphism_order;
  std::vector<std::pair<int, std::vector<int>>> ranked;  // (canonical rank, member indices)
  for (const auto& orbit : orbit_partition) {
    if (orbit.front() < first_sub_vertex) continue;
    std::vector<int> members;
    int rank = g.order();
    for (int vertex : orbit) {
      members.push_back(vertex - first_sub_vertex);
      rank = std::min(rank, static_cast<int>(canon.canonical_labeling(static_cast<Point>(vertex))));
    }
    std::sort(members.begin(), members.end());
    ranked.emplace_back(rank, std::move(members));
  }
  std::sort(ranked.begin(), ranked.end());
  int total = 0;
  for (auto& [rank, members] : ranked) {
    total += static_cast<int>(members.size());
    out.orbits.push_back(std::move(members));
  }
  if (total != k) throw data_error("subsystem orbit partition is incomplete");

  // Designated representative of the first orbit: least relabeled point set.
  std::vector<Point> best_image;
  for (int idx : out.orbits.front()) {
    std::vector<Point> image;
    for (Point p : subsystems[idx]) image.push_back(canon.canonical_labeling(p));
    std::sort(image.begin(), image.end());
    if (best_image.empty() || image < best_image) {
      best_image = std::move(image);
      out.designated_representative = idx;
    }
  }
  return out;
}

}  // namespace steiner::canon
