#include "steiner/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <climits>
#include <map>

namespace steiner::kernels {

namespace {

// Dancing-links solver (Algorithm X). Item selection: fewest remaining
// options, ties by lowest item index.
class DlxSolver {
 public:
  DlxSolver(const ExactCoverInstance& inst, const ExactCoverVisitor& visitor)
      : inst_(inst), visitor_(visitor) {
    int items = inst.item_count;
    std::size_t node_total = items + 1;
    for (const auto& option : inst.options) node_total += option.size() + 1;
    left_.resize(items + 1);
    right_.resize(items + 1);
    up_.reserve(node_total);
    down_.reserve(node_total);
    item_of_.reserve(node_total);
    option_of_.reserve(node_total);
    len_.assign(items, 0);

    for (int i = 0; i <= items; ++i) {
      left_[i] = (i + items) % (items + 1);
      right_[i] = (i + 1) % (items + 1);
    }
    // Header nodes 0..items-1 double as column anchors in the vertical lists.
    for (int i = 0; i < items; ++i) {
      up_.push_back(i);
      down_.push_back(i);
      item_of_.push_back(i);
      option_of_.push_back(-1);
    }
    for (std::size_t oi = 0; oi < inst.options.size(); ++oi) {
      const auto& option = inst.options[oi];
      if (option.empty()) throw input_error("exact cover option is empty");
      int first = -1, prev = -1;
      for (std::size_t k = 0; k < option.size(); ++k) {
        int item = option[k];
        if (item < 0 || item >= items) throw input_error("exact cover item out of range");
        if (k > 0 && option[k] <= option[k - 1]) {
          throw input_error("exact cover option items must be strictly ascending");
        }
        int node = static_cast<int>(up_.size());
        up_.push_back(up_[item]);
        down_.push_back(item);
        down_[up_[item]] = node;
        up_[item] = node;
        item_of_.push_back(item);
        option_of_.push_back(static_cast<int>(oi));
        ++len_[item];
        if (first < 0) first = node;
        hleft_.push_back(prev < 0 ? node : prev);
        hright_.push_back(node);
        if (prev >= 0) hright_[prev - header_offset()] = node;
        prev = node;
      }
      hleft_[first - header_offset()] = prev;
      hright_[prev - header_offset()] = first;
    }
  }

  ExactCoverResult solve() {
    search();
    return result_;
  }

 private:
  int header_offset() const { return inst_.item_count; }
  int hl(int node) const { return hleft_[node - header_offset()]; }
  int hr(int node) const { return hright_[node - header_offset()]; }

  void cover(int item) {
    right_[left_[item]] = right_[item];
    left_[right_[item]] = left_[item];
    for (int r = down_[item]; r != item; r = down_[r]) {
      for (int c = hr(r); c != r; c = hr(c)) {
        up_[down_[c]] = up_[c];
        down_[up_[c]] = down_[c];
        --len_[item_of_[c]];
      }
    }
  }

  void uncover(int item) {
    for (int r = up_[item]; r != item; r = up_[r]) {
      for (int c = hl(r); c != r; c = hl(c)) {
        ++len_[item_of_[c]];
        up_[down_[c]] = c;
        down_[up_[c]] = c;
      }
    }
    right_[left_[item]] = item;
    left_[right_[item]] = item;
  }

  void search() {
    if (result_.aborted) return;
    int head = inst_.item_count;
    if (right_[head] == head) {
      ++result_.count;
      if (visitor_) {
        std::vector<int> chosen = stack_;
        std::sort(chosen.begin(), chosen.end());
        if (!visitor_(chosen)) result_.aborted = true;
      }
      return;
    }
    int best = -1, best_len = INT_MAX;
    for (int i = right_[head]; i != head; i = right_[i]) {
      if (len_[i] < best_len) {
        best_len = len_[i];
        best = i;
      }
    }
    if (best_len == 0) return;
    cover(best);
    for (int r = down_[best]; r != best && !result_.aborted; r = down_[r]) {
      stack_.push_back(option_of_[r]);
      for (int c = hr(r); c != r; c = hr(c)) cover(item_of_[c]);
      search();
      for (int c = hl(r); c != r; c = hl(c)) uncover(item_of_[c]);
      stack_.pop_back();
    }
    uncover(best);
  }

  const ExactCoverInstance& inst_;
  const ExactCoverVisitor& visitor_;
  std::vector<int> left_, right_;             // horizontal item header list
  std::vector<int> up_, down_;                // vertical lists (items + nodes)
  std::vector<int> hleft_, hright_;           // horizontal links of option nodes
  std::vector<int> item_of_, option_of_;
  std::vector<int> len_;
  std::vector<int> stack_;
  ExactCoverResult result_;
};

}  // namespace

ExactCoverResult exact_cover_enumerate(const ExactCoverInstance& inst,
                                       const ExactCoverVisitor& visitor) {
  if (inst.item_count < 0) throw input_error("negative item count");
  DlxSolver solver(inst, visitor);
  return solver.solve();
}

namespace {

void matchings_rec(const PackedGraph& g, std::uint64_t matched, std::uint64_t full,
                   std::vector<Edge>& current, std::vector<Factor>& out) {
  if (matched == full) {
    out.push_back(Factor{current});
    return;
  }
  int v = std::countr_zero(~matched & full);
  std::uint64_t candidates = g.row(v) & ~matched & full;
  while (candidates) {
    int u = std::countr_zero(candidates);
    candidates &= candidates - 1;
    current.emplace_back(static_cast<Point>(v), static_cast<Point>(u));
    matchings_rec(g, matched | (std::uint64_t{1} << v) | (std::uint64_t{1} << u), full, current,
                  out);
    current.pop_back();
  }
}

}  // namespace

std::vector<Factor> perfect_matchings(const PackedGraph& g) {
  std::vector<Factor> out;
  if (g.order() == 0 || g.order() % 2 != 0) return out;
  std::uint64_t full =
      g.order() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.order()) - 1;
  std::vector<Edge> current;
  current.reserve(g.order() / 2);
  matchings_rec(g, 0, full, current, out);
  return out;
}

ExactCoverResult for_each_one_factorization(
    const PackedGraph& g, const std::vector<Factor>& factors,
    const std::function<bool(const Factorization&)>& visitor) {
  std::vector<Edge> edges = g.edges();
  std::map<Edge, int> edge_index;
  for (std::size_t i = 0; i < edges.size(); ++i) edge_index[edges[i]] = static_cast<int>(i);

  ExactCoverInstance inst;
  inst.item_count = static_cast<int>(edges.size());
  inst.options.reserve(factors.size());
  for (const auto& f : factors) {
    std::vector<int> option;
    option.reserve(f.edges.size());
    for (const auto& e : f.edges) {
      auto it = edge_index.find(e);
      if (it == edge_index.end()) throw input_error("factor edge not in host graph");
      option.push_back(it->second);
    }
    std::sort(option.begin(), option.end());
    inst.options.push_back(std::move(option));
  }

  return exact_cover_enumerate(inst, [&](const std::vector<int>& chosen) {
    Factorization fact;
    fact.factors.reserve(chosen.size());
    for (int idx : chosen) fact.factors.push_back(factors[idx]);
    std::sort(fact.factors.begin(), fact.factors.end());
    assert(validate_factorization(g, fact).ok);
    return visitor(fact);
  });
}

std::vector<Factorization> one_factorizations(const PackedGraph& g,
                                              const std::vector<Factor>& factors) {
  std::vector<Factorization> out;
  for_each_one_factorization(g, factors, [&](const Factorization& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

std::vector<std::vector<Block>> triangle_decompositions(const PackedGraph& g) {
  std::vector<Edge> edges = g.edges();
  std::map<Edge, int> edge_index;
  for (std::size_t i = 0; i < edges.size(); ++i) edge_index[edges[i]] = static_cast<int>(i);

  std::vector<Block> triangles;
  for (int i = 0; i < g.order(); ++i) {
    for (int j = i + 1; j < g.order(); ++j) {
      if (!g.edge(i, j)) continue;
      std::uint64_t above = j >= 63 ? 0 : ~std::uint64_t{0} << (j + 1);
      std::uint64_t bits = g.row(i) & g.row(j) & above;
      while (bits) {
        int k = std::countr_zero(bits);
        bits &= bits - 1;
        triangles.push_back(Block{static_cast<Point>(i), static_cast<Point>(j), static_cast<Point>(k)});
      }
    }
  }

  ExactCoverInstance inst;
  inst.item_count = static_cast<int>(edges.size());
  inst.options.reserve(triangles.size());
  for (const auto& t : triangles) {
    std::vector<int> option{edge_index[{t[0], t[1]}], edge_index[{t[0], t[2]}],
                            edge_index[{t[1], t[2]}]};
    std::sort(option.begin(), option.end());
    inst.options.push_back(std::move(option));
  }

  std::vector<std::vector<Block>> out;
  exact_cover_enumerate(inst, [&](const std::vector<int>& chosen) {
    std::vector<Block> blocks;
    blocks.reserve(chosen.size());
    for (int idx : chosen) blocks.push_back(triangles[idx]);
    std::sort(blocks.begin(), blocks.end());
    out.push_back(std::move(blocks));
    return true;
  });
  return out;
}

}  // namespace steiner::kernels
