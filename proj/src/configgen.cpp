#include "steiner/configgen.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <functional>
#include <mutex>
#include <thread>

#include "lexmin.hpp"
#include "steiner/canon.hpp"

namespace steiner::configgen {

namespace {

std::vector<std::vector<int>> graph_components(const PackedGraph& g) {
  std::vector<int> parent(g.order());
  for (int i = 0; i < g.order(); ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : g.edges()) {
    int ra = find(a), rb = find(b);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::vector<std::vector<int>> comps(g.order());
  for (int p = 0; p < g.order(); ++p) comps[find(p)].push_back(p);
  std::erase_if(comps, [](const auto& c) { return c.empty(); });
  return comps;
}

// Depth-first extension of sorted block sequences: the next block starts at
// the smallest point still below replication r, and only prefixes that are
// lexicographic minima of their class are kept.
class ConfigSearch {
 public:
  ConfigSearch(int m, int r) : m_(m), r_(r), block_target_(m * r / 3) {
    deg_.assign(m, 0);
    pair_used_.assign(static_cast<std::size_t>(m) * m, 0);
  }

  // Enumerate completions of `prefix`; emit full configurations. If
  // `collect_at` is non-negative, stop descending at that depth and emit
  // the partial prefixes instead (used to partition work across threads).
  void run(const std::vector<Block>& prefix, int collect_at,
           const std::function<void(const std::vector<Block>&)>& emit) {
    blocks_ = prefix;
    for (const auto& b : blocks_) {
      for (Point p : b) ++deg_[p];
      mark_pairs(b, 1);
    }
    emit_ = &emit;
    collect_at_ = collect_at;
    extend();
    for (const auto& b : blocks_) {
      for (Point p : b) --deg_[p];
      mark_pairs(b, 0);
    }
  }

 private:
  void mark_pairs(const Block& b, std::uint8_t value) {
    pair_used_[b[0] * m_ + b[1]] = value;
    pair_used_[b[0] * m_ + b[2]] = value;
    pair_used_[b[1] * m_ + b[2]] = value;
  }

  bool pair_free(int a, int b) const { return !pair_used_[a * m_ + b]; }

  void extend() {
    if (static_cast<int>(blocks_.size()) == block_target_) {
      (*emit_)(blocks_);
      return;
    }
    if (collect_at_ >= 0 && static_cast<int>(blocks_.size()) == collect_at_) {
      (*emit_)(blocks_);
      return;
    }
    int u = -1;
    for (int p = 0; p < m_; ++p) {
      if (deg_[p] < r_) {
        u = p;
        break;
      }
    }
    if (u < 0) return;  // all points saturated but block count short
    // The deficient point needs two fresh partners per missing block.
    int partners = 0;
    for (int w = 0; w < m_; ++w) {
      if (w != u && deg_[w] < r_ && pair_free(std::min(w, u), std::max(w, u))) ++partners;
    }
    if (partners < 2 * (r_ - deg_[u])) return;

    const Block* last = blocks_.empty() ? nullptr : &blocks_.back();
    for (int y = u + 1; y < m_; ++y) {
      if (deg_[y] >= r_ || !pair_free(u, y)) continue;
      for (int z = y + 1; z < m_; ++z) {
        if (deg_[z] >= r_ || !pair_free(u, z) || !pair_free(y, z)) continue;
        Block b{static_cast<Point>(u), static_cast<Point>(y), static_cast<Point>(z)};
        if (last && !(*last < b)) continue;
        blocks_.push_back(b);
        ++deg_[u];
        ++deg_[y];
        ++deg_[z];
        mark_pairs(b, 1);
        if (detail::is_lexmin_block_sequence(m_, blocks_)) extend();
        mark_pairs(b, 0);
        --deg_[u];
        --deg_[y];
        --deg_[z];
        blocks_.pop_back();
      }
    }
  }

  int m_, r_, block_target_;
  std::vector<int> deg_;
  std::vector<std::uint8_t> pair_used_;
  std::vector<Block> blocks_;
  const std::function<void(const std::vector<Block>&)>* emit_ = nullptr;
  int collect_at_ = -1;
};

}  // namespace

ConfigRecord make_record(Configuration config) {
  ConfigRecord rec;
  if (auto res = validate_configuration(config); !res) {
    throw data_error("invalid configuration: " + res.message);
  }
  rec.underlying = underlying_graph(config);
  rec.complement_graph = complement(rec.underlying);

  canon::CanonicalResult canonical = canon::canonical_form(canon::encode_configuration(config));
  rec.canonical_bytes = std::move(canonical.canonical_bytes);
  std::vector<Permutation> point_gens;
  for (const auto& g : canonical.automorphism_generators) {
    std::vector<Point> img(g.img.begin(), g.img.begin() + config.m);
    point_gens.push_back(Permutation(std::move(img)));
  }
  rec.aut = group_from_generators(config.m, std::move(point_gens));
  if (rec.aut.order != canonical.automorphism_order) {
    throw data_error("configuration group order mismatch");
  }

  // Wilson shape: two connected components of 7 points, each an STS(7).
  rec.wilson_flag = false;
  if (config.m == 14 && config.r == 3) {
    auto comps = graph_components(rec.underlying);
    if (comps.size() == 2 && comps[0].size() == 7 && comps[1].size() == 7) {
      rec.wilson_flag = true;
      for (const auto& comp : comps) {
        std::vector<std::uint8_t> in_comp(config.m, 0);
        for (int p : comp) in_comp[p] = 1;
        int blocks_inside = 0;
        for (const auto& b : config.blocks) {
          if (in_comp[b[0]] && in_comp[b[1]] && in_comp[b[2]]) ++blocks_inside;
        }
        if (blocks_inside != 7) rec.wilson_flag = false;
      }
    }
  }
  rec.config = std::move(config);
  return rec;
}

std::vector<ConfigRecord> classify_configurations(int m, int r, int threads) {
  if (m < 0 || m > 32 || r < 0) throw input_error("unsupported configuration parameters");
  std::vector<ConfigRecord> records;
  if (r == 0) {
    records.push_back(make_record(Configuration(m, 0, {})));
    return records;
  }
  if ((m * r) % 3 != 0 || r > (m - 1) / 2) return records;  // infeasible

  // Partition the tree at a fixed shallow depth, then finish each subtree
  // independently. Dedup is unnecessary: the lexmin rule is globally
  // irredundant, so results are just concatenated and sorted.
  const int split_depth = 2;
  std::vector<std::vector<Block>> roots;
  {
    ConfigSearch search(m, r);
    search.run({}, split_depth, [&](const std::vector<Block>& blocks) {
      roots.push_back(blocks);
    });
  }

  std::vector<Configuration> found;
  std::mutex found_mutex;
  auto complete = [&](const std::vector<Block>& prefix) {
    if (static_cast<int>(prefix.size()) == m * r / 3) {
      // A subtree root can itself be a complete object.
      std::lock_guard lock(found_mutex);
      found.push_back(Configuration(m, r, prefix));
      return;
    }
    ConfigSearch search(m, r);
    search.run(prefix, -1, [&](const std::vector<Block>& blocks) {
      std::lock_guard lock(found_mutex);
      found.push_back(Configuration(m, r, blocks));
    });
  };

  if (threads <= 1) {
    for (const auto& root : roots) complete(root);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::size_t worker_count = std::min(static_cast<std::size_t>(threads), roots.size());
    for (std::size_t t = 0; t < worker_count; ++t) {
      pool.emplace_back([&] {
        while (true) {
          std::size_t i = next.fetch_add(1);
          if (i >= roots.size()) break;
          complete(roots[i]);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  records.reserve(found.size());
  for (auto& config : found) records.push_back(make_record(std::move(config)));
  std::sort(records.begin(), records.end(), [](const ConfigRecord& a, const ConfigRecord& b) {
    return a.canonical_bytes < b.canonical_bytes;
  });
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].canonical_bytes == records[i - 1].canonical_bytes) {
      throw data_error("duplicate configuration class generated");
    }
  }
  return records;
}

std::size_t underlying_graph_classes(const std::vector<ConfigRecord>& records) {
  std::vector<std::vector<std::uint8_t>> keys;
  keys.reserve(records.size());
  for (const auto& rec : records) {
    canon::ColoredGraph g(rec.underlying.order());
    for (auto [a, b] : rec.underlying.edges()) g.add_edge(a, b);
    keys.push_back(canon::canonical_form(g).canonical_bytes);
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys.size();
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> aut_order_distribution(
    const std::vector<ConfigRecord>& records) {
  std::vector<std::uint64_t> orders;
  orders.reserve(records.size());
  for (const auto& rec : records) orders.push_back(rec.aut.order);
  std::sort(orders.begin(), orders.end());
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::uint64_t order : orders) {
    if (!out.empty() && out.back().first == order) ++out.back().second;
    else out.emplace_back(order, 1);
  }
  return out;
}

std::string format_distribution(
    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& distribution) {
  std::string out;
  for (const auto& [order, count] : distribution) {
    if (!out.empty()) out += ' ';
    out += std::to_string(order) + '^' + std::to_string(count);
  }
  return out;
}

std::vector<ConfigRecord> exclude_wilson(std::vector<ConfigRecord> records) {
  auto it = std::find_if(records.begin(), records.end(),
                         [](const ConfigRecord& r) { return r.wilson_flag; });
  if (it == records.end()) throw data_error("no Wilson-flagged record present");
  records.erase(it);
  return records;
}

}  // namespace steiner::configgen
