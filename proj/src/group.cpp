#include "steiner/group.hpp"

#include <algorithm>
#include <set>

namespace steiner {

bool PermutationGroup::contains(const Permutation& p) const {
  return std::binary_search(elements.begin(), elements.end(), p);
}

PermutationGroup group_from_generators(int degree, std::vector<Permutation> generators,
                                       std::size_t element_cap) {
  for (const auto& g : generators) {
    if (g.degree() != degree) throw input_error("generator degree mismatch");
  }
  PermutationGroup group;
  group.degree = degree;
  group.generators = generators;

  std::set<Permutation> elements;
  std::vector<Permutation> frontier;
  elements.insert(Permutation::identity(degree));
  frontier.push_back(Permutation::identity(degree));
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& e : frontier) {
      for (const auto& g : generators) {
        Permutation prod = g.after(e);
        if (elements.insert(prod).second) {
          if (elements.size() > element_cap) {
            throw resource_error("group closure exceeds element cap");
          }
          next.push_back(std::move(prod));
        }
      }
    }
    frontier = std::move(next);
  }
  group.elements.assign(elements.begin(), elements.end());
  group.order = group.elements.size();
  return group;
}

std::vector<int> element_order_multiset(const PermutationGroup& g) {
  std::vector<int> orders;
  orders.reserve(g.elements.size());
  for (const auto& e : g.elements) orders.push_back(e.order());
  std::sort(orders.begin(), orders.end());
  return orders;
}

TripleSystem construct_from_group_orbits(int n, const std::vector<Permutation>& generators,
                                         const std::vector<Block>& representatives) {
  for (const auto& g : generators) {
    if (g.degree() != n) throw input_error("generator degree mismatch");
  }
  std::set<Block> blocks;
  for (const auto& rep : representatives) {
    if (rep[2] >= n) throw input_error("representative point out of range");
    std::vector<Block> frontier{rep};
    blocks.insert(rep);
    while (!frontier.empty()) {
      std::vector<Block> next;
      for (const auto& b : frontier) {
        for (const auto& g : generators) {
          Block image = apply(g, b);
          if (blocks.insert(image).second) next.push_back(image);
        }
      }
      frontier = std::move(next);
    }
  }
  return TripleSystem(n, std::vector<Block>(blocks.begin(), blocks.end()));
}

namespace {

// One level of a stabilizer chain: the orbit of the base point with
// transversal representatives mapping the base point to each orbit member.
struct ChainLevel {
  int base = -1;
  std::vector<Permutation> generators;
  std::vector<int> orbit;                  // members, insertion order
  std::vector<Permutation> transversal;    // indexed by point; empty img = absent
};

class StabilizerChain {
 public:
  explicit StabilizerChain(int degree) : degree_(degree) {}

  void extend_orbit(ChainLevel& level) {
    std::size_t head = 0;
    while (head < level.orbit.size()) {
      int point = level.orbit[head++];
      for (const auto& g : level.generators) {
        int image = g(static_cast<Point>(point));
        if (level.transversal[image].img.empty()) {
          level.transversal[image] = g.after(level.transversal[point]);
          level.orbit.push_back(image);
        }
      }
    }
  }

  // Sift g (which fixes the bases of all levels before `from`) and, when it
  // is not already a member, install the residue as a strong generator at
  // every level from `from` down to where the sift stuck.
  void add(const Permutation& g, std::size_t from = 0) {
    Permutation residue = g;
    std::size_t j = from;
    for (; j < levels_.size(); ++j) {
      int image = residue(static_cast<Point>(levels_[j].base));
      if (levels_[j].transversal[image].img.empty()) break;
      residue = levels_[j].transversal[image].inverse().after(residue);
    }
    if (residue.is_identity()) return;
    if (j == levels_.size()) {
      int base = -1;
      for (int p = 0; p < degree_; ++p) {
        if (residue(static_cast<Point>(p)) != p) {
          base = p;
          break;
        }
      }
      ChainLevel level;
      level.base = base;
      level.transversal.resize(degree_);
      level.transversal[base] = Permutation::identity(degree_);
      level.orbit.push_back(base);
      levels_.push_back(std::move(level));
    }
    // The residue fixes the bases of levels from..j-1, so it generates at
    // each of those levels as well as at j.
    for (std::size_t i = from; i <= j; ++i) insert_generator(i, residue);
  }

  void insert_generator(std::size_t i, const Permutation& g) {
    std::size_t old_orbit_size = levels_[i].orbit.size();
    levels_[i].generators.push_back(g);
    std::size_t new_gen_index = levels_[i].generators.size() - 1;
    extend_orbit(levels_[i]);
    // Schreier generators from the fresh (orbit point, generator) pairs keep
    // the deeper levels strong. Recursion may reallocate levels_, so take
    // copies and index levels_[i] afresh each round.
    for (std::size_t k = 0; k < levels_[i].orbit.size(); ++k) {
      for (std::size_t gi = 0; gi < levels_[i].generators.size(); ++gi) {
        bool fresh = (k >= old_orbit_size) || (gi == new_gen_index);
        if (!fresh) continue;
        int point = levels_[i].orbit[k];
        Permutation rep = levels_[i].transversal[point];
        Permutation gen = levels_[i].generators[gi];
        int image = gen(static_cast<Point>(point));
        Permutation schreier = levels_[i].transversal[image].inverse().after(gen.after(rep));
        if (!schreier.is_identity()) add(schreier, i + 1);
      }
    }
  }

  std::uint64_t order() const {
    std::uint64_t total = 1;
    for (const auto& level : levels_) {
      std::uint64_t size = level.orbit.size();
      if (total > UINT64_MAX / size) throw resource_error("group order overflows 64 bits");
      total *= size;
    }
    return total;
  }

 private:
  int degree_;
  std::vector<ChainLevel> levels_;
};

}  // namespace

std::uint64_t group_order_from_generators(int degree,
                                          const std::vector<Permutation>& generators) {
  StabilizerChain chain(degree);
  for (const auto& g : generators) {
    if (g.degree() != degree) throw input_error("generator degree mismatch");
    chain.add(g);
  }
  return chain.order();
}

std::vector<std::vector<int>> point_orbits(int degree,
                                           const std::vector<Permutation>& generators) {
  std::vector<int> parent(degree);
  for (int i = 0; i < degree; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& g : generators) {
    for (int p = 0; p < degree; ++p) {
      int a = find(p);
      int b = find(g(static_cast<Point>(p)));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::vector<int>> orbits(degree);
  for (int p = 0; p < degree; ++p) orbits[find(p)].push_back(p);
  std::erase_if(orbits, [](const auto& o) { return o.empty(); });
  return orbits;
}

}  // namespace steiner
