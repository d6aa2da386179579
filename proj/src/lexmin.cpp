#include "lexmin.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "steiner/errors.hpp"

namespace steiner::detail {

namespace {

// Searches for a relabeling whose sorted block sequence is strictly smaller
// than the input. Branches only while the relabeled prefix matches the
// input exactly; any position where a smaller image is achievable decides
// the test immediately.
class LexminTester {
 public:
  LexminTester(int m, const std::vector<Block>& blocks) : m_(m), blocks_(blocks) {
    sigma_.assign(m, -1);
    label_used_ = 0;
    block_used_.assign(blocks.size(), false);
  }

  bool input_is_minimal() { return !smaller_exists(0); }

 private:
  // Least conceivable image of block b under extensions of the current
  // assignment: assigned points keep their labels, unassigned points take
  // the smallest free labels.
  Block conceivable_min(const Block& b) const {
    int vals[3];
    int assigned = 0;
    for (Point p : b) {
      if (sigma_[p] >= 0) vals[assigned++] = sigma_[p];
    }
    std::uint32_t free_mask = ~label_used_;
    for (int k = assigned; k < 3; ++k) {
      int label = std::countr_zero(free_mask);
      free_mask &= free_mask - 1;
      vals[k] = label;
    }
    std::sort(vals, vals + 3);
    return Block{static_cast<Point>(vals[0]), static_cast<Point>(vals[1]),
                 static_cast<Point>(vals[2])};
  }

  // Returns true if some completion of the current partial relabeling makes
  // the sorted image sequence strictly smaller than the input.
  bool smaller_exists(std::size_t t) {
    if (t == blocks_.size()) return false;
    const Block& target = blocks_[t];
    // Pass 1: any block beating the target settles the question.
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      if (block_used_[i]) continue;
      if (conceivable_min(blocks_[i]) < target) return true;
    }
    // Pass 2: recurse through every way of matching the target exactly.
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      if (block_used_[i]) continue;
      if (conceivable_min(blocks_[i]) != target) continue;
      if (match_block(i, t, target)) return true;
    }
    return false;
  }

  bool match_block(std::size_t i, std::size_t t, const Block& target) {
    const Block& b = blocks_[i];
    Point unassigned[3];
    int n_unassigned = 0;
    std::uint32_t needed = 0;
    for (Point label : target) needed |= std::uint32_t{1} << label;
    for (Point p : b) {
      if (sigma_[p] >= 0) needed &= ~(std::uint32_t{1} << sigma_[p]);
      else unassigned[n_unassigned++] = p;
    }
    int labels[3];
    int n_labels = 0;
    while (needed) {
      labels[n_labels++] = std::countr_zero(needed);
      needed &= needed - 1;
    }
    // conceivable_min == target guarantees the label counts line up.
    block_used_[i] = true;
    int perm[3] = {0, 1, 2};
    bool found = false;
    do {
      for (int k = 0; k < n_unassigned; ++k) {
        sigma_[unassigned[k]] = labels[perm[k]];
        label_used_ |= std::uint32_t{1} << labels[perm[k]];
      }
      found = smaller_exists(t + 1);
      for (int k = 0; k < n_unassigned; ++k) {
        label_used_ &= ~(std::uint32_t{1} << labels[perm[k]]);
        sigma_[unassigned[k]] = -1;
      }
      if (found) break;
    } while (std::next_permutation(perm, perm + n_unassigned));
    block_used_[i] = false;
    return found;
  }

  int m_;
  const std::vector<Block>& blocks_;
  std::vector<int> sigma_;        // old point -> new label, -1 unassigned
  std::uint32_t label_used_ = 0;  // new labels already taken
  std::vector<bool> block_used_;  // blocks already placed in the image prefix
};

}  // namespace

bool is_lexmin_block_sequence(int m, const std::vector<Block>& blocks) {
  if (m > 32) throw input_error("lexmin test limited to 32 points");
  if (blocks.empty()) return true;
  LexminTester tester(m, blocks);
  return tester.input_is_minimal();
}

}  // namespace steiner::detail
