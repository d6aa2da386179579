#pragma once

#include <vector>

#include "steiner/types.hpp"

namespace steiner::detail {

// True iff the sorted block sequence is the lexicographic minimum over all
// relabelings of the m points. Requires m <= 32 and blocks sorted ascending.
bool is_lexmin_block_sequence(int m, const std::vector<Block>& blocks);

}  // namespace steiner::detail
