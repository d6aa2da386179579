#pragma once

// Test-only oracles: independent brute-force counterparts of the library's
// search kernels, plus shared fixtures. Everything here deliberately avoids
// the code paths it is used to check.

#include <cstdint>
#include <random>
#include <vector>

#include "steiner/canon.hpp"
#include "steiner/kernels.hpp"
#include "steiner/types.hpp"

namespace oracles {

using steiner::Block;
using steiner::PackedGraph;
using steiner::Permutation;
using steiner::Point;
using steiner::TripleSystem;

// Automorphism count by scanning all n! permutations.
std::uint64_t brute_force_aut_order(const steiner::canon::ColoredGraph& g);

// Perfect matchings by naive pairing over explicit edge checks.
std::uint64_t brute_force_matching_count(const PackedGraph& g);

// Exact covers by enumerating all subsets of at most 20 options.
std::uint64_t brute_force_exact_cover_count(const steiner::kernels::ExactCoverInstance& inst);

// 1-factorizations by selecting pairwise edge-disjoint matchings from the
// full matching list (no dancing links involved).
std::uint64_t brute_force_factorization_count(const PackedGraph& g,
                                              const std::vector<steiner::Factor>& matchings);

// All labelled triple systems on v points (no isomorph rejection).
std::uint64_t count_labelled_sts(int v);

// All labelled (m, r) triangle configurations (no isomorph rejection).
std::uint64_t count_labelled_configurations(int m, int r);

// Transversal of k-regular graphs on n vertices by an orderly search over
// edge sequences (self-contained; used to cross-check configuration counts).
std::vector<PackedGraph> classify_regular_graphs(int n, int k);

// Fixtures.
PackedGraph petersen_graph();
TripleSystem fano_plane();
TripleSystem cyclic_sts9();

// The order-108 example: two generators on 21 points and seven
// representative blocks whose orbits form the design.
std::vector<Permutation> example108_generators();
std::vector<Block> example108_representatives();

// Deterministic random helpers.
steiner::canon::ColoredGraph random_colored_graph(int n, double edge_prob, int colors,
                                                  std::mt19937& rng);
PackedGraph random_graph(int n, double edge_prob, std::mt19937& rng);
Permutation random_permutation(int n, std::mt19937& rng);

}  // namespace oracles
