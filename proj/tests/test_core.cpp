#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "steiner/group.hpp"
#include "steiner/types.hpp"

using namespace steiner;

TEST_CASE("admissible orders are 1 and 3 mod 6") {
  CHECK(is_admissible_order(21));
  CHECK(is_admissible_order(3));
  CHECK(is_admissible_order(1));
  CHECK(is_admissible_order(7));
  CHECK(is_admissible_order(9));
  CHECK_FALSE(is_admissible_order(8));
  CHECK_FALSE(is_admissible_order(5));
  CHECK_FALSE(is_admissible_order(6));
  CHECK_THROWS_AS(is_admissible_order(0), input_error);
}

TEST_CASE("fano plane validates; damaged fano reports the uncovered pair") {
  TripleSystem fano = oracles::fano_plane();
  CHECK(validate_sts(fano).ok);
  CHECK(fano.blocks.size() == 7);

  TripleSystem damaged = fano;
  damaged.blocks.pop_back();
  auto res = validate_sts(damaged);
  CHECK_FALSE(res.ok);
  CHECK(res.message.find("uncovered") != std::string::npos);

  TripleSystem out_of_range(7, {{0, 1, 9}});
  CHECK_THROWS_AS(validate_sts(out_of_range), input_error);
}

TEST_CASE("block count and replication of a valid system") {
  for (const TripleSystem& s : {oracles::fano_plane(), oracles::cyclic_sts9()}) {
    REQUIRE(validate_sts(s).ok);
    CHECK(static_cast<int>(s.blocks.size()) == s.v * (s.v - 1) / 6);
    std::vector<int> deg(s.v, 0);
    for (const auto& b : s.blocks) {
      for (Point p : b) ++deg[p];
    }
    for (int p = 0; p < s.v; ++p) CHECK(deg[p] == (s.v - 1) / 2);
  }
}

TEST_CASE("group closure: symmetric group on 3 points, trivial group, cap") {
  auto s3 = group_from_generators(
      3, {Permutation::from_cycles(3, {{0, 1}}), Permutation::from_cycles(3, {{0, 1, 2}})});
  CHECK(s3.order == 6);

  auto trivial = group_from_generators(4, {});
  CHECK(trivial.order == 1);
  CHECK(trivial.elements.size() == 1);

  // S8 closure blows through a small cap.
  std::vector<Permutation> s8_gens = {Permutation::from_cycles(8, {{0, 1}}),
                                      Permutation::from_cycles(8, {{0, 1, 2, 3, 4, 5, 6, 7}})};
  CHECK_THROWS_AS(group_from_generators(8, s8_gens, 1000), resource_error);
  CHECK(group_from_generators(8, s8_gens).order == 40320);
}

TEST_CASE("generator order does not change the closure") {
  std::mt19937 rng(7);
  auto gens = oracles::example108_generators();
  auto g1 = group_from_generators(21, gens);
  std::reverse(gens.begin(), gens.end());
  auto g2 = group_from_generators(21, gens);
  CHECK(g1.elements == g2.elements);
}

TEST_CASE("the order-108 example group and its element orders") {
  auto group = group_from_generators(21, oracles::example108_generators());
  CHECK(group.order == 108);
  auto orders = element_order_multiset(group);
  REQUIRE(orders.size() == 108);
  CHECK(orders.front() == 1);
  CHECK(std::count(orders.begin(), orders.end(), 1) == 1);
  for (int o : orders) CHECK(108 % o == 0);
}

TEST_CASE("element order multisets of small groups") {
  auto trivial = group_from_generators(1, {});
  CHECK(element_order_multiset(trivial) == std::vector<int>{1});
  auto c4 = group_from_generators(4, {Permutation::from_cycles(4, {{0, 1, 2, 3}})});
  CHECK(element_order_multiset(c4) == std::vector<int>{1, 2, 4, 4});
}

TEST_CASE("orbit construction reproduces the order-108 design and the fano") {
  TripleSystem design = construct_from_group_orbits(21, oracles::example108_generators(),
                                                    oracles::example108_representatives());
  CHECK(design.v == 21);
  CHECK(design.blocks.size() == 70);
  CHECK(validate_sts(design).ok);

  TripleSystem fano = oracles::fano_plane();
  TripleSystem rebuilt =
      construct_from_group_orbits(7, {Permutation::identity(7)}, fano.blocks);
  CHECK(rebuilt == fano);

  TripleSystem fixed = construct_from_group_orbits(
      9, {Permutation::from_cycles(9, {{0, 1, 2}})}, {{0, 1, 2}});
  CHECK(fixed.blocks.size() == 1);
}

TEST_CASE("orbit construction is invariant under replacing a representative") {
  auto gens = oracles::example108_generators();
  auto reps = oracles::example108_representatives();
  TripleSystem base = construct_from_group_orbits(21, gens, reps);
  // Replace the first representative by another block of its orbit.
  Block moved = steiner::apply(gens[0], steiner::apply(gens[1], reps[0]));
  reps[0] = moved;
  TripleSystem alt = construct_from_group_orbits(21, gens, reps);
  CHECK(base == alt);
}

TEST_CASE("complement basics") {
  PackedGraph empty(8);
  CHECK(complement(empty) == PackedGraph::complete(8));

  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    PackedGraph g = oracles::random_graph(10, 0.4, rng);
    CHECK(complement(complement(g)) == g);
  }
}

TEST_CASE("underlying graph of configurations") {
  Configuration empty(8, 0, {});
  CHECK(validate_configuration(empty).ok);
  CHECK(underlying_graph(empty).edge_count() == 0);

  Configuration one_block(3, 1, {{0, 1, 2}});
  PackedGraph k3 = underlying_graph(one_block);
  CHECK(k3.edge_count() == 3);
  CHECK(k3.regular_degree() == 2);

  // Two disjoint copies of the order-7 system: 6-regular on 14 points,
  // complement 7-regular.
  TripleSystem fano = oracles::fano_plane();
  std::vector<Block> blocks = fano.blocks;
  for (const auto& b : fano.blocks) {
    blocks.push_back(Block{static_cast<Point>(b[0] + 7), static_cast<Point>(b[1] + 7),
                           static_cast<Point>(b[2] + 7)});
  }
  Configuration double_fano(14, 3, blocks);
  CHECK(validate_configuration(double_fano).ok);
  PackedGraph under = underlying_graph(double_fano);
  CHECK(under.regular_degree() == 6);
  CHECK(complement(under).regular_degree() == 7);
}

TEST_CASE("configuration validation rejects blocks sharing two points") {
  Configuration bad(6, 1, {{0, 1, 2}, {0, 1, 3}});
  auto res = validate_configuration(bad);
  CHECK_FALSE(res.ok);
  CHECK(res.message.find("share") != std::string::npos);
}

TEST_CASE("underlying graph degree is twice the replication") {
  // Rows and columns of a 3x3 grid: a (9, 2) configuration.
  Configuration grid(9, 2, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6}, {1, 4, 7}, {2, 5, 8}});
  REQUIRE(validate_configuration(grid).ok);
  CHECK(underlying_graph(grid).regular_degree() == 2 * grid.r);

  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    Configuration image = apply(oracles::random_permutation(9, rng), grid);
    CHECK(validate_configuration(image).ok);
    CHECK(underlying_graph(image).regular_degree() == 2 * grid.r);
  }
}

TEST_CASE("permutation action composes") {
  std::mt19937 rng(23);
  TripleSystem design = oracles::cyclic_sts9();
  for (int trial = 0; trial < 50; ++trial) {
    Permutation p = oracles::random_permutation(9, rng);
    Permutation q = oracles::random_permutation(9, rng);
    CHECK(apply(p, apply(q, design)) == apply(p.after(q), design));
  }
  for (int trial = 0; trial < 20; ++trial) {
    Permutation p = oracles::random_permutation(10, rng);
    Permutation q = oracles::random_permutation(10, rng);
    PackedGraph g = oracles::random_graph(10, 0.5, rng);
    CHECK(apply(p, apply(q, g)) == apply(p.after(q), g));
  }
}

TEST_CASE("stabilizer-chain order agrees with closure on assorted groups") {
  std::vector<std::vector<Permutation>> generator_sets = {
      {},
      {Permutation::from_cycles(4, {{0, 1, 2, 3}})},
      {Permutation::from_cycles(8, {{0, 1}}), Permutation::from_cycles(8, {{0, 1, 2, 3, 4, 5, 6, 7}})},
      oracles::example108_generators(),
  };
  std::vector<int> degrees = {3, 4, 8, 21};
  for (std::size_t i = 0; i < generator_sets.size(); ++i) {
    auto closure = group_from_generators(degrees[i], generator_sets[i]);
    CHECK(group_order_from_generators(degrees[i], generator_sets[i]) == closure.order);
  }
  // A group too large to materialize still gets an exact order.
  std::vector<Permutation> s14 = {Permutation::from_cycles(14, {{0, 1}}),
                                  Permutation::from_cycles(14, {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13}})};
  CHECK(group_order_from_generators(14, s14) == 87178291200ull);
}
