#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "steiner/analysis.hpp"
#include "steiner/canon.hpp"
#include "steiner/group.hpp"

using namespace steiner;
using canon::ColoredGraph;

namespace {

ColoredGraph from_packed(const PackedGraph& g) {
  ColoredGraph out(g.order());
  for (auto [a, b] : g.edges()) out.add_edge(a, b);
  return out;
}

ColoredGraph relabel(const ColoredGraph& g, const Permutation& p) {
  return canon::apply(p, g);
}

}  // namespace

TEST_CASE("triangle: canonical bytes stable under relabeling, six automorphisms") {
  ColoredGraph k3 = from_packed(PackedGraph::complete(3));
  auto base = canon::canonical_form(k3);
  CHECK(base.automorphism_order == 6);
  std::mt19937 rng(1);
  for (int t = 0; t < 10; ++t) {
    auto image = relabel(k3, oracles::random_permutation(3, rng));
    CHECK(canon::canonical_form(image).canonical_bytes == base.canonical_bytes);
  }
}

TEST_CASE("the canonical labeling relabels onto the canonical bytes") {
  std::mt19937 rng(2);
  for (int t = 0; t < 40; ++t) {
    ColoredGraph g = oracles::random_colored_graph(1 + static_cast<int>(rng() % 12), 0.4, 3, rng);
    auto result = canon::canonical_form(g);
    CHECK(canon::serialize(canon::apply(result.canonical_labeling, g)) == result.canonical_bytes);
    // Generators preserve adjacency and colors (rechecked independently).
    for (const auto& a : result.automorphism_generators) {
      CHECK(canon::serialize(canon::apply(a, g)).size() == canon::serialize(g).size());
      CHECK(canon::apply(a, g) == g);
    }
  }
}

TEST_CASE("petersen graph has 120 automorphisms (brute force agreement)") {
  ColoredGraph pg = from_packed(oracles::petersen_graph());
  auto result = canon::canonical_form(pg);
  CHECK(result.automorphism_order == 120);
  CHECK(oracles::brute_force_aut_order(pg) == 120);
}

TEST_CASE("exhaustive completeness on all graphs with up to 6 vertices") {
  for (int n = 1; n <= 6; ++n) {
    int pairs = n * (n - 1) / 2;
    for (std::uint32_t bits = 0; bits < (1u << pairs); ++bits) {
      ColoredGraph g(n);
      int k = 0;
      for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b, ++k) {
          if ((bits >> k) & 1) g.add_edge(a, b);
        }
      }
      auto result = canon::canonical_form(g);
      REQUIRE(result.automorphism_order == oracles::brute_force_aut_order(g));
    }
  }
}

TEST_CASE("randomized completeness on 7-vertex graphs, including colors") {
  std::mt19937 rng(3);
  for (int t = 0; t < 400; ++t) {
    ColoredGraph g = oracles::random_colored_graph(7, 0.5, t % 3 + 1, rng);
    auto result = canon::canonical_form(g);
    REQUIRE(result.automorphism_order == oracles::brute_force_aut_order(g));
  }
}

TEST_CASE("canonical bytes agree exactly when graphs are isomorphic") {
  std::mt19937 rng(4);
  for (int t = 0; t < 60; ++t) {
    int n = 2 + static_cast<int>(rng() % 10);
    ColoredGraph g = oracles::random_colored_graph(n, 0.5, 2, rng);
    ColoredGraph h = oracles::random_colored_graph(n, 0.5, 2, rng);
    bool same_bytes = canon::canonical_form(g).canonical_bytes ==
                      canon::canonical_form(h).canonical_bytes;
    // Ground truth by permutation scan.
    bool isomorphic = false;
    std::vector<Point> img(n);
    for (int i = 0; i < n; ++i) img[i] = static_cast<Point>(i);
    std::sort(img.begin(), img.end());
    do {
      Permutation p{std::vector<Point>(img)};
      if (canon::apply(p, g) == h) {
        isomorphic = true;
        break;
      }
    } while (std::next_permutation(img.begin(), img.end()));
    CHECK(same_bytes == isomorphic);
  }
}

TEST_CASE("incidence encodings: known automorphism group orders") {
  auto fano = canon::canonical_form(canon::encode_sts(oracles::fano_plane()));
  CHECK(fano.automorphism_order == 168);

  auto sts9_graph = canon::encode_sts(oracles::cyclic_sts9());
  CHECK(sts9_graph.order() == 21);
  CHECK(canon::canonical_form(sts9_graph).automorphism_order == 432);

  TripleSystem sts3(3, {{0, 1, 2}});
  auto one_block = canon::encode_sts(sts3);
  CHECK(one_block.order() == 4);
  CHECK(canon::canonical_form(one_block).automorphism_order == 6);
}

TEST_CASE("configuration encodings: empty and double-fano groups") {
  Configuration empty(8, 0, {});
  CHECK(canon::canonical_form(canon::encode_configuration(empty)).automorphism_order == 40320);

  TripleSystem fano = oracles::fano_plane();
  std::vector<Block> blocks = fano.blocks;
  for (const auto& b : fano.blocks) {
    blocks.push_back(Block{static_cast<Point>(b[0] + 7), static_cast<Point>(b[1] + 7),
                           static_cast<Point>(b[2] + 7)});
  }
  Configuration double_fano(14, 3, blocks);
  auto result = canon::canonical_form(canon::encode_configuration(double_fano));
  CHECK(result.automorphism_order == 56448);
}

TEST_CASE("point and block vertices never mix") {
  TripleSystem design = oracles::cyclic_sts9();
  auto graph = canon::encode_sts(design);
  auto result = canon::canonical_form(graph);
  for (const auto& gen : result.automorphism_generators) {
    for (int vtx = 0; vtx < graph.order(); ++vtx) {
      CHECK(graph.color[gen(static_cast<Point>(vtx))] == graph.color[vtx]);
    }
  }
}

TEST_CASE("canonical invariance under 1000 random relabelings") {
  std::mt19937 rng(5);
  ColoredGraph g = oracles::random_colored_graph(24, 0.3, 3, rng);
  auto expected = canon::canonical_form(g).canonical_bytes;
  for (int t = 0; t < 1000; ++t) {
    auto image = relabel(g, oracles::random_permutation(24, rng));
    REQUIRE(canon::canonical_form(image).canonical_bytes == expected);
  }
}

TEST_CASE("design encodings separate isomorphism classes: both order-13 systems") {
  auto systems = analysis::classify_small_sts(13);
  REQUIRE(systems.size() == 2);
  REQUIRE(validate_sts(systems[0]).ok);
  REQUIRE(validate_sts(systems[1]).ok);

  auto first = canon::canonical_form(canon::encode_sts(systems[0]));
  auto second = canon::canonical_form(canon::encode_sts(systems[1]));
  CHECK(first.canonical_bytes != second.canonical_bytes);
  // Known group orders of the two classes.
  std::multiset<std::uint64_t> orders{first.automorphism_order, second.automorphism_order};
  CHECK(orders == std::multiset<std::uint64_t>{6, 39});

  std::mt19937 rng(6);
  for (int t = 0; t < 10; ++t) {
    TripleSystem image = apply(oracles::random_permutation(13, rng), systems[0]);
    CHECK(canon::canonical_form(canon::encode_sts(image)).canonical_bytes ==
          first.canonical_bytes);
  }
}

TEST_CASE("marked subsystem vertices: zero marks match the plain encoding size") {
  TripleSystem fano = oracles::fano_plane();
  auto plain = canon::encode_sts(fano);
  auto marked = canon::encode_sts_with_subsystems(fano, {});
  CHECK(plain.order() == marked.order());
  CHECK(canon::canonical_form(plain).canonical_bytes ==
        canon::canonical_form(marked).canonical_bytes);

  std::vector<Point> whole{0, 1, 2, 3, 4, 5, 6};
  auto with_whole = canon::encode_sts_with_subsystems(fano, {whole});
  CHECK(with_whole.order() == plain.order() + 1);
  CHECK(canon::canonical_form(with_whole).automorphism_order == 168);

  CHECK_THROWS_AS(canon::encode_sts_with_subsystems(fano, {{0, 1, 2, 3, 4, 5, 5}}), input_error);
}

TEST_CASE("subsystem ranking: single subsystem forms the single orbit") {
  TripleSystem fano = oracles::fano_plane();
  std::vector<Point> whole{0, 1, 2, 3, 4, 5, 6};
  auto ranking = canon::canonical_subsystem_ranking(fano, {whole});
  REQUIRE(ranking.orbits.size() == 1);
  CHECK(ranking.orbits[0] == std::vector<int>{0});
  CHECK(ranking.designated_representative == 0);
  CHECK(ranking.aut_order == 168);
  CHECK_THROWS_AS(canon::canonical_subsystem_ranking(fano, {}), input_error);
}

TEST_CASE("vertex limit raises a resource error") {
  ColoredGraph g(40);
  CHECK_THROWS_AS(canon::canonical_form(g, 30), resource_error);
}
