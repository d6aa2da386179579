#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "steiner/io.hpp"

using namespace steiner;

TEST_CASE("design file format is bit-exact") {
  TripleSystem fano = oracles::fano_plane();
  std::string text = io::format_design(fano);
  CHECK(text ==
        "sts v=7 b=7\n"
        "0 1 3\n"
        "0 2 6\n"
        "0 4 5\n"
        "1 2 4\n"
        "1 5 6\n"
        "2 3 5\n"
        "3 4 6\n");
  CHECK(io::parse_design(text) == fano);
}

TEST_CASE("design parser rejects malformed input") {
  CHECK_THROWS_AS(io::parse_design("nonsense\n"), input_error);
  CHECK_THROWS_AS(io::parse_design("sts v=7 b=2\n0 1 3\n"), input_error);
  CHECK_THROWS_AS(io::parse_design("sts v=7 b=1\n3 1 0\n"), input_error);
  CHECK_THROWS_AS(io::parse_design("sts v=7 b=1\n0 1 9\n"), input_error);
  // Blocks out of lexicographic order.
  CHECK_THROWS_AS(io::parse_design("sts v=7 b=2\n1 2 4\n0 1 3\n"), input_error);
}

TEST_CASE("configuration file format round-trips") {
  Configuration grid(9, 2, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6}, {1, 4, 7}, {2, 5, 8}});
  std::string text = io::format_configuration(grid);
  CHECK(text.rfind("cfg m=9 r=2 b=6\n", 0) == 0);
  CHECK(io::parse_configuration(text) == grid);
  CHECK_THROWS_AS(io::parse_configuration("sts v=7 b=0\n"), input_error);
}

TEST_CASE("graph6 round-trip on random graphs and known strings") {
  // K4 in graph6 is "C~".
  CHECK(io::to_graph6(PackedGraph::complete(4)) == "C~");
  CHECK(io::from_graph6("C~") == PackedGraph::complete(4));
  // 5-cycle: standard encoding "DQc".
  PackedGraph c5(5);
  for (int i = 0; i < 5; ++i) c5.add_edge(i, (i + 1) % 5);
  CHECK(io::from_graph6(io::to_graph6(c5)) == c5);

  std::mt19937 rng(9);
  for (int t = 0; t < 100; ++t) {
    int n = 1 + static_cast<int>(rng() % 30);
    PackedGraph g = oracles::random_graph(n, 0.4, rng);
    CHECK(io::from_graph6(io::to_graph6(g)) == g);
  }
  CHECK(io::from_graph6(">>graph6<<C~\n") == PackedGraph::complete(4));
  CHECK_THROWS_AS(io::from_graph6(""), input_error);
}

TEST_CASE("file helpers raise io errors for missing paths") {
  CHECK_THROWS_AS(io::read_design("/nonexistent/path/design.txt"), io_error);
}
