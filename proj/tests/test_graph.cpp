#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>
#include <vector>

#include "spectral_walks/errors.hpp"
#include "spectral_walks/graph.hpp"

using namespace spectral_walks;

namespace {

// Shortest cycle by trying every edge removal and measuring the remaining u-v distance.
int girth_by_edge_removal(const Graph& g) {
  int best = std::numeric_limits<int>::max();
  for (const auto& [a, b] : g.edges()) {
    std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), -1);
    std::vector<int> frontier{a};
    dist[a] = 0;
    while (!frontier.empty() && dist[b] < 0) {
      std::vector<int> next;
      for (int u : frontier) {
        for (int w : g.neighbors(u)) {
          if ((u == a && w == b) || (u == b && w == a) || dist[w] >= 0) continue;
          dist[w] = dist[u] + 1;
          next.push_back(w);
        }
      }
      frontier = std::move(next);
    }
    if (dist[b] >= 0) best = std::min(best, dist[b] + 1);
  }
  return best;
}

}  // namespace

TEST_CASE("named constructions") {
  const Graph k4 = Graph::complete(4);
  CHECK(k4.edge_count() == 6);
  CHECK(k4.regular_degree() == 3);

  const Graph k23 = Graph::complete_bipartite(2, 3);
  CHECK(k23.edge_count() == 6);
  std::vector<int> degrees;
  for (int v = 0; v < 5; ++v) degrees.push_back(k23.degree(v));
  CHECK(degrees == std::vector<int>{3, 3, 2, 2, 2});
  CHECK(k23.is_biregular(3, 2));
  CHECK_FALSE(k23.is_biregular(2, 3));
  CHECK_FALSE(k23.regular_degree().has_value());
  CHECK(k23.left_part_size() == 2);

  const Graph p = Graph::petersen();
  CHECK(p.vertex_count() == 10);
  CHECK(p.edge_count() == 15);
  CHECK(p.regular_degree() == 3);

  const Graph c = Graph::cycle(7);
  CHECK(c.regular_degree() == 2);
  CHECK_THROWS_AS(Graph::cycle(2), ValidationError);

  const auto a = k4.adjacency_matrix();
  CHECK(a.sum() == 12.0);
  CHECK(a.diagonal().sum() == 0.0);
}

TEST_CASE("invalid graphs are rejected") {
  CHECK_THROWS_AS(Graph(3, {{0, 0}}), ValidationError);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), ValidationError);
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), ValidationError);
  CHECK_THROWS_AS(Graph(0, {}), ValidationError);
}

TEST_CASE("edge-list round trip") {
  std::istringstream in("# comment\n0 1\n\n1 2\n  2 0\n");
  const Graph g = read_edge_list(in);
  CHECK(g == Graph::cycle(3));
  std::ostringstream out;
  write_edge_list(out, Graph::petersen());
  std::istringstream back(out.str());
  CHECK(read_edge_list(back) == Graph::petersen());

  std::istringstream padded("0 1\n");
  CHECK(read_edge_list(padded, 4).vertex_count() == 4);
  std::istringstream junk("0 1 2\n");
  CHECK_THROWS_AS(read_edge_list(junk), ValidationError);
  std::istringstream word("0 x\n");
  CHECK_THROWS_AS(read_edge_list(word), ValidationError);
  std::istringstream negative("0 -1\n");
  CHECK_THROWS_AS(read_edge_list(negative), ValidationError);
  std::istringstream repeated("0 1\n1 0\n");
  CHECK_THROWS_AS(read_edge_list(repeated), ValidationError);
  CHECK_THROWS_AS(load_edge_list("/nonexistent/graph.edges"), ValidationError);

  const Graph heawood = load_edge_list(SW_TEST_DATA_DIR "/heawood.edges");
  CHECK(heawood.vertex_count() == 14);
  CHECK(heawood.regular_degree() == 3);
}

TEST_CASE("girth") {
  CHECK(girth(Graph::complete(4)) == 3);
  CHECK(girth(Graph::complete_bipartite(3, 3)) == 4);
  CHECK(girth(Graph::petersen()) == 5);
  CHECK(girth(load_edge_list(SW_TEST_DATA_DIR "/heawood.edges")) == 6);
  CHECK(girth(Graph::cycle(9)) == 9);
  CHECK_FALSE(girth(Graph(4, {{0, 1}, {1, 2}, {1, 3}})).has_value());
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Graph g = random_regular(16, 3, seed);
    CHECK(girth(g) == girth_by_edge_removal(g));
  }
}

TEST_CASE("random regular graphs") {
  CHECK(random_regular(4, 3, 99) == Graph::complete(4));
  const Graph g = random_regular(20, 3, 1);
  CHECK(g.regular_degree() == 3);
  for (int d : {3, 4, 7, 10}) {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
      CHECK(random_regular(30, d, seed).regular_degree() == d);
    }
  }
  CHECK(random_regular(50, 4, 123) == random_regular(50, 4, 123));
  CHECK_FALSE(random_regular(50, 4, 123) == random_regular(50, 4, 124));

  // Same graph from concurrent calls.
  std::vector<Graph> results(4, Graph::complete(1));
  std::vector<std::thread> pool;
  for (int i = 0; i < 4; ++i) pool.emplace_back([&results, i] { results[i] = random_regular(60, 3, 42); });
  for (auto& t : pool) t.join();
  for (const auto& r : results) CHECK(r == random_regular(60, 3, 42));

  CHECK_THROWS_AS(random_regular(5, 3, 1), ContractError);
  CHECK_THROWS_AS(random_regular(3, 3, 1), ContractError);
  CHECK_THROWS_AS(random_regular(10, 2, 1), ContractError);
  CHECK_THROWS_AS(random_regular(10, 3, 1, 0), SamplingError);
}
