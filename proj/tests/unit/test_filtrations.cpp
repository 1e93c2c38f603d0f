#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "oracles.hpp"
#include "sawgrid/filtrations.hpp"

using namespace sawgrid;

namespace {

std::vector<double> as_vector(const NodeValues& f) { return {f.values().begin(), f.values().end()}; }

void check_close(const NodeValues& actual, const std::vector<double>& expected, double tol = 1e-12) {
  REQUIRE(actual.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CAPTURE(i);
    CHECK(actual[i] == doctest::Approx(expected[i]).epsilon(tol));
  }
}

// Betweenness by listing every shortest path explicitly.
std::vector<double> betweenness_by_paths(const Graph& g) {
  const std::size_t n = g.num_nodes();
  const auto d = oracle::distances(g);
  std::vector<double> score(n, 0.0);
  for (NodeId s = 0; s < n; ++s) {
    for (NodeId t = s + 1; t < n; ++t) {
      if (d[s][t] < 2) continue;
      std::vector<std::vector<NodeId>> paths;
      std::vector<NodeId> current{s};
      std::function<void(NodeId)> walk = [&](NodeId v) {
        if (v == t) {
          paths.push_back(current);
          return;
        }
        for (NodeId w : g.neighbors(v)) {
          if (d[s][w] == d[s][v] + 1 && d[w][t] == d[v][t] - 1) {
            current.push_back(w);
            walk(w);
            current.pop_back();
          }
        }
      };
      walk(s);
      for (const auto& p : paths)
        for (std::size_t k = 1; k + 1 < p.size(); ++k) score[p[k]] += 1.0 / static_cast<double>(paths.size());
    }
  }
  return score;
}

std::vector<double> closeness_by_distances(const Graph& g) {
  const auto d = oracle::distances(g);
  std::vector<double> out(g.num_nodes(), 0.0);
  for (std::size_t v = 0; v < g.num_nodes(); ++v) {
    double reach = 0.0;
    double total = 0.0;
    for (int x : d[v]) {
      if (x > 0) {
        reach += 1.0;
        total += x;
      }
    }
    out[v] = total > 0.0 ? reach / total : 0.0;
  }
  return out;
}

std::vector<double> eccentricity_by_distances(const Graph& g) {
  const auto d = oracle::distances(g);
  std::vector<double> out;
  for (const auto& row : d) out.push_back(*std::max_element(row.begin(), row.end()));
  return out;
}

}  // namespace

TEST_CASE("kind names round trip") {
  for (FiltrationKind k : kAllFiltrationKinds) CHECK(parse_filtration_kind(to_string(k)) == k);
  CHECK(parse_filtration_kind("forman_ricci") == FiltrationKind::kFormanRicci);
  CHECK_FALSE(parse_filtration_kind("ollivier_ricci").has_value());
  CHECK_FALSE(parse_filtration_kind("").has_value());
}

TEST_CASE("empty graph is rejected") {
  for (FiltrationKind k : kAllFiltrationKinds) CHECK_THROWS_AS(compute_filtration(Graph(), k), std::invalid_argument);
}

TEST_CASE("small worked examples") {
  check_close(compute_filtration(oracle::cycle(5), FiltrationKind::kDegree), {2, 2, 2, 2, 2});
  check_close(compute_filtration(oracle::path(3), FiltrationKind::kEccentricity), {2, 1, 2});
  check_close(compute_filtration(oracle::star(3), FiltrationKind::kBetweenness), {3, 0, 0, 0});
  check_close(compute_filtration(oracle::path(3), FiltrationKind::kFormanRicci), {1, 1, 1});
  check_close(compute_filtration(oracle::path(3), FiltrationKind::kCloseness), {2.0 / 3.0, 1.0, 2.0 / 3.0});
}

TEST_CASE("isolated nodes and disconnected graphs") {
  // Path 0-1-2 plus isolated node 3.
  const Graph g(4, {{0, 1}, {1, 2}});
  check_close(closeness_values(g), {2.0 / 3.0, 1.0, 2.0 / 3.0, 0.0});
  check_close(eccentricity_values(g), {2, 1, 2, 0});
  check_close(forman_ricci_values(g), {1, 1, 1, 0});
  check_close(betweenness_values(g), {0, 1, 0, 0});
  check_close(degree_values(g), {1, 2, 1, 0});
}

TEST_CASE("betweenness matches shortest path enumeration") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 9;
    const Graph g = trial % 3 == 0 ? oracle::random_tree(rng, n) : oracle::random_graph(rng, n, 0.35);
    check_close(betweenness_values(g), betweenness_by_paths(g), 1e-9);
  }
}

TEST_CASE("tree betweenness counts pairs routed through a node") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = oracle::random_tree(rng, 2 + trial % 7);
    const auto d = oracle::distances(g);
    const std::size_t n = g.num_nodes();
    std::vector<double> expected(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
      std::size_t ordered = 0;
      for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t)
          if (s != v && t != v && s != t && d[s][v] + d[v][t] == d[s][t]) ++ordered;
      expected[v] = static_cast<double>(ordered) / 2.0;
    }
    check_close(betweenness_values(g), expected);
  }
}

TEST_CASE("closeness and eccentricity agree with all-pairs distances") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 60; ++trial) {
    const Graph g = oracle::random_graph(rng, 1 + trial % 11, 0.3);
    check_close(closeness_values(g), closeness_by_distances(g));
    check_close(eccentricity_values(g), eccentricity_by_distances(g));
  }
}

TEST_CASE("eccentricity obeys the radius-diameter bound") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const Graph g = oracle::random_connected_graph(rng, 2 + trial % 12, 0.15);
    const NodeValues e = eccentricity_values(g);
    CHECK(e.max() <= 2.0 * e.min());
  }
}

TEST_CASE("values are invariant under node relabeling") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 3 + trial % 9;
    const Graph g = oracle::random_graph(rng, n, 0.4);
    std::vector<NodeId> perm(n);
    std::iota(perm.begin(), perm.end(), NodeId{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    const Graph h = oracle::permuted(g, perm);
    for (FiltrationKind k : kAllFiltrationKinds) {
      CAPTURE(to_string(k));
      const NodeValues a = compute_filtration(g, k);
      const NodeValues b = compute_filtration(h, k);
      for (std::size_t v = 0; v < n; ++v) CHECK(b[perm[v]] == doctest::Approx(a[v]).epsilon(1e-9));
    }
  }
}

TEST_CASE("hits scores") {
  SUBCASE("regular graphs score uniformly") {
    check_close(hits_values(oracle::cycle(6)), {1, 1, 1, 1, 1, 1});
    check_close(hits_values(oracle::complete(4)), {1, 1, 1, 1});
  }
  SUBCASE("edgeless graph scores zero") { check_close(hits_values(Graph(3, {})), {0, 0, 0}); }
  SUBCASE("star centre dominates") {
    // Dominant eigenvector of K_{1,3}: (sqrt 3, 1, 1, 1).
    check_close(hits_values(oracle::star(3)), {1, 1 / std::sqrt(3.0), 1 / std::sqrt(3.0), 1 / std::sqrt(3.0)}, 1e-8);
  }
  SUBCASE("hub and authority coincide") {
    const Graph g = oracle::path(5);
    CHECK(as_vector(compute_filtration(g, FiltrationKind::kHub)) ==
          as_vector(compute_filtration(g, FiltrationKind::kAuthority)));
  }
  SUBCASE("eigenvector of the adjacency matrix") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
      const Graph g = oracle::random_connected_graph(rng, 3 + trial % 10, 0.3);
      const NodeValues h = hits_values(g);
      CHECK(h.min() >= 0.0);
      CHECK(h.max() == doctest::Approx(1.0));
      // A x = lambda x, with lambda read off at the maximal entry.
      std::vector<double> ax(g.num_nodes(), 0.0);
      for (NodeId v = 0; v < g.num_nodes(); ++v)
        for (NodeId w : g.neighbors(v)) ax[v] += h[w];
      const auto top = std::max_element(h.values().begin(), h.values().end()) - h.values().begin();
      const double lambda = ax[static_cast<std::size_t>(top)];
      for (NodeId v = 0; v < g.num_nodes(); ++v) CHECK(ax[v] == doctest::Approx(lambda * h[v]).epsilon(1e-6));
    }
  }
  SUBCASE("bipartite graphs settle on the Perron vector") {
    // Path P3: eigenvector (1, sqrt 2, 1).
    check_close(hits_values(oracle::path(3)), {1 / std::sqrt(2.0), 1, 1 / std::sqrt(2.0)}, 1e-8);
  }
  SUBCASE("iteration cap raises with the residual") {
    try {
      hits_values(oracle::path(7), HitsOptions{1e-10, 1});
      FAIL("expected non-convergence");
    } catch (const ConvergenceError& e) {
      CHECK(e.residual() > 0.0);
    }
  }
}
