#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "sawgrid/filtrations.hpp"
#include "sawgrid/persistence.hpp"

using namespace sawgrid;

namespace {

using Pairs = std::vector<PersistencePair>;

PersistencePair bar(double b, double d, int dim, bool essential = false) { return {b, d, dim, essential}; }

struct Case {
  Graph graph;
  NodeValues f;
  FiltrationSpec spec;
};

// Random graph with a random filtration, varying kind, direction and mode.
Case random_case(std::mt19937_64& rng, int trial) {
  static const double probs[] = {0.1, 0.3, 0.6};
  const std::size_t n = 1 + static_cast<std::size_t>(trial) % 12;
  Graph g = oracle::random_graph(rng, n, probs[trial % 3]);
  const FiltrationKind kind = kAllFiltrationKinds[static_cast<std::size_t>(trial) % kAllFiltrationKinds.size()];
  NodeValues f = compute_filtration(g, kind);
  const std::size_t m = 2 + static_cast<std::size_t>(trial / 7) % 9;
  const Direction dir = (trial / 2) % 2 ? Direction::kSuperlevel : Direction::kSublevel;
  const ComplexMode mode = (trial / 3) % 2 ? ComplexMode::kClique2 : ComplexMode::kGraph;
  FiltrationSpec spec(f, make_thresholds(f, m), dir, mode);
  return {std::move(g), std::move(f), std::move(spec)};
}

// Betti numbers of level k counted in canonical (increasing) order.
oracle::Betti reference(const Case& c, std::size_t k) {
  const bool sub = c.spec.direction() == Direction::kSublevel;
  const auto& t = c.spec.thresholds();
  const double level = sub ? t[k] : t[t.size() - 1 - k];
  const std::vector<double> f(c.f.values().begin(), c.f.values().end());
  return oracle::betti(c.graph, oracle::level_mask(f, level, sub), c.spec.mode() == ComplexMode::kClique2);
}

}  // namespace

TEST_CASE("make_thresholds") {
  CHECK(make_thresholds(NodeValues({8, 0, 3}), 5) == std::vector<double>{0, 2, 4, 6, 8});
  CHECK(make_thresholds(NodeValues({3, 3, 3}), 10) == std::vector<double>{3, 4});
  CHECK(make_thresholds(NodeValues({1, 2, 3}), 3) == std::vector<double>{1, 2, 3});
  CHECK(make_thresholds(NodeValues({3, 3}), 10, Direction::kSuperlevel) == std::vector<double>{2, 3});
  CHECK(make_thresholds(NodeValues({1, 3}), 3, Direction::kSuperlevel) == std::vector<double>{1, 2, 3});
  const auto t = make_thresholds(NodeValues({0.1, 0.7}), 7);
  CHECK(t.size() == 7);
  CHECK(t.front() == 0.1);
  CHECK(t.back() == 0.7);
  CHECK(std::is_sorted(t.begin(), t.end()));
  CHECK_THROWS_AS(make_thresholds(NodeValues({1, 2}), 1), std::invalid_argument);
  CHECK_THROWS_AS(make_thresholds(NodeValues(), 3), std::invalid_argument);
}

TEST_CASE("filtration spec validation") {
  const NodeValues f({0, 1, 2});
  CHECK_THROWS_AS(FiltrationSpec(f, {2}), std::invalid_argument);
  CHECK_THROWS_AS(FiltrationSpec(f, {0, 0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(FiltrationSpec(f, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(FiltrationSpec(f, {1, 2}, Direction::kSuperlevel), std::invalid_argument);
  CHECK_THROWS_AS(FiltrationSpec(f, {0, std::nan("")}), std::invalid_argument);
  CHECK_NOTHROW(FiltrationSpec(f, {-5, 2}));

  const FiltrationSpec s(f, {0, 1, 2}, Direction::kSuperlevel);
  const FiltrationSpec c = s.canonical();
  CHECK(c.direction() == Direction::kSublevel);
  CHECK(c.thresholds() == std::vector<double>{-2, -1, 0});
  CHECK(c.values()[2] == -2.0);
  CHECK(s.spacing() == 1.0);
  CHECK(s.essential_cap() == 1.0);
  CHECK(FiltrationSpec(f, {0, 1, 2}).essential_cap() == 3.0);
}

TEST_CASE("level subgraphs") {
  const Graph g = oracle::path(3);
  const NodeValues f({0, 1, 2});
  const FiltrationSpec sub(f, {0, 1, 2});
  const Subgraph top = sublevel_subgraph(g, sub, 2);
  CHECK(top.graph == g);
  const Subgraph mid = sublevel_subgraph(g, sub, 1);
  CHECK(mid.to_parent == std::vector<NodeId>{0, 1});
  CHECK(mid.graph.num_edges() == 1);
  const Subgraph sup = sublevel_subgraph(g, FiltrationSpec(f, {0, 1, 2}, Direction::kSuperlevel), 1);
  CHECK(sup.to_parent == std::vector<NodeId>{1, 2});
  CHECK(sup.graph.num_edges() == 1);
  CHECK_THROWS(sublevel_subgraph(g, sub, 3));
}

TEST_CASE("betti curve examples") {
  SUBCASE("5-cycle under degree") {
    const Graph g = oracle::cycle(5);
    const NodeValues f = degree_values(g);
    const BettiCurves c = betti_curves(g, FiltrationSpec(f, make_thresholds(f, 10)));
    CHECK(c.b0.thresholds == std::vector<double>{2, 3});
    CHECK(c.b0.values == std::vector<std::size_t>{1, 1});
    CHECK(c.b1.values == std::vector<std::size_t>{1, 1});
  }
  SUBCASE("filled triangle") {
    const Graph g = oracle::complete(3);
    const NodeValues f({5, 5, 5});
    const auto t = make_thresholds(f, 2);
    CHECK(betti_curves(g, FiltrationSpec(f, t, Direction::kSublevel, ComplexMode::kClique2)).b1.values.back() == 0);
    CHECK(betti_curves(g, FiltrationSpec(f, t, Direction::kSublevel, ComplexMode::kGraph)).b1.values.back() == 1);
  }
  SUBCASE("empty graph") {
    const BettiCurves c = oracle_counts(Graph(), FiltrationSpec(NodeValues(), {0, 1}));
    CHECK(c.b0.values == std::vector<std::size_t>{0, 0});
    CHECK(c.b1.values == std::vector<std::size_t>{0, 0});
    CHECK(betti_curves(Graph(), FiltrationSpec(NodeValues(), {0, 1})) == c);
  }
}

TEST_CASE("dimension 0 diagrams") {
  SUBCASE("path joined by its last node") {
    const PersistenceDiagram pd = persistence_dim0(oracle::path(3), FiltrationSpec(NodeValues({0, 0, 1}), {0, 1}));
    CHECK(pd.dimension == 0);
    CHECK(pd.sorted_pairs() == Pairs{bar(0, 2, 0, true)});
  }
  SUBCASE("two isolated nodes") {
    const NodeValues f({0, 0});
    const PersistenceDiagram pd = persistence_dim0(Graph(2, {}), FiltrationSpec(f, make_thresholds(f, 5)));
    CHECK(pd.sorted_pairs() == Pairs{bar(0, 2, 0, true), bar(0, 2, 0, true)});
    CHECK(pd.essential_count() == 2);
  }
  SUBCASE("star centre arrives last") {
    const PersistenceDiagram pd = persistence_dim0(oracle::star(3), FiltrationSpec(NodeValues({1, 0, 0, 0}), {0, 1}));
    CHECK(pd.sorted_pairs() == Pairs{bar(0, 1, 0), bar(0, 1, 0), bar(0, 2, 0, true)});
  }
  SUBCASE("elder rule keeps the older component") {
    // 0 (born 0) - 2 (born 2) - 1 (born 1): node 2 merges a class born at 1 into one born at 0.
    const PersistenceDiagram pd =
        persistence_dim0(oracle::path(3), FiltrationSpec(NodeValues({0, 2, 1}), {0, 1, 2}));
    CHECK(pd.sorted_pairs() == Pairs{bar(0, 3, 0, true), bar(1, 2, 0)});
  }
  SUBCASE("superlevel diagrams live in negated coordinates") {
    const PersistenceDiagram pd = persistence_dim0(
        oracle::path(3), FiltrationSpec(NodeValues({0, 2, 1}), {0, 1, 2}, Direction::kSuperlevel));
    CHECK(pd.thresholds == std::vector<double>{-2, -1, 0});
    CHECK(pd.sorted_pairs() == Pairs{bar(-2, 1, 0, true)});
  }
}

TEST_CASE("dimension 1 diagrams") {
  std::mt19937_64 rng(2);
  SUBCASE("tree") {
    const Graph g = oracle::random_tree(rng, 9);
    const NodeValues f = betweenness_values(g);
    CHECK(persistence_dim1(g, FiltrationSpec(f, make_thresholds(f, 6))).empty());
  }
  SUBCASE("filled triangle leaves nothing") {
    const NodeValues f({1, 1, 1});
    const FiltrationSpec spec(f, make_thresholds(f, 4), Direction::kSublevel, ComplexMode::kClique2);
    CHECK(persistence_dim1(oracle::complete(3), spec).empty());
  }
  SUBCASE("4-cycle closes at its late vertices") {
    const Graph g(4, {{0, 2}, {2, 1}, {1, 3}, {3, 0}});
    const PersistenceDiagram pd = persistence_dim1(g, FiltrationSpec(NodeValues({0, 0, 1, 1}), {0, 1}));
    CHECK(pd.sorted_pairs() == Pairs{bar(1, 2, 1, true)});
  }
  SUBCASE("coned square dies in clique mode") {
    // Square 0-1-2-3 at level 0 and an apex 4 adjacent to all four at level 1.
    const Graph g(5, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 4}, {1, 4}, {2, 4}, {3, 4}});
    const NodeValues f({0, 0, 0, 0, 1});
    const auto clique = persistence_dim1(g, FiltrationSpec(f, {0, 1}, Direction::kSublevel, ComplexMode::kClique2));
    CHECK(clique.sorted_pairs() == Pairs{bar(0, 1, 1)});
    const auto plain = persistence_dim1(g, FiltrationSpec(f, {0, 1}));
    CHECK(plain.sorted_pairs() ==
          Pairs{bar(0, 2, 1, true), bar(1, 2, 1, true), bar(1, 2, 1, true), bar(1, 2, 1, true)});
  }
}

TEST_CASE("sweep agrees with level-by-level recomputation") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 400; ++trial) {
    const Case c = random_case(rng, trial);
    CAPTURE(trial);
    const BettiCurves fast = betti_curves(c.graph, c.spec);
    const BettiCurves slow = oracle_counts(c.graph, c.spec);
    CHECK(fast == slow);
    for (std::size_t k = 0; k < c.spec.size(); ++k) {
      const oracle::Betti ref = reference(c, k);
      CHECK(fast.b0.values[k] == ref.b0);
      CHECK(fast.b1.values[k] == ref.b1);
    }
  }
}

TEST_CASE("diagrams agree with curves") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 400; ++trial) {
    const Case c = random_case(rng, trial);
    CAPTURE(trial);
    const BettiCurves curves = betti_curves(c.graph, c.spec);
    const PersistenceDiagram pd0 = persistence_dim0(c.graph, c.spec);
    const PersistenceDiagram pd1 = persistence_dim1(c.graph, c.spec);
    CHECK(live_counts(pd0) == curves.b0.values);
    CHECK(live_counts(pd1) == curves.b1.values);
    CHECK(pd0.essential_count() == connected_components(c.graph).count);

    for (const auto* pd : {&pd0, &pd1}) {
      const auto& t = pd->thresholds;
      const auto& values = pd->dimension == 0 ? curves.b0.values : curves.b1.values;
      double bars = 0.0;
      for (const auto& p : pd->pairs) {
        CHECK(p.dimension == pd->dimension);
        CHECK(p.birth < p.death);
        CHECK(std::binary_search(t.begin(), t.end(), p.birth));
        if (p.essential) {
          CHECK(p.death == pd->essential_cap);
        } else {
          CHECK(std::binary_search(t.begin(), t.end(), p.death));
        }
        bars += p.persistence();
      }
      // Total bar length is the area under the step Betti curve.
      double area = 0.0;
      for (std::size_t k = 0; k < t.size(); ++k) {
        const double next = k + 1 < t.size() ? t[k + 1] : pd->essential_cap;
        area += static_cast<double>(values[k]) * (next - t[k]);
      }
      CHECK(bars == doctest::Approx(area).epsilon(1e-9));

      // Changes of the curve are births minus deaths at each threshold.
      for (std::size_t k = 1; k < t.size(); ++k) {
        long long births = 0, deaths = 0;
        for (const auto& p : pd->pairs) {
          births += p.birth == t[k];
          deaths += !p.essential && p.death == t[k];
        }
        CHECK(static_cast<long long>(values[k]) - static_cast<long long>(values[k - 1]) == births - deaths);
      }
    }
  }
}

TEST_CASE("graph mode Euler identity") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Case c = random_case(rng, trial);
    const FiltrationSpec spec(c.f, c.spec.thresholds(), c.spec.direction(), ComplexMode::kGraph);
    const BettiCurves curves = betti_curves(c.graph, spec);
    const FiltrationSpec canon = spec.canonical();
    for (std::size_t k = 0; k < spec.size(); ++k) {
      const Subgraph s = sublevel_subgraph(c.graph, canon, k);
      CHECK(curves.b1.values[k] + s.graph.num_nodes() == s.graph.num_edges() + curves.b0.values[k]);
    }
  }
}

TEST_CASE("diagrams follow a monotone relabeling") {
  std::mt19937_64 rng(31);
  const auto phi = [](double x) { return std::exp(x) + x * x * x; };
  for (int trial = 0; trial < 100; ++trial) {
    const Case c = random_case(rng, trial);
    std::vector<double> g, t;
    for (double v : c.f.values()) g.push_back(phi(v));
    for (double v : c.spec.thresholds()) t.push_back(phi(v));
    const FiltrationSpec mapped(NodeValues(g), t, c.spec.direction(), c.spec.mode());
    // Compare in original coordinates through the threshold index.
    const auto index_of = [](const PersistenceDiagram& pd, double x) {
      return std::find(pd.thresholds.begin(), pd.thresholds.end(), x) - pd.thresholds.begin();
    };
    for (int dim = 0; dim < 2; ++dim) {
      const PersistenceDiagram a = dim == 0 ? persistence_dim0(c.graph, c.spec) : persistence_dim1(c.graph, c.spec);
      const PersistenceDiagram b = dim == 0 ? persistence_dim0(c.graph, mapped) : persistence_dim1(c.graph, mapped);
      REQUIRE(a.size() == b.size());
      std::vector<std::pair<long, long>> ka, kb;
      for (const auto& p : a.pairs) ka.emplace_back(index_of(a, p.birth), p.essential ? -1 : index_of(a, p.death));
      for (const auto& p : b.pairs) kb.emplace_back(index_of(b, p.birth), p.essential ? -1 : index_of(b, p.death));
      std::sort(ka.begin(), ka.end());
      std::sort(kb.begin(), kb.end());
      CHECK(ka == kb);
    }
  }
}

TEST_CASE("diagram text round trip") {
  PersistenceDiagram pd;
  pd.dimension = 1;
  pd.pairs = {bar(0.5, 1.25, 1), bar(-3, 7, 1, true), bar(0.1, 0.30000000000000004, 1)};
  std::stringstream io;
  write_diagram(io, pd);
  CHECK(io.str().find("1 -3 7 1\n") != std::string::npos);
  CHECK(read_diagram(io) == pd.pairs);

  std::istringstream bad("1 0.5\n");
  CHECK_THROWS(read_diagram(bad));
}
