#include "corpus.hpp"
#include "oracles.hpp"

#include "obspart/digraph.hpp"
#include "obspart/errors.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

using namespace obspart;
using P = std::pair<std::size_t, std::size_t>;

namespace {

StructuredSystem chain_with_y3() {
  const P a[] = {{2, 1}, {3, 2}};
  const P h[] = {{1, 3}};
  return make_system(3, 1, a, h);
}

} // namespace

TEST_CASE("build_digraph follows the transpose convention") {
  SECTION("single edge") {
    const P a[] = {{2, 1}};
    SystemDigraph dg = build_digraph(make_system(2, 0, a, {}));
    CHECK(dg.edges() == std::vector<std::pair<NodeId, NodeId>>{{0, 1}});
  }
  SECTION("self-loop") {
    const P a[] = {{1, 1}};
    SystemDigraph dg = build_digraph(make_system(1, 0, a, {}));
    CHECK(dg.edges() == std::vector<std::pair<NodeId, NodeId>>{{0, 0}});
  }
  SECTION("chain with a measurement") {
    SystemDigraph dg = build_digraph(chain_with_y3());
    // Independent reconstruction: x_j -> x_i per a_ij, x_j -> y_i per h_ij.
    std::vector<std::pair<NodeId, NodeId>> expected = {{0, 1}, {1, 2}, {2, 3}};
    CHECK(dg.edges() == expected);
    CHECK(dg.label(3) == "y1");
    CHECK(dg.successors(3).empty());
  }
  SECTION("out of range names the entry") {
    StructuredSystem bad{2, 0, {{5, 0}}, {}};
    CHECK_THROWS_WITH(build_digraph(bad), Catch::Matchers::ContainsSubstring("(6, 1)"));
  }
}

TEST_CASE("build_bipartite") {
  SECTION("self-loop") {
    const P a[] = {{1, 1}};
    BipartiteGraph bg = build_bipartite(build_digraph(make_system(1, 0, a, {})));
    CHECK(bg.edges() == std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}});
  }
  SECTION("chain") {
    const P a[] = {{2, 1}, {3, 2}};
    BipartiteGraph bg = build_bipartite(build_digraph(make_system(3, 0, a, {})));
    CHECK(bg.edges() == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}});
  }
  SECTION("empty") {
    BipartiteGraph bg = build_bipartite(build_digraph(make_system(3, 0, {}, {})));
    CHECK(bg.edge_count() == 0);
    CHECK(bg.begin_count() == 3);
  }
  SECTION("measurement ends only") {
    BipartiteGraph bg = bipartite_of(chain_with_y3());
    CHECK(bg.end_count() == 4);
    CHECK(bg.has_edge(2, 3));
    CHECK(bg.begins_of(3).size() == 1);
  }
}

TEST_CASE("reverse_reachable") {
  SECTION("chain to y1") {
    SystemDigraph dg = build_digraph(chain_with_y3());
    NodeId t[] = {3};
    CHECK(reverse_reachable(dg, t) == std::vector<NodeId>{0, 1, 2, 3});
  }
  SECTION("isolated nodes") {
    SystemDigraph dg = build_digraph(make_system(2, 0, {}, {}));
    NodeId t[] = {0};
    CHECK(reverse_reachable(dg, t) == std::vector<NodeId>{0});
  }
  SECTION("unknown id") {
    SystemDigraph dg = build_digraph(make_system(2, 0, {}, {}));
    NodeId t[] = {7};
    CHECK_THROWS_AS(reverse_reachable(dg, t), InputError);
  }
  SECTION("two-branch system reaches every state from its sensors") {
    // x1 -> x2, x1 -> x3, x2 <-> x3 with sensors on x2 and x3.
    const P a[] = {{2, 1}, {3, 1}, {3, 2}, {2, 3}};
    const P h[] = {{1, 2}, {2, 3}};
    SystemDigraph dg = build_digraph(make_system(3, 2, a, h));
    NodeId t[] = {dg.measurement_node(0), dg.measurement_node(1)};
    CHECK(reverse_reachable(dg, t) == std::vector<NodeId>{0, 1, 2, 3, 4});
  }
}

TEST_CASE("graph-core properties on random systems") {
  auto systems = testing::corpus(300, 11);
  testing::Rng rng(5);
  for (const auto& sys : systems) {
    SystemDigraph dg = build_digraph(sys);
    CHECK(canonical(to_system(dg)) == canonical(sys));
    CHECK(bipartite_of(sys).edge_count() == sys.a_pattern.size() + sys.h_pattern.size());

    auto reach = testing::transitive_closure(dg);
    std::vector<NodeId> small = {rng.below(dg.node_count())};
    std::vector<NodeId> large = small;
    large.push_back(rng.below(dg.node_count()));
    auto rs = reverse_reachable(dg, small);
    auto rl = reverse_reachable(dg, large);
    CHECK(std::includes(rl.begin(), rl.end(), rs.begin(), rs.end()));
    std::vector<NodeId> expected;
    for (NodeId v = 0; v < dg.node_count(); ++v) {
      if (reach[v][small[0]]) {
        expected.push_back(v);
      }
    }
    CHECK(rs == expected);
  }
}
