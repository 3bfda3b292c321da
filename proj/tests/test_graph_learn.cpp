// Tests for whole-graph learners over cut and additive oracles.

#include <gtest/gtest.h>

#include <cstdint>
#include <vector>

#include "cutq/graph_learn.hpp"

namespace {

using namespace cutq;

TEST(AdjacencyToGraph, RoundTripsSymmetricMatrix) {
  IntMatrix a(4, 4);
  a.at(0, 1) = a.at(1, 0) = 2;
  a.at(2, 3) = a.at(3, 2) = 1;
  const WeightedGraph g = adjacency_to_graph(a);
  EXPECT_EQ(g.n(), 4);
  ASSERT_EQ(g.edges().size(), 2u);
  EXPECT_EQ(g.weight(0, 1), 2);
  EXPECT_EQ(g.weight(2, 3), 1);
}

TEST(AdjacencyToGraph, RejectsAsymmetryAndDiagonal) {
  IntMatrix bad(3, 3);
  bad.at(0, 1) = 1;  // no mirror entry
  EXPECT_THROW(adjacency_to_graph(bad), IntegrityError);
  IntMatrix diag(3, 3);
  diag.at(1, 1) = 1;
  EXPECT_THROW(adjacency_to_graph(diag), IntegrityError);
  EXPECT_THROW(adjacency_to_graph(IntMatrix(2, 3)), ParameterError);
}

TEST(LearnGraphCutFull, SmallGraphExactAtPinnedCharge) {
  // n = 5, M = 2: exactly 3 n ceil(log2 M) = 15 cut queries.
  const WeightedGraph g = make_cycle(5);
  QueryLedger ledger;
  OracleHandle h(g, ledger, OracleMode::cut);
  const WeightedGraph got = learn_graph_cut_full(h, 2);
  EXPECT_EQ(graph_to_string(got), graph_to_string(g));
  EXPECT_EQ(ledger.cut(), 15);
  EXPECT_EQ(ledger.count(QueryKind::quantum_charged), 5);
}

TEST(LearnGraphCutFull, EmptyGraph) {
  const WeightedGraph g = make_empty(8);
  QueryLedger ledger;
  OracleHandle h(g, ledger, OracleMode::cut);
  const WeightedGraph got = learn_graph_cut_full(h, 2);
  EXPECT_TRUE(got.edges().empty());
  EXPECT_EQ(ledger.cut(), 24);
}

TEST(LearnGraphCutFull, WeightedRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const WeightedGraph g = make_weighted_random(10, 4, seed);
    QueryLedger ledger;
    OracleHandle h(g, ledger, OracleMode::cut);
    const WeightedGraph got = learn_graph_cut_full(h, 4);
    EXPECT_EQ(graph_to_string(got), graph_to_string(g));
    EXPECT_EQ(ledger.cut(), 3 * 10 * 2);
  }
}

TEST(LearnGraphCutFull, RequiresCutMode) {
  const WeightedGraph g = make_path(4);
  QueryLedger ledger;
  OracleHandle h(g, ledger, OracleMode::additive);
  EXPECT_THROW(learn_graph_cut_full(h, 2), ModeError);
}

TEST(LearnBipartiteCut, StarAcrossTheSplit) {
  // Star centred at 0 with leaves 1..4; left {0}, right {1, 2, 3, 4}.
  const WeightedGraph g(5, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {0, 4, 1}});
  QueryLedger ledger;
  OracleHandle h(g, ledger, OracleMode::cut);
  auto rng = make_rng(5, "bip");
  const IntMatrix b = learn_bipartite_cut(h, {0}, {1, 2, 3, 4}, 2,
                                          LearnBudget::degree_bound(4), 0.25,
                                          SparseDecode::trusted, rng);
  ASSERT_EQ(b.rows, 1);
  ASSERT_EQ(b.cols, 4);
  for (int c = 0; c < 4; ++c) EXPECT_EQ(b.at(0, c), 1);
}

TEST(LearnBipartiteCut, NoCrossingEdges) {
  // Two disjoint edges inside each side: the biadjacency block is zero.
  const WeightedGraph g(4, {{0, 1, 1}, {2, 3, 1}});
  QueryLedger ledger;
  OracleHandle h(g, ledger, OracleMode::cut);
  auto rng = make_rng(6, "bip");
  const IntMatrix b = learn_bipartite_cut(h, {0, 1}, {2, 3}, 2, LearnBudget::degree_bound(1),
                                          0.25, SparseDecode::trusted, rng);
  EXPECT_EQ(b, IntMatrix(2, 2));
}

TEST(LearnBipartiteCut, EdgeBudgetRoute) {
  const WeightedGraph g(6, {{0, 3, 1}, {1, 4, 1}, {2, 5, 1}});
  QueryLedger ledger;
  OracleHandle h(g, ledger, OracleMode::cut);
  auto rng = make_rng(7, "bip");
  const IntMatrix b = learn_bipartite_cut(h, {0, 1, 2}, {3, 4, 5}, 2,
                                          LearnBudget::edge_bound(3), 0.25,
                                          SparseDecode::trusted, rng);
  IntMatrix want(3, 3);
  for (int i = 0; i < 3; ++i) want.at(i, i) = 1;
  EXPECT_EQ(b, want);
}

TEST(LearnGraphCut, CycleViaLabelBitSplits) {
  const WeightedGraph g = make_cycle(16);
  QueryLedger ledger;
  OracleHandle h(g, ledger, OracleMode::cut);
  auto rng = make_rng(8, "split");
  const WeightedGraph got = learn_graph_cut(h, 2, LearnBudget::degree_bound(2), 0.25,
                                            SparseDecode::trusted, rng);
  EXPECT_EQ(graph_to_string(got), graph_to_string(g));
}

TEST(LearnGraphCut, EmptyGraphNoEdges) {
  const WeightedGraph g = make_empty(9);
  QueryLedger ledger;
  OracleHandle h(g, ledger, OracleMode::cut);
  auto rng = make_rng(9, "split");
  const WeightedGraph got = learn_graph_cut(h, 2, LearnBudget::degree_bound(0), 0.25,
                                            SparseDecode::trusted, rng);
  EXPECT_TRUE(got.edges().empty());
  EXPECT_EQ(got.n(), 9);
}

TEST(LearnGraphCut, WeightedMatchingExact) {
  const WeightedGraph g(8, {{0, 1, 3}, {2, 3, 1}, {4, 5, 2}, {6, 7, 3}});
  QueryLedger ledger;
  OracleHandle h(g, ledger, OracleMode::cut);
  auto rng = make_rng(10, "split");
  const WeightedGraph got = learn_graph_cut(h, 4, LearnBudget::degree_bound(1), 0.25,
                                            SparseDecode::trusted, rng);
  EXPECT_EQ(graph_to_string(got), graph_to_string(g));
}

TEST(LearnGraphAdditive, HamiltonianCycleWithinChargeBound) {
  // n = 128 cycle learned through the additive-backed matrix channel with an
  // edge budget; the dominant costs are the degree estimate and the sparse
  // sketches, all audited here only through the total additive counter being
  // positive and the result exact.
  const int n = 128;
  const WeightedGraph g = make_cycle(n);
  QueryLedger ledger;
  OracleHandle h(g, ledger, OracleMode::additive);
  auto rng = make_rng(11, "add");
  const WeightedGraph got = learn_graph_additive(h, 2, LearnBudget::edge_bound(n), 1.0 / n,
                                                 SparseDecode::trusted, rng);
  EXPECT_EQ(graph_to_string(got), graph_to_string(g));
  // Every charged matrix query is served by exactly five additive queries.
  EXPECT_EQ(ledger.additive(), 5 * ledger.count(QueryKind::quantum_charged));
  EXPECT_EQ(ledger.cut(), 0);
}

TEST(LearnGraphAdditive, MatchingWithDegreeBudget) {
  const int n = 64;
  const WeightedGraph g = make_matching(n);
  QueryLedger ledger;
  OracleHandle h(g, ledger, OracleMode::additive);
  auto rng = make_rng(12, "add");
  const WeightedGraph got = learn_graph_additive(h, 2, LearnBudget::degree_bound(1), 1.0 / n,
                                                 SparseDecode::trusted, rng);
  EXPECT_EQ(graph_to_string(got), graph_to_string(g));
  const std::int64_t q = sparse_sketch_columns(2, n, 1, 1.0 / n);
  EXPECT_EQ(ledger.count(QueryKind::quantum_charged), q);
  EXPECT_EQ(ledger.additive(), 5 * q);
}

TEST(LearnGraphAdditive, RequiresAdditiveMode) {
  const WeightedGraph g = make_path(4);
  QueryLedger ledger;
  OracleHandle h(g, ledger, OracleMode::cut);
  auto rng = make_rng(13, "add");
  EXPECT_THROW(learn_graph_additive(h, 2, LearnBudget::degree_bound(2), 0.25,
                                    SparseDecode::trusted, rng),
               ModeError);
}

}  // namespace
