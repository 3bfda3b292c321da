// Tests for matrix learners over matrix-cut channels: dense, sparse-row, and
// unknown-support learning plus degree-sequence estimation.

#include <gtest/gtest.h>

#include <cstdint>
#include <vector>

#include "cutq/matrix_learn.hpp"
#include "cutq/oracle.hpp"

namespace {

using namespace cutq;

IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  IntMatrix m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) m.at(r, c) = rows[static_cast<size_t>(r)][static_cast<size_t>(c)];
  return m;
}

TEST(LearnDense, ZeroMatrixAtUnitCharge) {
  QueryLedger ledger;
  DirectMatrixChannel ch(IntMatrix(3, 3), ledger);
  const IntMatrix got = learn_dense(ch, 2);
  EXPECT_EQ(got, IntMatrix(3, 3));
  // min(3, 3) * ceil(log2 2) = 3 charged queries, and one backend probe each.
  EXPECT_EQ(ledger.count(QueryKind::quantum_charged), 3);
  EXPECT_EQ(ledger.count(QueryKind::matrix_cut), 3);
}

TEST(LearnDense, PathAdjacencyExact) {
  const IntMatrix adj = from_rows({{0, 1, 0}, {1, 0, 1}, {0, 1, 0}});
  QueryLedger ledger;
  DirectMatrixChannel ch(adj, ledger);
  EXPECT_EQ(learn_dense(ch, 2), adj);
}

TEST(LearnDense, WideMatrixLearnsAlongShortSide) {
  // 4 x 7 with M = 4: the transposed channel is used, so the charge is
  // min(4, 7) * ceil(log2 4) = 8.
  IntMatrix a(4, 7);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 7; ++c) a.at(r, c) = (r * 7 + c) % 4;
  QueryLedger ledger;
  DirectMatrixChannel ch(a, ledger);
  EXPECT_EQ(learn_dense(ch, 4), a);
  EXPECT_EQ(ledger.count(QueryKind::quantum_charged), 8);
  EXPECT_EQ(ledger.count(QueryKind::matrix_cut), 8);
}

TEST(LearnDense, EntriesReducedModM) {
  // Hidden entries outside [0, M) are learned as their residues.
  const IntMatrix adj = from_rows({{5, 0}, {0, 3}});
  QueryLedger ledger;
  DirectMatrixChannel ch(adj, ledger);
  const IntMatrix got = learn_dense(ch, 4);
  EXPECT_EQ(got.at(0, 0), 1);
  EXPECT_EQ(got.at(1, 1), 3);
}

TEST(LearnDense, RejectsBadModulus) {
  QueryLedger ledger;
  DirectMatrixChannel ch(IntMatrix(2, 2), ledger);
  EXPECT_THROW(learn_dense(ch, 1), ParameterError);
}

TEST(SparseSketchColumns, ClosedForm) {
  // 4 d ceil(log2(M l / d)) + ceil(log2(1/delta)).
  EXPECT_EQ(sparse_sketch_columns(2, 8, 1, 0.25), 4 * 4 + 2);
  EXPECT_EQ(sparse_sketch_columns(4, 16, 2, 0.5), 4 * 2 * 5 + 1);
  EXPECT_EQ(sparse_sketch_columns(2, 8, 0, 0.25), 2);  // d = 0 keeps the delta term
}

TEST(LearnSparse, PermutationMatrixRecovered) {
  // Rows are 1-sparse; recovery should succeed for most sketch draws and the
  // charge is exactly q * ceil(log2 M).
  IntMatrix perm(8, 8);
  for (int i = 0; i < 8; ++i) perm.at(i, (3 * i + 1) % 8) = 1;
  const std::int64_t q = sparse_sketch_columns(2, 8, 1, 0.25);
  int ok = 0;
  const int seeds = 40;
  for (int seed = 0; seed < seeds; ++seed) {
    QueryLedger ledger;
    DirectMatrixChannel ch(perm, ledger);
    auto rng = make_rng(100 + seed, "sparse");
    try {
      const IntMatrix got = learn_sparse_rows(ch, 2, 1, 0.25, SparseDecode::exhaustive, rng);
      if (got == perm) ++ok;
    } catch (const FailureEvent&) {
      // counted as a miss
    }
    EXPECT_EQ(ledger.count(QueryKind::quantum_charged), q);
    EXPECT_EQ(ledger.count(QueryKind::matrix_cut), q);
  }
  EXPECT_GE(ok, seeds * 6 / 10);  // promise is >= 1 - delta = 3/4 on average
}

TEST(LearnSparse, TrustedModeMatchesHiddenRows) {
  IntMatrix a(6, 12);
  a.at(0, 3) = 2;
  a.at(2, 7) = 1;
  a.at(2, 11) = 3;
  a.at(5, 0) = 1;
  QueryLedger ledger;
  DirectMatrixChannel ch(a, ledger);
  auto rng = make_rng(17, "sparse");
  const IntMatrix got = learn_sparse_rows(ch, 4, 2, 0.25, SparseDecode::trusted, rng);
  EXPECT_EQ(got, a);
  const std::int64_t q = sparse_sketch_columns(4, 12, 2, 0.25);
  EXPECT_EQ(ledger.count(QueryKind::quantum_charged), q * 2);  // ceil(log2 4) = 2
}

TEST(LearnSparse, DenseFallbackWhenSketchBuysNothing) {
  // 2 d >= l routes to the dense learner: identity 8x8 with d = 4.
  IntMatrix eye(8, 8);
  for (int i = 0; i < 8; ++i) eye.at(i, i) = 1;
  QueryLedger ledger;
  DirectMatrixChannel ch(eye, ledger);
  auto rng = make_rng(23, "sparse");
  const IntMatrix got = learn_sparse_rows(ch, 2, 4, 0.25, SparseDecode::exhaustive, rng);
  EXPECT_EQ(got, eye);
  EXPECT_EQ(ledger.count(QueryKind::quantum_charged), 8);
}

TEST(LearnSparse, OverdenseRowRaisesFailure) {
  // A row of weight 5 cannot match any <= 1-sparse candidate, except through a
  // rare alias; a no-match or wrong decode must never be silent.
  IntMatrix a(1, 16);
  for (int j = 0; j < 5; ++j) a.at(0, 3 * j) = 1;
  QueryLedger ledger;
  DirectMatrixChannel ch(a, ledger);
  auto rng = make_rng(29, "sparse");
  bool threw = false;
  IntMatrix got;
  try {
    got = learn_sparse_rows(ch, 2, 1, 0.25, SparseDecode::exhaustive, rng);
  } catch (const FailureEvent&) {
    threw = true;
  }
  if (!threw) EXPECT_NE(got, a);
}

TEST(DegreeSequence, BinaryCaseIsExact) {
  const IntMatrix k3 = from_rows({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  QueryLedger ledger;
  DirectMatrixChannel ch(k3, ledger);
  auto rng = make_rng(31, "deg");
  const auto est = degree_sequence(ch, 2, 0.25, 3, rng);
  EXPECT_TRUE(est.exact);
  ASSERT_EQ(est.degree.size(), 3u);
  for (double g : est.degree) EXPECT_DOUBLE_EQ(g, 2.0);
  // ceil(log2(l + 1)) = ceil(log2 4) = 2 charged queries.
  EXPECT_EQ(ledger.count(QueryKind::quantum_charged), 2);
}

TEST(DegreeSequence, ZeroMatrixExactZeros) {
  QueryLedger ledger;
  DirectMatrixChannel ch(IntMatrix(4, 5), ledger);
  auto rng = make_rng(32, "deg");
  const auto est = degree_sequence(ch, 2, 0.25, 3, rng);
  EXPECT_TRUE(est.exact);
  for (double g : est.degree) EXPECT_DOUBLE_EQ(g, 0.0);
}

TEST(DegreeSequence, LargeAlphabetStatistical) {
  // M = 4 over a 4 x 16 matrix with planted row supports 0, 1, 4, and 16.
  IntMatrix a(4, 16);
  a.at(1, 5) = 3;
  for (int j = 0; j < 4; ++j) a.at(2, 4 * j) = 2;
  for (int j = 0; j < 16; ++j) a.at(3, j) = 1;
  const std::vector<std::int64_t> truth = {0, 1, 4, 16};

  const std::int64_t mod = 16 * (4 - 1) + 1;  // 49
  const std::int64_t levels = ceil_log2(16) + 1;
  int good = 0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    QueryLedger ledger;
    DirectMatrixChannel ch(a, ledger);
    auto rng = make_rng(4000 + t, "deg");
    const auto est = degree_sequence(ch, 4, 0.125, 3, rng);
    EXPECT_FALSE(est.exact);
    EXPECT_EQ(est.or_queries, est.repetitions * levels);
    EXPECT_EQ(ledger.count(QueryKind::quantum_charged),
              est.or_queries * ceil_log2(static_cast<std::uint64_t>(mod)));
    if (is_good_estimate(est.degree, truth)) ++good;
  }
  EXPECT_GE(good, trials - static_cast<int>(trials * 0.125) - 10);
}

TEST(LearnMNonzeros, SingleNonzeroEntry) {
  IntMatrix a(8, 8);
  a.at(2, 5) = 1;
  QueryLedger ledger;
  DirectMatrixChannel ch(a, ledger);
  auto rng = make_rng(41, "mnz");
  const auto res = learn_m_nonzeros(ch, 2, 0.25, 3, SparseDecode::trusted, rng);
  EXPECT_EQ(res.matrix, a);
  // Exact binary degrees: bound = sum min(2 g, l) = 2, threshold sqrt(2/4).
  EXPECT_DOUBLE_EQ(res.nonzeros_bound, 2.0);
  EXPECT_LE(res.high_rows.size(), 1u);
}

TEST(LearnMNonzeros, ZeroMatrix) {
  QueryLedger ledger;
  DirectMatrixChannel ch(IntMatrix(6, 6), ledger);
  auto rng = make_rng(42, "mnz");
  const auto res = learn_m_nonzeros(ch, 2, 0.25, 3, SparseDecode::trusted, rng);
  EXPECT_EQ(res.matrix, IntMatrix(6, 6));
  EXPECT_DOUBLE_EQ(res.nonzeros_bound, 0.0);
  EXPECT_TRUE(res.high_rows.empty());
}

TEST(LearnMNonzeros, SplitsDenseAndSparseRows) {
  // Row 0 is all ones; five other rows carry one entry each.  The dense row
  // must land in the high set and everything must be recovered exactly.
  IntMatrix a(16, 16);
  for (int j = 0; j < 16; ++j) a.at(0, j) = 1;
  for (int i = 1; i <= 5; ++i) a.at(3 * i % 16 == 0 ? i : 3 * i % 16, i) = 1;
  QueryLedger ledger;
  DirectMatrixChannel ch(a, ledger);
  auto rng = make_rng(43, "mnz");
  const auto res = learn_m_nonzeros(ch, 2, 0.25, 3, SparseDecode::trusted, rng);
  EXPECT_EQ(res.matrix, a);
  ASSERT_FALSE(res.high_rows.empty());
  EXPECT_EQ(res.high_rows[0], 0);
  EXPECT_GT(res.threshold, 0.0);
}

TEST(LearnMNonzeros, AuditAcceptsHonestChannel) {
  IntMatrix a(8, 8);
  a.at(1, 2) = 1;
  a.at(4, 7) = 1;
  QueryLedger ledger;
  DirectMatrixChannel ch(a, ledger);
  auto rng = make_rng(44, "mnz");
  auto audit_rng = make_rng(44, "audit");
  AuditConfig audit;
  audit.enabled = true;
  EXPECT_NO_THROW({
    const auto res = learn_m_nonzeros(ch, 2, 0.25, 3, SparseDecode::trusted, rng, audit,
                                      &audit_rng);
    EXPECT_EQ(res.matrix, a);
  });
  EXPECT_GT(ledger.count(QueryKind::audit), 0);
}

}  // namespace

