// Tests for random binary sketches, sparse decoding, and OR-query counting.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "cutq/sketch.hpp"

namespace {

using namespace cutq;

TEST(SketchSpec, ColumnFormulaWorkedExample) {
  SketchSpec spec{16, 2, 2, 0.5};
  EXPECT_EQ(spec.columns(), 25);
}

TEST(SketchSpec, ColumnsGrowWithSparsityAndAlphabet) {
  SketchSpec base{64, 2, 1, 0.25};
  SketchSpec denser = base;
  denser.d = 4;
  SketchSpec wider = base;
  wider.M = 16;
  EXPECT_GT(denser.columns(), base.columns());
  EXPECT_GT(wider.columns(), base.columns());
}

TEST(SketchSpec, DomainValidation) {
  EXPECT_THROW((SketchSpec{0, 2, 1, 0.5}.columns()), ParameterError);
  EXPECT_THROW((SketchSpec{4, 1, 1, 0.5}.columns()), ParameterError);
  EXPECT_THROW((SketchSpec{4, 2, 0, 0.5}.columns()), ParameterError);
  EXPECT_THROW((SketchSpec{4, 2, 1, 0.0}.columns()), ParameterError);
  EXPECT_THROW((SketchSpec{4, 2, 1, 1.0}.columns()), ParameterError);
}

TEST(Sketch, DrawShapeAndDeterminism) {
  SketchSpec spec{16, 2, 2, 0.5};
  auto rng1 = make_rng(11, "sketch");
  auto rng2 = make_rng(11, "sketch");
  const Sketch a = Sketch::draw(spec, rng1);
  const Sketch b = Sketch::draw(spec, rng2);
  EXPECT_EQ(a.r, 16);
  EXPECT_EQ(a.q, spec.columns());
  ASSERT_EQ(a.R.size(), 16u);
  for (const auto& row : a.R) EXPECT_EQ(static_cast<std::int64_t>(row.size()), a.q);
  EXPECT_EQ(a.R, b.R);
}

TEST(Sketch, ZeroVectorHasZeroSignature) {
  auto rng = make_rng(3, "sketch");
  const Sketch sk = Sketch::draw_with_columns(12, 4, 20, rng);
  const std::vector<std::int64_t> zero(12, 0);
  for (auto v : sk.signature(zero)) EXPECT_EQ(v, 0);
}

TEST(Sketch, SignatureIsLinearModM) {
  auto rng = make_rng(5, "sketch");
  const Sketch sk = Sketch::draw_with_columns(10, 5, 24, rng);
  auto vec_rng = make_rng(5, "vectors");
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::int64_t> x(10), y(10), sum(10);
    for (int i = 0; i < 10; ++i) {
      x[i] = static_cast<std::int64_t>(rand_below(vec_rng, 5));
      y[i] = static_cast<std::int64_t>(rand_below(vec_rng, 5));
      sum[i] = x[i] + y[i];
    }
    const auto sx = sk.signature(x);
    const auto sy = sk.signature(y);
    const auto ss = sk.signature(sum);
    for (std::int64_t c = 0; c < sk.q; ++c)
      EXPECT_EQ(ss[static_cast<size_t>(c)],
                floor_mod(sx[static_cast<size_t>(c)] + sy[static_cast<size_t>(c)], 5));
  }
}

// Distinct <=d-sparse vectors should collide only rarely at the designed
// column count; with delta = 1/4 a majority of seeds must give an injective
// sketch over the full candidate set.
TEST(Sketch, SparseVectorsSeparateAtDesignedWidth) {
  SketchSpec spec{12, 2, 2, 0.25};
  int injective = 0;
  const int seeds = 40;
  for (int seed = 0; seed < seeds; ++seed) {
    auto rng = make_rng(900 + seed, "sketch");
    const Sketch sk = Sketch::draw(spec, rng);
    std::set<std::vector<std::int64_t>> sigs;
    bool clash = false;
    // Enumerate every vector of Hamming weight <= 2 over {0,1}^12.
    std::vector<std::int64_t> x(12, 0);
    sigs.insert(sk.signature(x));
    for (int i = 0; i < 12 && !clash; ++i) {
      x.assign(12, 0);
      x[static_cast<size_t>(i)] = 1;
      if (!sigs.insert(sk.signature(x)).second) clash = true;
      for (int j = i + 1; j < 12 && !clash; ++j) {
        x[static_cast<size_t>(j)] = 1;
        if (!sigs.insert(sk.signature(x)).second) clash = true;
        x[static_cast<size_t>(j)] = 0;
      }
    }
    if (!clash) ++injective;
  }
  EXPECT_GE(injective, seeds / 2);
}

TEST(Decode, ExhaustiveRecoversOneSparseVector) {
  auto rng = make_rng(21, "sketch");
  const Sketch sk = Sketch::draw_with_columns(8, 2, 16, rng);
  std::vector<std::int64_t> x(8, 0);
  x[3] = 1;
  const auto res = decode_exhaustive(sk, sk.signature(x), 1);
  ASSERT_EQ(res.status, DecodeStatus::ok);
  EXPECT_EQ(res.value, x);
}

TEST(Decode, ExhaustiveRecoversZero) {
  auto rng = make_rng(22, "sketch");
  const Sketch sk = Sketch::draw_with_columns(8, 3, 16, rng);
  const std::vector<std::int64_t> zero(8, 0);
  const auto res = decode_exhaustive(sk, sk.signature(zero), 2);
  ASSERT_EQ(res.status, DecodeStatus::ok);
  EXPECT_EQ(res.value, zero);
}

TEST(Decode, ExhaustiveRecoversRandomSparseVectors) {
  SketchSpec spec{16, 4, 2, 0.125};
  int ok = 0;
  const int trials = 60;
  for (int trial = 0; trial < trials; ++trial) {
    auto rng = make_rng(500 + trial, "sketch");
    const Sketch sk = Sketch::draw(spec, rng);
    auto pick = make_rng(500 + trial, "vector");
    std::vector<std::int64_t> x(16, 0);
    const int a = static_cast<int>(rand_below(pick, 16));
    int b = static_cast<int>(rand_below(pick, 16));
    while (b == a) b = static_cast<int>(rand_below(pick, 16));
    x[static_cast<size_t>(a)] = 1 + static_cast<std::int64_t>(rand_below(pick, 3));
    x[static_cast<size_t>(b)] = 1 + static_cast<std::int64_t>(rand_below(pick, 3));
    const auto res = decode_exhaustive(sk, sk.signature(x), 2);
    if (res.status == DecodeStatus::ok && res.value == x) ++ok;
  }
  // Failure probability is at most delta per draw; allow modest slack.
  EXPECT_GE(ok, trials - static_cast<int>(trials * 0.125) - 4);
}

TEST(Decode, ExhaustiveReportsNoMatchForForeignSignature) {
  auto rng = make_rng(23, "sketch");
  const Sketch sk = Sketch::draw_with_columns(6, 2, 14, rng);
  std::vector<std::int64_t> dense(6, 1);  // weight 6 vector, decoded with d = 1
  const auto sig = sk.signature(dense);
  const auto res = decode_exhaustive(sk, sig, 1);
  // Either no 1-sparse candidate matches, or an accidental alias matched; the
  // status must never claim ok with the wrong preimage being equal to dense.
  if (res.status == DecodeStatus::ok) EXPECT_NE(res.value, dense);
}

TEST(Decode, TrustedAcceptsConsistentRow) {
  auto rng = make_rng(24, "sketch");
  const Sketch sk = Sketch::draw_with_columns(10, 4, 18, rng);
  std::vector<std::int64_t> x(10, 0);
  x[2] = 3;
  x[7] = 1;
  const auto res = decode_trusted(sk, sk.signature(x), 2, x);
  ASSERT_EQ(res.status, DecodeStatus::ok);
  EXPECT_EQ(res.value, x);
}

TEST(Decode, TrustedRejectsOverdenseRow) {
  auto rng = make_rng(25, "sketch");
  const Sketch sk = Sketch::draw_with_columns(10, 2, 18, rng);
  std::vector<std::int64_t> x(10, 1);
  const auto res = decode_trusted(sk, sk.signature(x), 2, x);
  EXPECT_EQ(res.status, DecodeStatus::no_match);
}

TEST(Decode, TrustedDetectsContradictingRow) {
  auto rng = make_rng(26, "sketch");
  const Sketch sk = Sketch::draw_with_columns(10, 2, 18, rng);
  std::vector<std::int64_t> x(10, 0);
  x[4] = 1;
  const auto sig = sk.signature(x);
  std::vector<std::int64_t> corrupted = x;
  corrupted[4] = 0;
  corrupted[5] = 1;
  if (sk.signature(corrupted) != sig) {
    EXPECT_THROW(decode_trusted(sk, sig, 2, corrupted), IntegrityError);
  } else {
    GTEST_SKIP() << "sketch aliased the corrupted row; nothing to detect";
  }
}

TEST(Decode, TrustedNormalizesModM) {
  auto rng = make_rng(27, "sketch");
  const Sketch sk = Sketch::draw_with_columns(6, 3, 14, rng);
  std::vector<std::int64_t> x(6, 0);
  x[1] = -1;  // congruent to 2 mod 3
  const auto res = decode_trusted(sk, sk.signature(x), 1, x);
  ASSERT_EQ(res.status, DecodeStatus::ok);
  EXPECT_EQ(res.value[1], 2);
}

TEST(OrCounting, SuccessProbabilityWorkedValues) {
  EXPECT_DOUBLE_EQ(r_test_success_prob(4, 8, 2), 0.75);
  EXPECT_DOUBLE_EQ(r_test_success_prob(0, 8, 5), 0.0);
  EXPECT_DOUBLE_EQ(r_test_success_prob(8, 8, 1), 1.0);
  EXPECT_THROW(r_test_success_prob(9, 8, 1), ParameterError);
  EXPECT_THROW(r_test_success_prob(1, 0, 1), ParameterError);
}

TEST(OrCounting, RepetitionFormula) {
  // a = rep_const * ceil(log2(k * levels / delta)) with levels = ceil(log2 l) + 1.
  EXPECT_EQ(approx_count_repetitions(1, 8, 0.25, 1), 4);   // ceil(log2(1*4/0.25))
  EXPECT_EQ(approx_count_repetitions(4, 16, 0.5, 3), 18);  // 3 * ceil(log2(4*5/0.5))
  EXPECT_EQ(approx_count_repetitions(4, 16, 0.5, 3),
            3 * ceil_log2_real(4.0 * 5.0 / 0.5));
  EXPECT_EQ(approx_count_queries(4, 16, 0.5, 3), approx_count_repetitions(4, 16, 0.5, 3) * 5);
}

// A KOrOracle over explicit bit strings.
KOrOracle oracle_for(const std::vector<std::vector<std::uint8_t>>& strings) {
  return [&strings](const std::vector<int>& sample) {
    std::vector<std::uint8_t> out(strings.size(), 0);
    for (size_t i = 0; i < strings.size(); ++i)
      for (int pos : sample)
        if (strings[i][static_cast<size_t>(pos)]) {
          out[i] = 1;
          break;
        }
    return out;
  };
}

TEST(OrCounting, AllOnesStringEstimatesFullWeight) {
  const std::vector<std::vector<std::uint8_t>> strings = {std::vector<std::uint8_t>(8, 1)};
  auto rng = make_rng(31, "count");
  const auto res = approximate_count(oracle_for(strings), 1, 8, 0.25, 3, rng);
  ASSERT_EQ(res.estimate.size(), 1u);
  // Every probe succeeds, so the first successful scale is j = 0 and the
  // estimate is l / 2^0 = 8.
  EXPECT_DOUBLE_EQ(res.estimate[0], 8.0);
}

TEST(OrCounting, ZeroStringEstimatesZero) {
  const std::vector<std::vector<std::uint8_t>> strings = {std::vector<std::uint8_t>(16, 0)};
  auto rng = make_rng(32, "count");
  const auto res = approximate_count(oracle_for(strings), 1, 16, 0.25, 3, rng);
  EXPECT_DOUBLE_EQ(res.estimate[0], 0.0);
}

TEST(OrCounting, QueryCountMatchesClosedForm) {
  const std::vector<std::vector<std::uint8_t>> strings = {
      std::vector<std::uint8_t>(32, 0), std::vector<std::uint8_t>(32, 1),
      std::vector<std::uint8_t>(32, 0)};
  auto rng = make_rng(33, "count");
  const auto res = approximate_count(oracle_for(strings), 3, 32, 0.125, 3, rng);
  const std::int64_t levels = ceil_log2(32) + 1;
  EXPECT_EQ(res.repetitions, approx_count_repetitions(3, 32, 0.125, 3));
  EXPECT_EQ(res.or_queries, res.repetitions * levels);
  EXPECT_EQ(res.or_queries, approx_count_queries(3, 32, 0.125, 3));
}

TEST(OrCounting, StatisticalAccuracyOnPlantedWeight) {
  // One hidden string of weight 4 in l = 16; the estimate should be a factor-4
  // under / factor-2 over approximation with failure rate about delta.
  std::vector<std::vector<std::uint8_t>> strings = {std::vector<std::uint8_t>(16, 0)};
  for (int i = 0; i < 4; ++i) strings[0][static_cast<size_t>(4 * i)] = 1;
  const std::vector<std::int64_t> truth = {4};
  int good = 0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    auto rng = make_rng(7000 + t, "count");
    const auto res = approximate_count(oracle_for(strings), 1, 16, 0.125, 3, rng);
    if (is_good_estimate(res.estimate, truth)) ++good;
  }
  EXPECT_GE(good, trials - static_cast<int>(trials * 0.125) - 10);
}

TEST(OrCounting, GoodEstimateBoundarySemantics) {
  EXPECT_TRUE(is_good_estimate({4.0}, {4}));
  EXPECT_TRUE(is_good_estimate({4.0}, {1}));    // c = b/4 boundary
  EXPECT_TRUE(is_good_estimate({4.0}, {8}));    // c = 2b boundary
  EXPECT_FALSE(is_good_estimate({8.0}, {1}));   // c < b/4
  EXPECT_FALSE(is_good_estimate({2.0}, {5}));   // c > 2b
  EXPECT_TRUE(is_good_estimate({0.0}, {0}));
  EXPECT_FALSE(is_good_estimate({1.0}, {0}));
  EXPECT_FALSE(is_good_estimate({0.0, 1.0}, {0}));  // length mismatch
}

TEST(HittingSet, SizeFormulaWorkedExample) {
  auto rng = make_rng(41, "hit");
  const auto sample = sample_hitting_set(64, 8, 4, 0.5, rng);
  // ceil(8 * 64 * ln(4 / 0.5) / 8) = ceil(64 ln 8) = 134.
  EXPECT_EQ(sample.size(), 134u);
  for (int v : sample) {
    EXPECT_GE(v, 0);
    EXPECT_LT(v, 64);
  }
}

TEST(HittingSet, HitsPlantedSetsReliably) {
  // Four hidden sets of size 8 inside [64]; each should be hit in nearly every
  // draw at delta = 0.05.
  std::vector<std::set<int>> hidden(4);
  for (int s = 0; s < 4; ++s)
    for (int i = 0; i < 8; ++i) hidden[static_cast<size_t>(s)].insert(16 * s + 2 * i);
  int all_hit = 0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    auto rng = make_rng(8000 + t, "hit");
    const auto sample = sample_hitting_set(64, 8, 4, 0.05, rng);
    bool ok = true;
    for (const auto& set : hidden) {
      bool hit = false;
      for (int v : sample)
        if (set.count(v)) {
          hit = true;
          break;
        }
      ok = ok && hit;
    }
    if (ok) ++all_hit;
  }
  EXPECT_GE(all_hit, 90);
}

TEST(HittingSet, ArgumentValidation) {
  auto rng = make_rng(42, "hit");
  EXPECT_THROW(sample_hitting_set(0, 1, 1, 0.5, rng), ParameterError);
  EXPECT_THROW(sample_hitting_set(8, 0, 1, 0.5, rng), ParameterError);
  EXPECT_THROW(sample_hitting_set(8, 1, 0, 0.5, rng), ParameterError);
  EXPECT_THROW(sample_hitting_set(8, 1, 1, 1.0, rng), ParameterError);
}

}  // namespace
