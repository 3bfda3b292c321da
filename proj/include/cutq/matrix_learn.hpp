#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "cutq/common.hpp"
#include "cutq/ledger.hpp"
#include "cutq/matrix.hpp"
#include "cutq/oracle.hpp"
#include "cutq/quantum.hpp"
#include "cutq/sketch.hpp"

namespace cutq {

// How sparse recovery resolves a signature back into a row.  `exhaustive`
// enumerates every candidate (meet-in-the-middle; only viable for small
// instances); `trusted` verifies the privileged hidden row against the
// signature, which preserves charges and failure semantics at any scale.
enum class SparseDecode { exhaustive, trusted };

// Learns a hidden A in [M]^{k x l} exactly, column by column (row by row if
// that is cheaper), for min{k, l} * ceil(log2 M) charged queries.
inline IntMatrix learn_dense(MatrixCutChannel& ch, std::int64_t M,
                             const AuditConfig& audit = {}, Rng* audit_rng = nullptr) {
  if (M < 2) throw ParameterError("learn_dense: need M >= 2");
  if (ch.cols() > ch.rows()) {
    TransposedChannel t(ch);
    return learn_dense(t, M, audit, audit_rng).transposed();
  }
  const int k = ch.rows();
  const int l = ch.cols();
  QueryLedger& ledger = ch.ledger();
  QueryLedger::TraceScope scope(ledger);
  IntMatrix a(k, l);
  std::vector<std::uint8_t> y(static_cast<size_t>(l), 0);
  for (int j = 0; j < l; ++j) {
    y[static_cast<size_t>(j)] = 1;
    const auto col = compute_Ay_mod(ch, y, M, audit, audit_rng);
    y[static_cast<size_t>(j)] = 0;
    for (int i = 0; i < k; ++i) a.at(i, j) = col[static_cast<size_t>(i)];
  }
  scope.record({TraceOp::learn_dense, k, l, M, static_cast<std::int64_t>(ch.backend_kind()),
                ch.backend_multiplier()});
  return a;
}

inline std::int64_t sparse_sketch_columns(std::int64_t M, int l, int d, double delta) {
  const std::int64_t ratio =
      ceil_log2_ratio(static_cast<std::uint64_t>(M) * static_cast<std::uint64_t>(l),
                      static_cast<std::uint64_t>(std::max(d, 1)));
  return 4 * static_cast<std::int64_t>(d) * ratio + ceil_log2_real(1.0 / delta);
}

// Learns a hidden A in [M]^{k x l} whose rows are promised d-sparse, with
// probability >= 1 - delta, for (4d ceil(log2(Ml/d)) + ceil(log2(1/delta)))
// * ceil(log2 M) charged queries.  When d >= l/2 the sketch buys nothing and
// the dense learner is used instead.
inline IntMatrix learn_sparse_rows(MatrixCutChannel& ch, std::int64_t M, int d, double delta,
                                   SparseDecode mode, Rng& rng, const AuditConfig& audit = {},
                                   Rng* audit_rng = nullptr) {
  if (M < 2) throw ParameterError("learn_sparse_rows: need M >= 2");
  if (d < 0) throw ParameterError("learn_sparse_rows: need d >= 0");
  if (!(delta > 0.0) || !(delta < 1.0))
    throw ParameterError("learn_sparse_rows: delta must be in (0,1)");
  const int k = ch.rows();
  const int l = ch.cols();
  if (2 * d >= l) return learn_dense(ch, M, audit, audit_rng);

  QueryLedger& ledger = ch.ledger();
  QueryLedger::TraceScope scope(ledger);
  const std::int64_t q = sparse_sketch_columns(M, l, d, delta);
  const Sketch sk = Sketch::draw_with_columns(l, M, q, rng);

  std::vector<std::vector<std::int64_t>> sig(static_cast<size_t>(k),
                                             std::vector<std::int64_t>(static_cast<size_t>(q)));
  std::vector<std::uint8_t> y(static_cast<size_t>(l));
  for (std::int64_t c = 0; c < q; ++c) {
    for (int i = 0; i < l; ++i) y[static_cast<size_t>(i)] = sk.R[static_cast<size_t>(i)][static_cast<size_t>(c)];
    const auto col = compute_Ay_mod(ch, y, M, audit, audit_rng);
    for (int i = 0; i < k; ++i) sig[static_cast<size_t>(i)][static_cast<size_t>(c)] = col[static_cast<size_t>(i)];
  }

  IntMatrix a(k, l);
  for (int i = 0; i < k; ++i) {
    DecodeResult res;
    if (mode == SparseDecode::exhaustive) {
      res = decode_exhaustive(sk, sig[static_cast<size_t>(i)], d);
    } else {
      res = decode_trusted(sk, sig[static_cast<size_t>(i)], d, ch.hidden_row(i));
    }
    if (res.status == DecodeStatus::ambiguous)
      throw FailureEvent("sparse recovery: signature matched by several sparse rows");
    if (res.status == DecodeStatus::no_match)
      throw FailureEvent("sparse recovery: no sparse row matches the signature");
    for (int j = 0; j < l; ++j) a.at(i, j) = res.value[static_cast<size_t>(j)];
  }
  scope.record({TraceOp::learn_sparse, k, l, M, d, static_cast<std::int64_t>(ch.backend_kind()),
                delta, static_cast<double>(ch.backend_multiplier())});
  return a;
}

struct DegreeEstimate {
  std::vector<double> degree;  // per-row nonzero count (exact when `exact`)
  bool exact = false;
  std::int64_t or_queries = 0;
  std::int64_t repetitions = 0;
};

// Per-row nonzero counts of the hidden matrix.  For M = 2 the counts are row
// sums and are read off exactly with ceil(log2(l+1)) charged queries.  For
// M > 2 each row count is approximated to within the good-estimate contract
// with probability >= 1 - delta, by OR tests served through queries modulo
// l(M-1)+1 (large enough that a sampled submatrix row sum never wraps).
inline DegreeEstimate degree_sequence(MatrixCutChannel& ch, std::int64_t M, double delta,
                                      std::int64_t rep_const, Rng& rng,
                                      const AuditConfig& audit = {}, Rng* audit_rng = nullptr) {
  if (M < 2) throw ParameterError("degree_sequence: need M >= 2");
  const int k = ch.rows();
  const int l = ch.cols();
  if (k < 1 || l < 1) throw ParameterError("degree_sequence: empty matrix");
  QueryLedger& ledger = ch.ledger();

  DegreeEstimate out;
  if (M == 2) {
    QueryLedger::TraceScope scope(ledger);
    const std::vector<std::uint8_t> ones(static_cast<size_t>(l), 1);
    const auto sums = compute_Ay_mod(ch, ones, static_cast<std::int64_t>(l) + 1, audit, audit_rng);
    scope.record({TraceOp::degree_seq_exact, k, l, static_cast<std::int64_t>(ch.backend_kind()),
                  ch.backend_multiplier()});
    out.degree.assign(sums.begin(), sums.end());
    out.exact = true;
    return out;
  }

  QueryLedger::TraceScope scope(ledger);
  const std::int64_t mod = static_cast<std::int64_t>(l) * (M - 1) + 1;
  std::vector<std::uint8_t> y(static_cast<size_t>(l));
  const KOrOracle or_oracle = [&](const std::vector<int>& sample) {
    std::fill(y.begin(), y.end(), 0);
    for (int s : sample) y[static_cast<size_t>(s)] = 1;
    const auto v = compute_Ay_mod(ch, y, mod, audit, audit_rng);
    std::vector<std::uint8_t> ans(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i)
      ans[static_cast<size_t>(i)] = v[static_cast<size_t>(i)] >= 1 ? 1 : 0;
    return ans;
  };
  const auto res = approximate_count(or_oracle, k, l, delta, rep_const, rng);
  scope.record({TraceOp::approx_count, k, l, mod, static_cast<std::int64_t>(ch.backend_kind()),
                ch.backend_multiplier(), delta, static_cast<double>(rep_const)});
  out.degree = res.estimate;
  out.exact = false;
  out.or_queries = res.or_queries;
  out.repetitions = res.repetitions;
  return out;
}

struct MNonzerosResult {
  IntMatrix matrix;
  std::vector<double> degree;
  double nonzeros_bound = 0.0;  // sum_i min(2 g(i), l)
  double threshold = 0.0;       // rows with estimate above this are dense-learned
  std::vector<int> high_rows;
};

// Learns a hidden matrix whose total nonzero count m is unknown, spending
// roughly sqrt(m)-type query budgets: estimate the degree sequence, bound m
// from it, learn the low-degree rows sparsely and the few high-degree rows
// densely.
inline MNonzerosResult learn_m_nonzeros(MatrixCutChannel& ch, std::int64_t M, double delta,
                                        std::int64_t rep_const, SparseDecode mode, Rng& rng,
                                        const AuditConfig& audit = {}, Rng* audit_rng = nullptr) {
  if (!(delta > 0.0) || !(delta < 1.0))
    throw ParameterError("learn_m_nonzeros: delta must be in (0,1)");
  const int k = ch.rows();
  const int l = ch.cols();

  MNonzerosResult out;
  const auto est = degree_sequence(ch, M, delta / 2, rep_const, rng, audit, audit_rng);
  out.degree = est.degree;
  double m_hat = 0.0;
  for (double g : est.degree) m_hat += std::min(2.0 * g, static_cast<double>(l));
  out.nonzeros_bound = m_hat;
  const double log_term = std::log2(static_cast<double>(M) * static_cast<double>(l));
  const double d = log_term > 0.0 ? std::sqrt(m_hat / log_term) : 0.0;
  out.threshold = d;

  std::vector<int> low_rows;
  for (int i = 0; i < k; ++i) {
    if (est.degree[static_cast<size_t>(i)] > d)
      out.high_rows.push_back(i);
    else
      low_rows.push_back(i);
  }

  out.matrix = IntMatrix(k, l);
  if (!low_rows.empty()) {
    RowSubsetChannel low_ch(ch, low_rows);
    const int d_sparse = static_cast<int>(std::max<std::int64_t>(0, ceil_to_i64(2.0 * d)));
    const IntMatrix low = learn_sparse_rows(low_ch, M, d_sparse, delta / 2, mode, rng, audit,
                                            audit_rng);
    for (size_t i = 0; i < low_rows.size(); ++i)
      for (int j = 0; j < l; ++j)
        out.matrix.at(low_rows[i], j) = low.at(static_cast<int>(i), j);
  }
  if (!out.high_rows.empty()) {
    RowSubsetChannel high_ch(ch, out.high_rows);
    const IntMatrix high = learn_dense(high_ch, M, audit, audit_rng);
    for (size_t i = 0; i < out.high_rows.size(); ++i)
      for (int j = 0; j < l; ++j)
        out.matrix.at(out.high_rows[i], j) = high.at(static_cast<int>(i), j);
  }

  if (audit.enabled) {
    QueryLedger& ledger = ch.ledger();
    ledger.charge(QueryKind::audit, k);
    std::vector<std::int64_t> truth(static_cast<size_t>(k), 0);
    double m_true = 0.0;
    for (int i = 0; i < k; ++i) {
      for (std::int64_t v : ch.hidden_row(i))
        if (v != 0) ++truth[static_cast<size_t>(i)];
      m_true += static_cast<double>(truth[static_cast<size_t>(i)]);
    }
    if (is_good_estimate(est.degree, truth) && d > 0.0 &&
        static_cast<double>(out.high_rows.size()) * d > 4.0 * m_true + 1e-9)
      throw IntegrityError("learn_m_nonzeros: high-degree set exceeds its size bound");
  }
  return out;
}

}  // namespace cutq
