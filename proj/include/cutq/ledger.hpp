#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "cutq/common.hpp"

namespace cutq {

// Query kinds with a charged counter.  `audit` counts uncharged bookkeeping
// probes; it is never part of any bound comparison.
enum class QueryKind : int {
  cut = 0,
  additive = 1,
  matrix_cut = 2,
  disjoint_matrix_cut = 3,
  quantum_charged = 4,
  audit = 5,
};

inline const char* query_kind_name(QueryKind k) {
  switch (k) {
    case QueryKind::cut: return "cut";
    case QueryKind::additive: return "additive";
    case QueryKind::matrix_cut: return "matrix_cut";
    case QueryKind::disjoint_matrix_cut: return "disjoint_matrix_cut";
    case QueryKind::quantum_charged: return "quantum_charged";
    case QueryKind::audit: return "audit";
  }
  return "?";
}

// Traced operations.  Each charged subroutine appends one record holding its
// parameters and the actual counter deltas it produced, so a verifier can
// recompute the closed-form charge from the parameters alone and compare.
enum class TraceOp : int {
  raw_cut,             // one direct cut query
  raw_additive,        // one direct additive query
  raw_matrix_cut,      // one direct matrix cut query
  raw_disjoint_matrix_cut,  // one direct disjoint matrix cut query
  dmc_via_cut,         // disjoint matrix cut served by 3 cut queries
  mc_via_additive,     // matrix cut served by 5 additive queries
  cut_via_additive,    // cut served by 3 additive queries
  qft_subset_sum,      // i0=modulus, i1=backend kind, i2=backend multiplier
  learn_dense,         // i0=k, i1=l, i2=M, i3=backend kind, i4=multiplier
  learn_sparse,        // i0=k, i1=l, i2=M, i3=d, i4=backend kind, d0=delta, d1=multiplier
  degree_seq_exact,    // i0=k, i1=l, i2=backend kind, i3=multiplier
  approx_count,        // i0=k, i1=l, i2=modulus, i3=backend kind, i4=multiplier,
                       //   d0=delta, d1=repetition constant
  empty_test,          // i0=|subset|, i1=repetitions, i2=cut queries per repetition
  split_check,         // i0=n; one 3-cut-query pair weight probe
};

inline const char* trace_op_name(TraceOp op) {
  switch (op) {
    case TraceOp::raw_cut: return "raw_cut";
    case TraceOp::raw_additive: return "raw_additive";
    case TraceOp::raw_matrix_cut: return "raw_matrix_cut";
    case TraceOp::raw_disjoint_matrix_cut: return "raw_disjoint_matrix_cut";
    case TraceOp::dmc_via_cut: return "dmc_via_cut";
    case TraceOp::mc_via_additive: return "mc_via_additive";
    case TraceOp::cut_via_additive: return "cut_via_additive";
    case TraceOp::qft_subset_sum: return "qft_subset_sum";
    case TraceOp::learn_dense: return "learn_dense";
    case TraceOp::learn_sparse: return "learn_sparse";
    case TraceOp::degree_seq_exact: return "degree_seq_exact";
    case TraceOp::approx_count: return "approx_count";
    case TraceOp::empty_test: return "empty_test";
    case TraceOp::split_check: return "split_check";
  }
  return "?";
}

struct TraceRecord {
  TraceOp op;
  std::int64_t i0 = 0, i1 = 0, i2 = 0, i3 = 0, i4 = 0;
  double d0 = 0.0, d1 = 0.0;
  std::array<std::int64_t, 6> actual{};  // indexed by QueryKind
};

// Monotone counters for every oracle interaction of a run, plus the trace.
class QueryLedger {
 public:
  void charge(QueryKind k, std::int64_t amount = 1) {
    if (amount < 0) throw ParameterError("ledger charge must be non-negative");
    counts_[static_cast<int>(k)] += amount;
  }

  std::int64_t count(QueryKind k) const { return counts_[static_cast<int>(k)]; }

  std::int64_t cut() const { return count(QueryKind::cut); }
  std::int64_t additive() const { return count(QueryKind::additive); }
  std::int64_t matrix_cut() const { return count(QueryKind::matrix_cut); }
  std::int64_t disjoint_matrix_cut() const { return count(QueryKind::disjoint_matrix_cut); }
  std::int64_t quantum_charged() const { return count(QueryKind::quantum_charged); }
  std::int64_t audit() const { return count(QueryKind::audit); }

  const std::array<std::int64_t, 6>& counts() const { return counts_; }

  // --- tracing ------------------------------------------------------------

  bool tracing() const { return tracing_ && suppress_depth_ == 0; }
  void set_tracing(bool on) { tracing_ = on; }

  // RAII scope that suppresses primitive-level records while a composite
  // operation records itself (prevents double counting in verification).
  class TraceScope {
   public:
    explicit TraceScope(QueryLedger& ledger) : ledger_(ledger) {
      snapshot_ = ledger_.counts_;
      depth_ = ++ledger_.suppress_depth_;
    }
    TraceScope(const TraceScope&) = delete;
    TraceScope& operator=(const TraceScope&) = delete;
    ~TraceScope() { --ledger_.suppress_depth_; }

    // Finish the scope by appending a composite record with measured deltas.
    // Only the outermost scope records, so each charge is covered by exactly
    // one trace entry.
    void record(TraceRecord rec) {
      for (int i = 0; i < 6; ++i) {
        rec.actual[static_cast<size_t>(i)] = ledger_.counts_[static_cast<size_t>(i)] -
                                             snapshot_[static_cast<size_t>(i)];
      }
      if (ledger_.tracing_ && depth_ == 1) ledger_.trace_.push_back(rec);
    }

   private:
    QueryLedger& ledger_;
    int depth_ = 0;
    std::array<std::int64_t, 6> snapshot_{};
  };

  void record_primitive(TraceOp op) {
    if (!tracing()) return;
    TraceRecord rec;
    rec.op = op;
    switch (op) {
      case TraceOp::raw_cut: rec.actual[static_cast<int>(QueryKind::cut)] = 1; break;
      case TraceOp::raw_additive: rec.actual[static_cast<int>(QueryKind::additive)] = 1; break;
      case TraceOp::raw_matrix_cut: rec.actual[static_cast<int>(QueryKind::matrix_cut)] = 1; break;
      case TraceOp::raw_disjoint_matrix_cut:
        rec.actual[static_cast<int>(QueryKind::disjoint_matrix_cut)] = 1;
        break;
      default: throw ParameterError("record_primitive: not a primitive op");
    }
    trace_.push_back(rec);
  }

  const std::vector<TraceRecord>& trace() const { return trace_; }
  void clear_trace() { trace_.clear(); }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["cut"] = cut();
    j["additive"] = additive();
    j["matrix_cut"] = matrix_cut();
    j["disjoint_matrix_cut"] = disjoint_matrix_cut();
    j["quantum_charged"] = quantum_charged();
    j["audit"] = audit();
    return j;
  }

 private:
  std::array<std::int64_t, 6> counts_{};
  std::vector<TraceRecord> trace_;
  bool tracing_ = true;
  int suppress_depth_ = 0;
};

}  // namespace cutq
