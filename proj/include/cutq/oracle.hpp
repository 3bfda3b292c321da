#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cutq/graph.hpp"
#include "cutq/ledger.hpp"
#include "cutq/matrix.hpp"

namespace cutq {

enum class OracleMode { cut, additive, matrix };

inline OracleMode oracle_mode_by_name(const std::string& s) {
  if (s == "cut") return OracleMode::cut;
  if (s == "additive") return OracleMode::additive;
  if (s == "matrix") return OracleMode::matrix;
  throw ParameterError("unknown oracle mode: " + s);
}

inline const char* oracle_mode_name(OracleMode m) {
  switch (m) {
    case OracleMode::cut: return "cut";
    case OracleMode::additive: return "additive";
    case OracleMode::matrix: return "matrix";
  }
  return "?";
}

// A hidden graph instance behind a metered query interface.  The handle owns
// nothing; graph and ledger outlive it.  Algorithms interact with the hidden
// graph only through charged queries (or explicitly uncharged audit probes).
class OracleHandle {
 public:
  OracleHandle(const WeightedGraph& g, QueryLedger& ledger, OracleMode mode)
      : g_(&g), ledger_(&ledger), mode_(mode) {}

  const WeightedGraph& graph() const { return *g_; }
  QueryLedger& ledger() const { return *ledger_; }
  OracleMode mode() const { return mode_; }
  int n() const { return g_->n(); }

  // Charged primitive: total weight crossing (S, V \ S).  Cut mode only.
  std::int64_t cut_query(const std::vector<std::uint8_t>& in_s) const {
    if (mode_ != OracleMode::cut) throw ModeError("cut_query requires cut mode");
    ledger_->charge(QueryKind::cut);
    ledger_->record_primitive(TraceOp::raw_cut);
    return g_->cut_value(in_s);
  }

  // Charged primitive: total weight inside S.  Additive mode only.
  std::int64_t additive_query(const std::vector<std::uint8_t>& in_s) const {
    if (mode_ != OracleMode::additive) throw ModeError("additive_query requires additive mode");
    ledger_->charge(QueryKind::additive);
    ledger_->record_primitive(TraceOp::raw_additive);
    return g_->additive_value(in_s);
  }

  // Charged primitive: x^T A_G y for 0/1 vectors.  Matrix mode only.
  std::int64_t matrix_cut_query(const std::vector<std::uint8_t>& x,
                                const std::vector<std::uint8_t>& y) const {
    if (mode_ != OracleMode::matrix) throw ModeError("matrix_cut_query requires matrix mode");
    ledger_->charge(QueryKind::matrix_cut);
    ledger_->record_primitive(TraceOp::raw_matrix_cut);
    return bilinear_value(x, y);
  }

  // Uncharged evaluation helpers for audits.
  std::int64_t eval_cut(const std::vector<std::uint8_t>& s) const { return g_->cut_value(s); }
  std::int64_t eval_additive(const std::vector<std::uint8_t>& s) const { return g_->additive_value(s); }
  std::int64_t eval_bilinear(const std::vector<std::uint8_t>& x,
                             const std::vector<std::uint8_t>& y) const {
    return bilinear_value(x, y);
  }

 private:
  std::int64_t bilinear_value(const std::vector<std::uint8_t>& x,
                              const std::vector<std::uint8_t>& y) const {
    if (x.size() != static_cast<size_t>(g_->n()) || y.size() != static_cast<size_t>(g_->n()))
      throw ParameterError("matrix cut query vectors must have length n");
    std::int64_t t = 0;
    for (const auto& e : g_->edges()) {
      const auto u = static_cast<size_t>(e.u), v = static_cast<size_t>(e.v);
      if (x[u] && y[v]) t += e.w;
      if (x[v] && y[u]) t += e.w;
    }
    return t;
  }

  const WeightedGraph* g_;
  QueryLedger* ledger_;
  OracleMode mode_;
};

// ---------------------------------------------------------------------------
// Reductions between query types.  Each charges exactly its stated number of
// primitive queries and computes its value from those primitive answers.
// ---------------------------------------------------------------------------

namespace detail {
inline void require_disjoint(const std::vector<std::uint8_t>& x,
                             const std::vector<std::uint8_t>& y) {
  if (x.size() != y.size()) throw ParameterError("support vectors must have equal length");
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i] && y[i]) throw DisjointnessError("supports must be disjoint");
}

inline std::vector<std::uint8_t> set_union(const std::vector<std::uint8_t>& x,
                                           const std::vector<std::uint8_t>& y) {
  std::vector<std::uint8_t> u(x.size());
  for (size_t i = 0; i < x.size(); ++i) u[i] = x[i] | y[i];
  return u;
}

inline std::vector<std::uint8_t> set_minus(const std::vector<std::uint8_t>& x,
                                           const std::vector<std::uint8_t>& y) {
  std::vector<std::uint8_t> d(x.size());
  for (size_t i = 0; i < x.size(); ++i) d[i] = static_cast<std::uint8_t>(x[i] && !y[i]);
  return d;
}

inline std::vector<std::uint8_t> sym_diff(const std::vector<std::uint8_t>& x,
                                          const std::vector<std::uint8_t>& y) {
  std::vector<std::uint8_t> d(x.size());
  for (size_t i = 0; i < x.size(); ++i) d[i] = x[i] ^ y[i];
  return d;
}
}  // namespace detail

// w(X, Y) for disjoint X, Y from three cut queries:
//   w(X,Y) = (c(X) + c(Y) - c(X u Y)) / 2.
inline std::int64_t disjoint_matrix_cut_via_cut(const OracleHandle& h,
                                                const std::vector<std::uint8_t>& x,
                                                const std::vector<std::uint8_t>& y) {
  detail::require_disjoint(x, y);
  QueryLedger::TraceScope scope(h.ledger());
  const std::int64_t cx = h.cut_query(x);
  const std::int64_t cy = h.cut_query(y);
  const std::int64_t cu = h.cut_query(detail::set_union(x, y));
  scope.record({TraceOp::dmc_via_cut});
  const std::int64_t twice = cx + cy - cu;
  if (twice < 0 || twice % 2 != 0)
    throw IntegrityError("disjoint matrix cut reduction produced an inconsistent value");
  return twice / 2;
}

// x^T A_G y for arbitrary 0/1 x, y from five additive queries:
//   x^T A_G y = a(X^Y) + a(X) + a(Y) - 2 a(X\Y) - 2 a(Y\X),
// where X^Y is the symmetric difference.
inline std::int64_t matrix_cut_via_additive(const OracleHandle& h,
                                            const std::vector<std::uint8_t>& x,
                                            const std::vector<std::uint8_t>& y) {
  QueryLedger::TraceScope scope(h.ledger());
  const std::int64_t a_sym = h.additive_query(detail::sym_diff(x, y));
  const std::int64_t a_x = h.additive_query(x);
  const std::int64_t a_y = h.additive_query(y);
  const std::int64_t a_xy = h.additive_query(detail::set_minus(x, y));
  const std::int64_t a_yx = h.additive_query(detail::set_minus(y, x));
  scope.record({TraceOp::mc_via_additive});
  return a_sym + a_x + a_y - 2 * a_xy - 2 * a_yx;
}

// c(S) from three additive queries: c(S) = a(V) - a(S) - a(V \ S).
inline std::int64_t cut_via_additive(const OracleHandle& h,
                                     const std::vector<std::uint8_t>& s) {
  QueryLedger::TraceScope scope(h.ledger());
  std::vector<std::uint8_t> all(s.size(), 1);
  const std::int64_t a_v = h.additive_query(all);
  const std::int64_t a_s = h.additive_query(s);
  const std::int64_t a_c = h.additive_query(detail::set_minus(all, s));
  scope.record({TraceOp::cut_via_additive});
  return a_v - a_s - a_c;
}

// ---------------------------------------------------------------------------
// Matrix cut channels.  A channel presents some hidden matrix A (a general
// matrix, an adjacency matrix, or a supervertex biadjacency matrix) behind
// charged bilinear queries x^T A y.  Channels also expose privileged,
// uncharged evaluation used by the simulated quantum primitive; the charged
// counters are bumped by exact closed-form amounts either way.
// ---------------------------------------------------------------------------

class MatrixCutChannel {
 public:
  virtual ~MatrixCutChannel() = default;

  virtual int rows() const = 0;
  virtual int cols() const = 0;

  // Charged query x^T A y; x has length rows(), y has length cols().
  virtual std::int64_t query(const std::vector<std::uint8_t>& x,
                             const std::vector<std::uint8_t>& y) = 0;

  // Identical value computed without charging (audit use only).
  virtual std::int64_t eval_uncharged(const std::vector<std::uint8_t>& x,
                                      const std::vector<std::uint8_t>& y) const = 0;

  // Privileged exact A y (uncharged).
  virtual std::vector<std::int64_t> matvec(const std::vector<std::uint8_t>& y) const = 0;

  // Privileged exact A^T x (uncharged).
  virtual std::vector<std::int64_t> matvec_t(const std::vector<std::uint8_t>& x) const = 0;

  // Privileged exact row (uncharged).
  virtual std::vector<std::int64_t> hidden_row(int r) const = 0;

  // Bump backend counters as if `m` charged queries were made.
  virtual void charge_bulk(std::int64_t m) = 0;

  virtual QueryKind backend_kind() const = 0;
  virtual std::int64_t backend_multiplier() const = 0;  // primitives per query
  virtual QueryLedger& ledger() const = 0;
};

// Channel over an explicit hidden matrix, charged to a direct matrix counter.
class DirectMatrixChannel : public MatrixCutChannel {
 public:
  DirectMatrixChannel(IntMatrix a, QueryLedger& ledger,
                      QueryKind kind = QueryKind::matrix_cut)
      : a_(std::move(a)), ledger_(&ledger), kind_(kind) {
    if (kind != QueryKind::matrix_cut && kind != QueryKind::disjoint_matrix_cut)
      throw ParameterError("direct matrix channel must charge a matrix counter");
  }

  int rows() const override { return a_.rows; }
  int cols() const override { return a_.cols; }

  std::int64_t query(const std::vector<std::uint8_t>& x,
                     const std::vector<std::uint8_t>& y) override {
    if (kind_ == QueryKind::disjoint_matrix_cut) {
      if (a_.rows != a_.cols)
        throw ParameterError("disjoint matrix cut requires a square matrix");
      detail::require_disjoint(x, y);
    }
    ledger_->charge(kind_);
    if (ledger_->tracing())
      ledger_->record_primitive(kind_ == QueryKind::matrix_cut
                                    ? TraceOp::raw_matrix_cut
                                    : TraceOp::raw_disjoint_matrix_cut);
    return eval_uncharged(x, y);
  }

  std::int64_t eval_uncharged(const std::vector<std::uint8_t>& x,
                              const std::vector<std::uint8_t>& y) const override {
    check_dims(x, y);
    std::int64_t t = 0;
    for (int r = 0; r < a_.rows; ++r) {
      if (!x[static_cast<size_t>(r)]) continue;
      for (int c = 0; c < a_.cols; ++c)
        if (y[static_cast<size_t>(c)]) t += a_.at(r, c);
    }
    return t;
  }

  std::vector<std::int64_t> matvec(const std::vector<std::uint8_t>& y) const override {
    std::vector<std::int64_t> v(static_cast<size_t>(a_.rows), 0);
    for (int r = 0; r < a_.rows; ++r)
      for (int c = 0; c < a_.cols; ++c)
        if (y[static_cast<size_t>(c)]) v[static_cast<size_t>(r)] += a_.at(r, c);
    return v;
  }

  std::vector<std::int64_t> matvec_t(const std::vector<std::uint8_t>& x) const override {
    std::vector<std::int64_t> v(static_cast<size_t>(a_.cols), 0);
    for (int r = 0; r < a_.rows; ++r)
      if (x[static_cast<size_t>(r)])
        for (int c = 0; c < a_.cols; ++c) v[static_cast<size_t>(c)] += a_.at(r, c);
    return v;
  }

  std::vector<std::int64_t> hidden_row(int r) const override {
    std::vector<std::int64_t> v(static_cast<size_t>(a_.cols));
    for (int c = 0; c < a_.cols; ++c) v[static_cast<size_t>(c)] = a_.at(r, c);
    return v;
  }

  void charge_bulk(std::int64_t m) override { ledger_->charge(kind_, m); }
  QueryKind backend_kind() const override { return kind_; }
  std::int64_t backend_multiplier() const override { return 1; }
  QueryLedger& ledger() const override { return *ledger_; }

  const IntMatrix& hidden() const { return a_; }

 private:
  void check_dims(const std::vector<std::uint8_t>& x, const std::vector<std::uint8_t>& y) const {
    if (x.size() != static_cast<size_t>(a_.rows) || y.size() != static_cast<size_t>(a_.cols))
      throw ParameterError("matrix query vector lengths must match matrix dims");
  }

  IntMatrix a_;
  QueryLedger* ledger_;
  QueryKind kind_;
};

// Channel over the biadjacency matrix B(i,j) = w(S_i, T_j) of two families of
// pairwise disjoint vertex sets, served by cut queries (3 per matrix query).
class BiadjacencyCutChannel : public MatrixCutChannel {
 public:
  BiadjacencyCutChannel(const WeightedGraph& g, QueryLedger& ledger,
                        const std::vector<std::vector<int>>& s_sets,
                        const std::vector<std::vector<int>>& t_sets)
      : g_(&g), ledger_(&ledger), s_sets_(s_sets), t_sets_(t_sets) {
    const int n = g.n();
    owner_s_.assign(static_cast<size_t>(n), -1);
    owner_t_.assign(static_cast<size_t>(n), -1);
    for (size_t i = 0; i < s_sets_.size(); ++i)
      for (int v : s_sets_[i]) {
        check_vertex(v, n);
        if (owner_s_[static_cast<size_t>(v)] >= 0)
          throw DisjointnessError("biadjacency channel: overlapping row sets");
        owner_s_[static_cast<size_t>(v)] = static_cast<int>(i);
      }
    for (size_t j = 0; j < t_sets_.size(); ++j)
      for (int v : t_sets_[j]) {
        check_vertex(v, n);
        if (owner_s_[static_cast<size_t>(v)] >= 0 || owner_t_[static_cast<size_t>(v)] >= 0)
          throw DisjointnessError("biadjacency channel: row and column sets must be disjoint");
        owner_t_[static_cast<size_t>(v)] = static_cast<int>(j);
      }
    b_ = IntMatrix(static_cast<int>(s_sets_.size()), static_cast<int>(t_sets_.size()));
    for (const auto& e : g.edges()) {
      const int su = owner_s_[static_cast<size_t>(e.u)], tv = owner_t_[static_cast<size_t>(e.v)];
      const int sv = owner_s_[static_cast<size_t>(e.v)], tu = owner_t_[static_cast<size_t>(e.u)];
      if (su >= 0 && tv >= 0) b_.at(su, tv) += e.w;
      if (sv >= 0 && tu >= 0) b_.at(sv, tu) += e.w;
    }
  }

  int rows() const override { return b_.rows; }
  int cols() const override { return b_.cols; }

  // Charged query: w(X, Y) with X = union of selected S_i, Y of selected T_j,
  // served by the 3-cut-query reduction on the hidden graph.
  std::int64_t query(const std::vector<std::uint8_t>& x,
                     const std::vector<std::uint8_t>& y) override {
    QueryLedger::TraceScope scope(*ledger_);
    const auto in_x = expand(x, s_sets_), in_y = expand(y, t_sets_);
    ledger_->charge(QueryKind::cut, 3);
    const std::int64_t cx = g_->cut_value(in_x);
    const std::int64_t cy = g_->cut_value(in_y);
    const std::int64_t cu = g_->cut_value(detail::set_union(in_x, in_y));
    scope.record({TraceOp::dmc_via_cut});
    const std::int64_t twice = cx + cy - cu;
    if (twice < 0 || twice % 2 != 0)
      throw IntegrityError("biadjacency reduction produced an inconsistent value");
    return twice / 2;
  }

  std::int64_t eval_uncharged(const std::vector<std::uint8_t>& x,
                              const std::vector<std::uint8_t>& y) const override {
    const auto in_x = expand(x, s_sets_), in_y = expand(y, t_sets_);
    return g_->pair_weight(in_x, in_y);
  }

  std::vector<std::int64_t> matvec(const std::vector<std::uint8_t>& y) const override {
    std::vector<std::int64_t> v(static_cast<size_t>(b_.rows), 0);
    for (int r = 0; r < b_.rows; ++r)
      for (int c = 0; c < b_.cols; ++c)
        if (y[static_cast<size_t>(c)]) v[static_cast<size_t>(r)] += b_.at(r, c);
    return v;
  }

  std::vector<std::int64_t> matvec_t(const std::vector<std::uint8_t>& x) const override {
    std::vector<std::int64_t> v(static_cast<size_t>(b_.cols), 0);
    for (int r = 0; r < b_.rows; ++r)
      if (x[static_cast<size_t>(r)])
        for (int c = 0; c < b_.cols; ++c) v[static_cast<size_t>(c)] += b_.at(r, c);
    return v;
  }

  std::vector<std::int64_t> hidden_row(int r) const override {
    std::vector<std::int64_t> v(static_cast<size_t>(b_.cols));
    for (int c = 0; c < b_.cols; ++c) v[static_cast<size_t>(c)] = b_.at(r, c);
    return v;
  }

  void charge_bulk(std::int64_t m) override { ledger_->charge(QueryKind::cut, 3 * m); }
  QueryKind backend_kind() const override { return QueryKind::cut; }
  std::int64_t backend_multiplier() const override { return 3; }
  QueryLedger& ledger() const override { return *ledger_; }

  const IntMatrix& hidden() const { return b_; }

 private:
  static void check_vertex(int v, int n) {
    if (v < 0 || v >= n) throw ParameterError("biadjacency channel: vertex out of range");
  }

  std::vector<std::uint8_t> expand(const std::vector<std::uint8_t>& sel,
                                   const std::vector<std::vector<int>>& sets) const {
    if (sel.size() != sets.size())
      throw ParameterError("biadjacency query selector length mismatch");
    std::vector<std::uint8_t> in(static_cast<size_t>(g_->n()), 0);
    for (size_t i = 0; i < sets.size(); ++i)
      if (sel[i])
        for (int v : sets[i]) in[static_cast<size_t>(v)] = 1;
    return in;
  }

  const WeightedGraph* g_;
  QueryLedger* ledger_;
  std::vector<std::vector<int>> s_sets_, t_sets_;
  std::vector<int> owner_s_, owner_t_;
  IntMatrix b_;
};

// Channel over the full adjacency matrix A_G, served by additive queries
// (5 per matrix query).
class AdditiveMatrixChannel : public MatrixCutChannel {
 public:
  AdditiveMatrixChannel(const WeightedGraph& g, QueryLedger& ledger)
      : g_(&g), ledger_(&ledger) {}

  int rows() const override { return g_->n(); }
  int cols() const override { return g_->n(); }

  std::int64_t query(const std::vector<std::uint8_t>& x,
                     const std::vector<std::uint8_t>& y) override {
    QueryLedger::TraceScope scope(*ledger_);
    ledger_->charge(QueryKind::additive, 5);
    const std::int64_t a_sym = g_->additive_value(detail::sym_diff(x, y));
    const std::int64_t a_x = g_->additive_value(x);
    const std::int64_t a_y = g_->additive_value(y);
    const std::int64_t a_xy = g_->additive_value(detail::set_minus(x, y));
    const std::int64_t a_yx = g_->additive_value(detail::set_minus(y, x));
    scope.record({TraceOp::mc_via_additive});
    return a_sym + a_x + a_y - 2 * a_xy - 2 * a_yx;
  }

  std::int64_t eval_uncharged(const std::vector<std::uint8_t>& x,
                              const std::vector<std::uint8_t>& y) const override {
    std::int64_t t = 0;
    for (const auto& e : g_->edges()) {
      const auto u = static_cast<size_t>(e.u), v = static_cast<size_t>(e.v);
      if (x[u] && y[v]) t += e.w;
      if (x[v] && y[u]) t += e.w;
    }
    return t;
  }

  std::vector<std::int64_t> matvec(const std::vector<std::uint8_t>& y) const override {
    std::vector<std::int64_t> v(static_cast<size_t>(g_->n()), 0);
    for (const auto& e : g_->edges()) {
      if (y[static_cast<size_t>(e.v)]) v[static_cast<size_t>(e.u)] += e.w;
      if (y[static_cast<size_t>(e.u)]) v[static_cast<size_t>(e.v)] += e.w;
    }
    return v;
  }

  std::vector<std::int64_t> matvec_t(const std::vector<std::uint8_t>& x) const override {
    return matvec(x);  // A_G is symmetric
  }

  std::vector<std::int64_t> hidden_row(int r) const override {
    std::vector<std::int64_t> v(static_cast<size_t>(g_->n()), 0);
    for (auto [u, w] : g_->neighbors(r)) v[static_cast<size_t>(u)] = w;
    return v;
  }

  void charge_bulk(std::int64_t m) override { ledger_->charge(QueryKind::additive, 5 * m); }
  QueryKind backend_kind() const override { return QueryKind::additive; }
  std::int64_t backend_multiplier() const override { return 5; }
  QueryLedger& ledger() const override { return *ledger_; }

 private:
  const WeightedGraph* g_;
  QueryLedger* ledger_;
};

// Row-subset view of another channel (used to learn submatrices).
class RowSubsetChannel : public MatrixCutChannel {
 public:
  RowSubsetChannel(MatrixCutChannel& base, std::vector<int> row_ids)
      : base_(&base), row_ids_(std::move(row_ids)) {
    for (int r : row_ids_)
      if (r < 0 || r >= base_->rows())
        throw ParameterError("row subset channel: row index out of range");
  }

  int rows() const override { return static_cast<int>(row_ids_.size()); }
  int cols() const override { return base_->cols(); }

  std::int64_t query(const std::vector<std::uint8_t>& x,
                     const std::vector<std::uint8_t>& y) override {
    return base_->query(lift(x), y);
  }

  std::int64_t eval_uncharged(const std::vector<std::uint8_t>& x,
                              const std::vector<std::uint8_t>& y) const override {
    return base_->eval_uncharged(lift(x), y);
  }

  std::vector<std::int64_t> matvec(const std::vector<std::uint8_t>& y) const override {
    const auto full = base_->matvec(y);
    std::vector<std::int64_t> v(row_ids_.size());
    for (size_t i = 0; i < row_ids_.size(); ++i) v[i] = full[static_cast<size_t>(row_ids_[i])];
    return v;
  }

  std::vector<std::int64_t> matvec_t(const std::vector<std::uint8_t>& x) const override {
    return base_->matvec_t(lift(x));
  }

  std::vector<std::int64_t> hidden_row(int r) const override {
    return base_->hidden_row(row_ids_[static_cast<size_t>(r)]);
  }

  void charge_bulk(std::int64_t m) override { base_->charge_bulk(m); }
  QueryKind backend_kind() const override { return base_->backend_kind(); }
  std::int64_t backend_multiplier() const override { return base_->backend_multiplier(); }
  QueryLedger& ledger() const override { return base_->ledger(); }

 private:
  std::vector<std::uint8_t> lift(const std::vector<std::uint8_t>& x) const {
    if (x.size() != row_ids_.size())
      throw ParameterError("row subset channel: selector length mismatch");
    std::vector<std::uint8_t> full(static_cast<size_t>(base_->rows()), 0);
    for (size_t i = 0; i < row_ids_.size(); ++i)
      if (x[i]) full[static_cast<size_t>(row_ids_[i])] = 1;
    return full;
  }

  MatrixCutChannel* base_;
  std::vector<int> row_ids_;
};

// Transposed view of another channel.
class TransposedChannel : public MatrixCutChannel {
 public:
  explicit TransposedChannel(MatrixCutChannel& base) : base_(&base) {}

  int rows() const override { return base_->cols(); }
  int cols() const override { return base_->rows(); }

  std::int64_t query(const std::vector<std::uint8_t>& x,
                     const std::vector<std::uint8_t>& y) override {
    return base_->query(y, x);
  }

  std::int64_t eval_uncharged(const std::vector<std::uint8_t>& x,
                              const std::vector<std::uint8_t>& y) const override {
    return base_->eval_uncharged(y, x);
  }

  std::vector<std::int64_t> matvec(const std::vector<std::uint8_t>& y) const override {
    return base_->matvec_t(y);
  }

  std::vector<std::int64_t> matvec_t(const std::vector<std::uint8_t>& x) const override {
    return base_->matvec(x);
  }

  std::vector<std::int64_t> hidden_row(int r) const override {
    const int k = base_->rows();
    std::vector<std::int64_t> v(static_cast<size_t>(k));
    std::vector<std::uint8_t> sel(static_cast<size_t>(base_->cols()), 0);
    sel[static_cast<size_t>(r)] = 1;
    const auto col = base_->matvec(sel);
    for (int i = 0; i < k; ++i) v[static_cast<size_t>(i)] = col[static_cast<size_t>(i)];
    return v;
  }

  void charge_bulk(std::int64_t m) override { base_->charge_bulk(m); }
  QueryKind backend_kind() const override { return base_->backend_kind(); }
  std::int64_t backend_multiplier() const override { return base_->backend_multiplier(); }
  QueryLedger& ledger() const override { return base_->ledger(); }

 private:
  MatrixCutChannel* base_;
};

}  // namespace cutq
