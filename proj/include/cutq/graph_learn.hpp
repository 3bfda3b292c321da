#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "cutq/common.hpp"
#include "cutq/graph.hpp"
#include "cutq/matrix.hpp"
#include "cutq/matrix_learn.hpp"
#include "cutq/oracle.hpp"
#include "cutq/quantum.hpp"

namespace cutq {

// A promise the hidden graph satisfies, fixing which learner runs: either
// every vertex degree is at most `value`, or the total edge count is at most
// `value` (the edge learner discovers the count itself; the promise only
// asserts the regime).
struct LearnBudget {
  enum class Kind { degree, edges };
  Kind kind = Kind::degree;
  std::int64_t value = 0;

  static LearnBudget degree_bound(std::int64_t d) { return {Kind::degree, d}; }
  static LearnBudget edge_bound(std::int64_t m) { return {Kind::edges, m}; }
};

// Rebuilds a graph from a learned adjacency matrix.  Asymmetry or a nonzero
// diagonal can only come from a decode failure the error budget should have
// caught, so they surface as integrity errors rather than being repaired.
inline WeightedGraph adjacency_to_graph(const IntMatrix& a) {
  if (a.rows != a.cols) throw ParameterError("adjacency_to_graph: matrix must be square");
  for (int r = 0; r < a.rows; ++r) {
    if (a.at(r, r) != 0)
      throw IntegrityError("learned adjacency has a nonzero diagonal entry");
    for (int c = r + 1; c < a.cols; ++c)
      if (a.at(r, c) != a.at(c, r))
        throw IntegrityError("learned adjacency is not symmetric");
  }
  std::vector<Edge> edges;
  for (int r = 0; r < a.rows; ++r)
    for (int c = r + 1; c < a.cols; ++c)
      if (a.at(r, c) != 0) edges.push_back({r, c, a.at(r, c)});
  return WeightedGraph(a.rows, edges);
}

// Deterministic exact reconstruction from a cut oracle: vertex by vertex,
// each incident-weight row is read off with ceil(log2 M) charged subset-sum
// rounds whose pair-weight answers cost 3 cut queries apiece, for a total of
// exactly 3 n ceil(log2 M) cut queries.
inline WeightedGraph learn_graph_cut_full(const OracleHandle& h, std::int64_t M,
                                          const AuditConfig& audit = {},
                                          Rng* audit_rng = nullptr) {
  if (h.mode() != OracleMode::cut) throw ModeError("learn_graph_cut_full requires a cut handle");
  if (M < 2) throw ParameterError("learn_graph_cut_full: need M >= 2");
  const int n = h.n();
  IntMatrix a(n, n);
  const std::vector<std::uint8_t> pick_one{1};
  for (int i = 0; i < n; ++i) {
    std::vector<std::vector<int>> row_sets;
    std::vector<int> others;
    row_sets.reserve(static_cast<size_t>(n) - 1);
    for (int j = 0; j < n; ++j)
      if (j != i) {
        row_sets.push_back({j});
        others.push_back(j);
      }
    BiadjacencyCutChannel ch(h.graph(), h.ledger(), row_sets, {{i}});
    const auto col = compute_Ay_mod(ch, pick_one, M, audit, audit_rng);
    for (size_t t = 0; t < others.size(); ++t)
      a.at(others[t], i) = col[t];
  }
  for (int r = 0; r < n; ++r)
    for (int c = r + 1; c < n; ++c)
      if (a.at(r, c) != a.at(c, r))
        throw IntegrityError("cut reconstruction: the two endpoints disagree on an edge weight");
  return adjacency_to_graph(a);
}

// Learns the biadjacency matrix of the bipartite subgraph between two
// disjoint vertex sets, each matrix query served by 3 cut queries.
inline IntMatrix learn_bipartite_cut(const OracleHandle& h, const std::vector<int>& left,
                                     const std::vector<int>& right, std::int64_t M,
                                     const LearnBudget& budget, double delta, SparseDecode mode,
                                     Rng& rng, std::int64_t rep_const = 200,
                                     const AuditConfig& audit = {}, Rng* audit_rng = nullptr) {
  if (h.mode() != OracleMode::cut) throw ModeError("learn_bipartite_cut requires a cut handle");
  if (left.empty() || right.empty())
    throw ParameterError("learn_bipartite_cut: sides must be nonempty");
  std::vector<std::vector<int>> row_sets, col_sets;
  row_sets.reserve(left.size());
  col_sets.reserve(right.size());
  for (int v : left) row_sets.push_back({v});
  for (int v : right) col_sets.push_back({v});
  BiadjacencyCutChannel ch(h.graph(), h.ledger(), row_sets, col_sets);
  if (budget.kind == LearnBudget::Kind::degree)
    return learn_sparse_rows(ch, M, static_cast<int>(budget.value), delta, mode, rng, audit,
                             audit_rng);
  return learn_m_nonzeros(ch, M, delta, rep_const, mode, rng, audit, audit_rng).matrix;
}

// Learns the whole graph from a cut oracle by covering the edge set with
// ceil(log2 n) bipartite splits (vertices whose label bit j-1 is 0 against
// those where it is 1), each learned with error budget delta/r.  Edges that
// appear in several splits are cross-checked.
inline WeightedGraph learn_graph_cut(const OracleHandle& h, std::int64_t M,
                                     const LearnBudget& budget, double delta, SparseDecode mode,
                                     Rng& rng, std::int64_t rep_const = 200,
                                     const AuditConfig& audit = {}, Rng* audit_rng = nullptr) {
  if (h.mode() != OracleMode::cut) throw ModeError("learn_graph_cut requires a cut handle");
  const int n = h.n();
  const int r = static_cast<int>(ceil_log2(static_cast<std::uint64_t>(n)));
  IntMatrix acc(n, n);
  std::vector<std::uint8_t> seen(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
  std::vector<int> all(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) all[static_cast<size_t>(v)] = v;

  for (int j = 1; j <= r; ++j) {
    const auto [zeros, ones] = split_by_label_bit(all, j);
    if (zeros.empty() || ones.empty()) continue;
    Rng split_rng(rng());
    const IntMatrix b = learn_bipartite_cut(h, zeros, ones, M, budget, delta / r, mode,
                                            split_rng, rep_const, audit, audit_rng);
    for (size_t zi = 0; zi < zeros.size(); ++zi)
      for (size_t oi = 0; oi < ones.size(); ++oi) {
        const int u = zeros[zi];
        const int v = ones[oi];
        const std::int64_t w = b.at(static_cast<int>(zi), static_cast<int>(oi));
        const size_t slot = static_cast<size_t>(std::min(u, v)) * static_cast<size_t>(n) +
                            static_cast<size_t>(std::max(u, v));
        if (seen[slot] && acc.at(std::min(u, v), std::max(u, v)) != w)
          throw IntegrityError("split reconstructions disagree on an edge weight");
        seen[slot] = 1;
        acc.at(std::min(u, v), std::max(u, v)) = w;
        acc.at(std::max(u, v), std::min(u, v)) = w;
      }
  }
  return adjacency_to_graph(acc);
}

// Learns the whole graph from an additive oracle: matrix queries against the
// adjacency matrix are served by the five-additive-query identity, then the
// budgeted matrix learner runs unchanged.
inline WeightedGraph learn_graph_additive(const OracleHandle& h, std::int64_t M,
                                          const LearnBudget& budget, double delta,
                                          SparseDecode mode, Rng& rng,
                                          std::int64_t rep_const = 200,
                                          const AuditConfig& audit = {},
                                          Rng* audit_rng = nullptr) {
  if (h.mode() != OracleMode::additive)
    throw ModeError("learn_graph_additive requires an additive handle");
  AdditiveMatrixChannel ch(h.graph(), h.ledger());
  IntMatrix a = budget.kind == LearnBudget::Kind::degree
                    ? learn_sparse_rows(ch, M, static_cast<int>(budget.value), delta, mode, rng,
                                        audit, audit_rng)
                    : learn_m_nonzeros(ch, M, delta, rep_const, mode, rng, audit, audit_rng)
                          .matrix;
  return adjacency_to_graph(a);
}

}  // namespace cutq
