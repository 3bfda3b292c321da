#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "cutq/common.hpp"
#include "cutq/connectivity.hpp"
#include "cutq/graph.hpp"
#include "cutq/ledger.hpp"
#include "cutq/matrix.hpp"
#include "cutq/oracle.hpp"

namespace cutq {

// A discovered edge {u, v} certifying a superedge; always a real edge of the
// hidden graph on successful runs.
struct WitnessEdge {
  int u = 0;
  int v = 0;
};
using WitnessList = std::vector<WitnessEdge>;

using TreeEdges = std::vector<std::pair<int, int>>;

namespace detail_witness {

inline std::vector<int> sorted_union(const SupervertexList& sets) {
  std::vector<int> verts;
  for (const auto& s : sets) verts.insert(verts.end(), s.begin(), s.end());
  std::sort(verts.begin(), verts.end());
  return verts;
}

inline SupervertexList singletons_of(const std::vector<int>& verts) {
  SupervertexList out;
  out.reserve(verts.size());
  for (int v : verts) out.push_back({v});
  return out;
}

// owner[vertex] = index of the set containing it (-1 elsewhere).
inline std::vector<int> owner_map(const SupervertexList& sets, int n) {
  std::vector<int> owner(static_cast<size_t>(n), -1);
  for (size_t i = 0; i < sets.size(); ++i)
    for (int v : sets[i]) owner[static_cast<size_t>(v)] = static_cast<int>(i);
  return owner;
}

inline std::int64_t witness_degree_cap(const Profile& profile, int n, std::int64_t h) {
  return ceil_to_i64(3.0 * static_cast<double>(profile.ln_factor) * static_cast<double>(h) *
                     std::log(std::max(n, 2)));
}

}  // namespace detail_witness

// ---------------------------------------------------------------------------
// Witness Low-Low: both sides have superdegree at most h_bound.  First learn
// the per-vertex rows on the S side; keep, for every (S_i, T_j) superedge,
// the least S_i-vertex seeing T_j; then learn all edges from the T side into
// that small representative set.
// ---------------------------------------------------------------------------
inline WitnessList witness_low_low(const OracleHandle& h, const SupervertexList& s,
                                   const SupervertexList& t, std::int64_t h_bound, double delta,
                                   const Profile& profile, Rng& rng,
                                   const AuditConfig& audit = {}, Rng* audit_rng = nullptr) {
  WitnessList out;
  if (s.empty() || t.empty()) return out;
  const int n = h.n();
  const int l = static_cast<int>(t.size());
  const std::vector<int> u_verts = detail_witness::sorted_union(s);
  const std::vector<int> owner = detail_witness::owner_map(s, n);

  const IntMatrix b = learn_low(h, detail_witness::singletons_of(u_verts), t, h_bound, delta / 2,
                                profile.decode, rng, audit, audit_rng);

  // X: for each superedge target (i, j), the least u_a in S_i with B(a,j)>0.
  std::vector<std::uint8_t> chosen(u_verts.size(), 0);
  std::vector<std::vector<std::uint8_t>> pair_done(
      s.size(), std::vector<std::uint8_t>(static_cast<size_t>(l), 0));
  for (size_t a = 0; a < u_verts.size(); ++a) {
    const int i = owner[static_cast<size_t>(u_verts[a])];
    for (int j = 0; j < l; ++j) {
      if (b.at(static_cast<int>(a), j) == 0) continue;
      if (pair_done[static_cast<size_t>(i)][static_cast<size_t>(j)]) continue;
      pair_done[static_cast<size_t>(i)][static_cast<size_t>(j)] = 1;
      chosen[a] = 1;
    }
  }
  std::vector<int> x_verts;
  for (size_t a = 0; a < u_verts.size(); ++a)
    if (chosen[a]) x_verts.push_back(u_verts[a]);
  if (x_verts.empty()) return out;

  const std::vector<int> y_verts = detail_witness::sorted_union(t);
  const IntMatrix d = learn_low(h, detail_witness::singletons_of(y_verts),
                                detail_witness::singletons_of(x_verts), h_bound * h_bound,
                                delta / 2, profile.decode, rng, audit, audit_rng);
  for (size_t yb = 0; yb < y_verts.size(); ++yb)
    for (size_t xa = 0; xa < x_verts.size(); ++xa)
      if (d.at(static_cast<int>(yb), static_cast<int>(xa)) != 0)
        out.push_back({x_verts[xa], y_verts[yb]});
  return out;
}

// ---------------------------------------------------------------------------
// Witness Low-High: only the S side is degree-bounded.  Learn per-vertex
// rows on the S side, keep one representative vertex per S_i, then for each
// representative find a concrete neighbor inside its heaviest target by
// sampling T's vertices at a rate inverse to that weight.
// ---------------------------------------------------------------------------
inline WitnessList witness_low_high(const OracleHandle& h, const SupervertexList& s,
                                    const SupervertexList& t, std::int64_t h_bound,
                                    const Profile& profile, Rng& rng,
                                    const AuditConfig& audit = {}, Rng* audit_rng = nullptr) {
  WitnessList out;
  if (s.empty() || t.empty()) return out;
  const int n = h.n();
  const int l = static_cast<int>(t.size());
  const std::vector<int> u_verts = detail_witness::sorted_union(s);
  const std::vector<int> owner = detail_witness::owner_map(s, n);

  const IntMatrix b = learn_low(h, detail_witness::singletons_of(u_verts), t, h_bound, 1.0 / n,
                                profile.decode, rng, audit, audit_rng);

  // One representative per S_i: the first vertex with a nonzero row.
  std::vector<int> rep_vert;           // representative vertices (ascending)
  std::vector<std::int64_t> rep_best;  // B(a, j*) for the representative
  {
    std::vector<std::uint8_t> found(s.size(), 0);
    for (size_t a = 0; a < u_verts.size(); ++a) {
      const int i = owner[static_cast<size_t>(u_verts[a])];
      if (found[static_cast<size_t>(i)]) continue;
      std::int64_t best = 0;
      for (int j = 0; j < l; ++j)
        if (b.at(static_cast<int>(a), j) > best) best = b.at(static_cast<int>(a), j);
      if (best == 0) continue;
      found[static_cast<size_t>(i)] = 1;
      rep_vert.push_back(u_verts[a]);
      rep_best.push_back(best);
    }
  }
  if (rep_vert.empty()) return out;

  const std::vector<int> y_verts = detail_witness::sorted_union(t);
  const std::int64_t y_count = static_cast<std::int64_t>(y_verts.size());
  const std::int64_t sample_cap = 4 * y_count * ceil_to_i64(std::log(std::max(n, 2)));
  const std::int64_t inner_cap = detail_witness::witness_degree_cap(profile, n, h_bound);

  const std::int64_t q_hi = ceil_log2(static_cast<std::uint64_t>(y_count));
  for (std::int64_t q = 0; q <= q_hi; ++q) {
    const double lo = std::ldexp(1.0, static_cast<int>(q) - 1);
    const double hi = std::ldexp(1.0, static_cast<int>(q));
    std::vector<int> bucket;
    for (size_t a = 0; a < rep_vert.size(); ++a) {
      const double v = static_cast<double>(rep_best[a]);
      if (v > lo && v <= hi) bucket.push_back(static_cast<int>(a));
    }
    if (bucket.empty()) continue;

    const double raw = 16.0 * static_cast<double>(y_count) *
                       std::log(static_cast<double>(bucket.size()) * n) / hi;
    const std::int64_t samples = std::min(sample_cap, std::max<std::int64_t>(1, ceil_to_i64(raw)));
    std::vector<int> picked;
    picked.reserve(static_cast<size_t>(samples));
    for (std::int64_t r = 0; r < samples; ++r)
      picked.push_back(y_verts[static_cast<size_t>(rand_below(rng, y_count))]);
    std::sort(picked.begin(), picked.end());
    picked.erase(std::unique(picked.begin(), picked.end()), picked.end());

    std::vector<int> bucket_verts;
    for (int a : bucket) bucket_verts.push_back(rep_vert[static_cast<size_t>(a)]);
    const IntMatrix c = learn_low(h, detail_witness::singletons_of(bucket_verts),
                                  detail_witness::singletons_of(picked), inner_cap, 1.0 / n,
                                  profile.decode, rng, audit, audit_rng);
    for (size_t bi = 0; bi < bucket_verts.size(); ++bi)
      for (size_t pj = 0; pj < picked.size(); ++pj)
        if (c.at(static_cast<int>(bi), static_cast<int>(pj)) != 0) {
          out.push_back({bucket_verts[bi], picked[pj]});
          break;  // one witness per representative suffices to merge its group
        }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Witness Reduce High: high-degree S rows bucketed by estimate, each bucket
// finding witnesses into a degree-thinning supervertex sample of T.
// ---------------------------------------------------------------------------
inline WitnessList witness_reduce_high(const OracleHandle& h, const SupervertexList& s,
                                       const SupervertexList& t, double d,
                                       const std::vector<double>& g, const Profile& profile,
                                       Rng& rng, const AuditConfig& audit = {},
                                       Rng* audit_rng = nullptr) {
  WitnessList out;
  const int k = static_cast<int>(s.size());
  const int l = static_cast<int>(t.size());
  if (k == 0 || l == 0) return out;
  if (static_cast<int>(g.size()) != k)
    throw ParameterError("witness_reduce_high: estimate length must match |S|");

  const int n = h.n();
  std::int64_t q_lo = 0;
  if (d > 1.0)
    q_lo = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor(std::log2(d))) - 1);
  const std::int64_t q_hi = ceil_log2(static_cast<std::uint64_t>(l)) + 2;
  const std::int64_t sample_cap =
      4 * static_cast<std::int64_t>(l) * ceil_to_i64(std::log(std::max(n, 2)));
  const std::int64_t cap = profile.reduce_high_cap(n);

  for (std::int64_t q = q_lo; q <= q_hi; ++q) {
    const double lo = std::ldexp(1.0, static_cast<int>(q) - 1);
    const double hi = std::ldexp(1.0, static_cast<int>(q));
    std::vector<int> bucket;
    for (int i = 0; i < k; ++i)
      if (g[static_cast<size_t>(i)] > lo && g[static_cast<size_t>(i)] <= hi) bucket.push_back(i);
    if (bucket.empty()) continue;

    const double raw = 16.0 * static_cast<double>(l) *
                       std::log(static_cast<double>(bucket.size()) * n) / hi;
    const std::int64_t samples = std::min(sample_cap, std::max<std::int64_t>(1, ceil_to_i64(raw)));
    std::vector<int> picked;
    picked.reserve(static_cast<size_t>(samples));
    for (std::int64_t r = 0; r < samples; ++r)
      picked.push_back(static_cast<int>(rand_below(rng, l)));
    std::sort(picked.begin(), picked.end());
    picked.erase(std::unique(picked.begin(), picked.end()), picked.end());

    const auto found = witness_low_high(h, detail_super::pick(s, bucket),
                                        detail_super::pick(t, picked), cap, profile, rng, audit,
                                        audit_rng);
    out.insert(out.end(), found.begin(), found.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Witness Contract: merge along witness edges, carrying spanning trees.  A
// witness whose endpoints already share a merged set is skipped so trees
// never acquire a cycle.
// ---------------------------------------------------------------------------
struct WitnessContractResult {
  SupervertexList next_s;
  std::vector<TreeEdges> next_trees;
  SupervertexList components;
  std::vector<TreeEdges> component_trees;
};

inline WitnessContractResult witness_contract(const SupervertexList& s,
                                              const std::vector<TreeEdges>& trees,
                                              const std::vector<WitnessList>& witness_lists,
                                              const std::vector<std::uint8_t>& low, int n) {
  const int k = static_cast<int>(s.size());
  if (static_cast<int>(trees.size()) != k)
    throw ParameterError("witness_contract: one tree per supervertex required");
  if (static_cast<int>(low.size()) != k)
    throw ParameterError("witness_contract: low flags must match |S|");
  const std::vector<int> owner = detail_witness::owner_map(s, n);

  std::vector<int> parent(static_cast<size_t>(k));
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<std::uint8_t> flag(low);
  std::vector<TreeEdges> tree(trees);
  const auto find = [&](int v) {
    while (parent[static_cast<size_t>(v)] != v) {
      parent[static_cast<size_t>(v)] = parent[static_cast<size_t>(parent[static_cast<size_t>(v)])];
      v = parent[static_cast<size_t>(v)];
    }
    return v;
  };

  for (const auto& list : witness_lists)
    for (const auto& e : list) {
      if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
        throw ParameterError("witness_contract: vertex out of range");
      const int i = owner[static_cast<size_t>(e.u)];
      const int j = owner[static_cast<size_t>(e.v)];
      if (i < 0 || j < 0)
        throw ParameterError("witness_contract: witness endpoint outside the supervertices");
      const int ri = find(i);
      const int rj = find(j);
      if (ri == rj) continue;  // endpoints already merged; adding would close a cycle
      parent[static_cast<size_t>(rj)] = ri;
      auto& dst = tree[static_cast<size_t>(ri)];
      auto& src = tree[static_cast<size_t>(rj)];
      dst.insert(dst.end(), src.begin(), src.end());
      src.clear();
      dst.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
      flag[static_cast<size_t>(ri)] =
          static_cast<std::uint8_t>(flag[static_cast<size_t>(ri)] & flag[static_cast<size_t>(rj)]);
    }

  std::vector<std::vector<int>> members(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) members[static_cast<size_t>(find(i))].push_back(i);

  struct Group {
    std::vector<int> verts;
    TreeEdges edges;
    bool low = false;
  };
  std::vector<Group> groups;
  for (int r = 0; r < k; ++r) {
    if (members[static_cast<size_t>(r)].empty()) continue;
    Group grp;
    for (int i : members[static_cast<size_t>(r)])
      grp.verts.insert(grp.verts.end(), s[static_cast<size_t>(i)].begin(),
                       s[static_cast<size_t>(i)].end());
    std::sort(grp.verts.begin(), grp.verts.end());
    grp.edges = std::move(tree[static_cast<size_t>(r)]);
    std::sort(grp.edges.begin(), grp.edges.end());
    grp.low = flag[static_cast<size_t>(r)] != 0;
    groups.push_back(std::move(grp));
  }
  std::sort(groups.begin(), groups.end(),
            [](const Group& a, const Group& b) { return a.verts.front() < b.verts.front(); });

  WitnessContractResult res;
  for (auto& grp : groups) {
    if (grp.low) {
      res.components.push_back(std::move(grp.verts));
      res.component_trees.push_back(std::move(grp.edges));
    } else {
      res.next_s.push_back(std::move(grp.verts));
      res.next_trees.push_back(std::move(grp.edges));
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Witness Shrink: the connectivity round, with witnesses.  High rows find a
// witness through the bucketed sampler; low rows split their targets by a
// second degree estimate into high targets (witnessed via Witness Low-High,
// and marking the row not-low) and low targets (witnessed exhaustively via
// Witness Low-Low).
// ---------------------------------------------------------------------------
inline WitnessContractResult witness_shrink(const OracleHandle& h, const SupervertexList& s,
                                            const std::vector<TreeEdges>& trees, std::int64_t d,
                                            const Profile& profile, Rng& rng,
                                            const AuditConfig& audit = {},
                                            Rng* audit_rng = nullptr) {
  const int k = static_cast<int>(s.size());
  const int n = h.n();
  const double nn = static_cast<double>(n) * static_cast<double>(n);
  std::vector<std::uint8_t> low(static_cast<size_t>(k), 1);
  std::vector<WitnessList> witness_lists;

  const std::int64_t rounds = ceil_log2(static_cast<std::uint64_t>(std::max(k, 1)));
  for (std::int64_t j = 1; j <= rounds; ++j) {
    for (int bside = 0; bside <= 1; ++bside) {
      std::vector<int> left, right;
      for (int tpos = 0; tpos < k; ++tpos) {
        if (((tpos >> (j - 1)) & 1) == bside)
          left.push_back(tpos);
        else
          right.push_back(tpos);
      }
      if (left.empty() || right.empty()) continue;

      const auto lsets = detail_super::pick(s, left);
      const auto rsets = detail_super::pick(s, right);
      const auto g = approx_degree_sequence(h, lsets, rsets, 1.0 / nn, profile, rng, audit,
                                            audit_rng);

      std::vector<int> high_pos, low_pos;
      std::vector<double> g_high;
      for (size_t i = 0; i < left.size(); ++i) {
        if (g[i] >= static_cast<double>(d)) {
          high_pos.push_back(left[i]);
          g_high.push_back(g[i]);
          low[static_cast<size_t>(left[i])] = 0;
        } else {
          low_pos.push_back(left[i]);
        }
      }

      if (!high_pos.empty())
        witness_lists.push_back(witness_reduce_high(h, detail_super::pick(s, high_pos), rsets,
                                                    static_cast<double>(d) / 4.0, g_high, profile,
                                                    rng, audit, audit_rng));

      if (low_pos.empty()) continue;
      const auto lprime = detail_super::pick(s, low_pos);
      const auto f = approx_degree_sequence(h, rsets, lprime, 1.0 / nn, profile, rng, audit,
                                            audit_rng);
      std::vector<int> plus_pos, minus_pos;
      for (size_t i = 0; i < right.size(); ++i) {
        if (f[i] >= 16.0 * static_cast<double>(d))
          plus_pos.push_back(right[i]);
        else
          minus_pos.push_back(right[i]);
      }

      if (!plus_pos.empty()) {
        const auto found = witness_low_high(h, lprime, detail_super::pick(s, plus_pos), 2 * d,
                                            profile, rng, audit, audit_rng);
        const std::vector<int> owner = detail_witness::owner_map(lprime, n);
        for (const auto& e : found) {
          const size_t local = static_cast<size_t>(owner[static_cast<size_t>(e.u)]);
          low[static_cast<size_t>(low_pos[local])] = 0;
        }
        witness_lists.push_back(found);
      }

      if (!minus_pos.empty())
        witness_lists.push_back(witness_low_low(h, lprime, detail_super::pick(s, minus_pos),
                                                32 * d, 1.0 / n, profile, rng, audit, audit_rng));
    }
  }
  return witness_contract(s, trees, witness_lists, low, n);
}

// ---------------------------------------------------------------------------
// Spanning forest: witness-shrink until the working set is empty.
// ---------------------------------------------------------------------------
struct Tree {
  std::vector<int> vertices;
  TreeEdges edges;
};

struct ForestResult {
  std::vector<Tree> trees;
  std::int64_t rounds = 0;
};

// Every tree edge must be a real edge lying inside the tree's vertex set,
// and the |V|-1 edges must connect the set.
inline bool tree_spans(const WeightedGraph& g, const std::vector<int>& verts,
                       const TreeEdges& edges) {
  if (verts.empty()) return false;
  if (edges.size() + 1 != verts.size()) return false;
  std::vector<int> local(static_cast<size_t>(g.n()), -1);
  for (size_t i = 0; i < verts.size(); ++i) local[static_cast<size_t>(verts[i])] = static_cast<int>(i);
  std::vector<int> parent(verts.size());
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int v) {
    while (parent[static_cast<size_t>(v)] != v) {
      parent[static_cast<size_t>(v)] = parent[static_cast<size_t>(parent[static_cast<size_t>(v)])];
      v = parent[static_cast<size_t>(v)];
    }
    return v;
  };
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= g.n() || v >= g.n()) return false;
    if (local[static_cast<size_t>(u)] < 0 || local[static_cast<size_t>(v)] < 0) return false;
    if (g.weight(u, v) == 0) return false;
    const int ru = find(local[static_cast<size_t>(u)]);
    const int rv = find(local[static_cast<size_t>(v)]);
    if (ru == rv) return false;  // cycle
    parent[static_cast<size_t>(rv)] = ru;
  }
  return true;  // |V|-1 acyclic edges inside the set must connect it
}

inline void audit_forest(const WeightedGraph& g, const SupervertexList& working,
                         const std::vector<TreeEdges>& working_trees,
                         const std::vector<Tree>& finished, QueryLedger& ledger) {
  SupervertexList finished_sets;
  for (const auto& t : finished) finished_sets.push_back(t.vertices);
  audit_partition(g, working, finished_sets, ledger);
  for (size_t i = 0; i < working.size(); ++i) {
    ledger.charge(QueryKind::audit);
    if (!tree_spans(g, working[i], working_trees[i]))
      throw IntegrityError("audit: invalid spanning tree for a working supervertex");
  }
  for (const auto& t : finished) {
    ledger.charge(QueryKind::audit);
    if (!tree_spans(g, t.vertices, t.edges))
      throw IntegrityError("audit: invalid spanning tree for a finished component");
  }
}

inline ForestResult spanning_forest(const OracleHandle& h, const Profile& profile, Rng& rng,
                                    const AuditConfig& audit = {}, Rng* audit_rng = nullptr) {
  if (h.mode() != OracleMode::cut) throw ModeError("spanning_forest requires a cut handle");
  const int n = h.n();
  const std::int64_t d = profile.shrink_degree(n);
  const std::int64_t stall_limit = 4 * ceil_log2(static_cast<std::uint64_t>(std::max(n, 2)));

  ForestResult res;
  SupervertexList s = singleton_supervertices(n);
  std::vector<TreeEdges> trees(static_cast<size_t>(n));
  std::int64_t stalled = 0;
  while (!s.empty()) {
    const size_t before = s.size();
    WitnessContractResult step = witness_shrink(h, s, trees, d, profile, rng, audit, audit_rng);
    for (size_t i = 0; i < step.components.size(); ++i)
      res.trees.push_back({std::move(step.components[i]), std::move(step.component_trees[i])});
    s = std::move(step.next_s);
    trees = std::move(step.next_trees);
    ++res.rounds;
    if (audit.enabled) audit_forest(h.graph(), s, trees, res.trees, h.ledger());
    if (s.size() < before) {
      stalled = 0;
    } else if (++stalled >= stall_limit) {
      throw FailureEvent("spanning forest made no progress for " + std::to_string(stall_limit) +
                         " consecutive rounds");
    }
  }
  std::sort(res.trees.begin(), res.trees.end(),
            [](const Tree& a, const Tree& b) { return a.vertices.front() < b.vertices.front(); });
  return res;
}

// A spanning forest is valid for the hidden graph when its vertex sets are
// exactly the connected components and each tree spans its set.
inline bool forest_matches_reference(const WeightedGraph& g, const ForestResult& forest) {
  SupervertexList sets;
  for (const auto& t : forest.trees) sets.push_back(t.vertices);
  canonicalize(sets);
  if (sets != reference_components(g)) return false;
  for (const auto& t : forest.trees)
    if (!tree_spans(g, t.vertices, t.edges)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Applications: bipartiteness, acyclicity, emptiness.
// ---------------------------------------------------------------------------

namespace detail_witness {

// Two-colors every tree (root = least vertex, color 0) and returns the color
// classes over all of V.
inline std::pair<std::vector<std::uint8_t>, std::vector<std::uint8_t>> forest_two_coloring(
    int n, const std::vector<Tree>& trees) {
  std::vector<std::uint8_t> red(static_cast<size_t>(n), 0), blue(static_cast<size_t>(n), 0);
  for (const auto& t : trees) {
    std::vector<std::vector<int>> adj;
    std::vector<int> local(static_cast<size_t>(n), -1);
    adj.assign(t.vertices.size(), {});
    for (size_t i = 0; i < t.vertices.size(); ++i)
      local[static_cast<size_t>(t.vertices[i])] = static_cast<int>(i);
    for (const auto& [u, v] : t.edges) {
      adj[static_cast<size_t>(local[static_cast<size_t>(u)])].push_back(
          local[static_cast<size_t>(v)]);
      adj[static_cast<size_t>(local[static_cast<size_t>(v)])].push_back(
          local[static_cast<size_t>(u)]);
    }
    std::vector<int> color(t.vertices.size(), -1);
    std::vector<int> stack{0};
    color[0] = 0;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      for (int y : adj[static_cast<size_t>(x)])
        if (color[static_cast<size_t>(y)] < 0) {
          color[static_cast<size_t>(y)] = 1 - color[static_cast<size_t>(x)];
          stack.push_back(y);
        }
    }
    for (size_t i = 0; i < t.vertices.size(); ++i) {
      if (color[i] == 0)
        red[static_cast<size_t>(t.vertices[i])] = 1;
      else
        blue[static_cast<size_t>(t.vertices[i])] = 1;
    }
  }
  return {red, blue};
}

// Total weight inside a color class, summed over the label-bit splits: zero
// iff the class spans no edge.  Charges exactly 3 ceil(log2 n) cut queries.
inline std::int64_t class_internal_weight(const OracleHandle& h,
                                          const std::vector<std::uint8_t>& cls) {
  const int n = h.n();
  const std::int64_t bits = ceil_log2(static_cast<std::uint64_t>(n));
  std::int64_t total = 0;
  for (std::int64_t j = 1; j <= bits; ++j) {
    std::vector<std::uint8_t> zero(static_cast<size_t>(n), 0), one(static_cast<size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
      if (!cls[static_cast<size_t>(v)]) continue;
      if ((v >> (j - 1)) & 1)
        one[static_cast<size_t>(v)] = 1;
      else
        zero[static_cast<size_t>(v)] = 1;
    }
    QueryLedger::TraceScope scope(h.ledger());
    total += disjoint_matrix_cut_via_cut(h, zero, one);
    scope.record({TraceOp::split_check, n});
  }
  return total;
}

}  // namespace detail_witness

struct BipartiteResult {
  bool bipartite = false;
  std::int64_t rounds = 0;
};

// Bipartite iff the forest's canonical two-coloring has no monochromatic
// edge; each color class is swept by label-bit splits, every internal edge
// separated by at least one split.
inline BipartiteResult test_bipartite(const OracleHandle& h, const Profile& profile, Rng& rng,
                                      const AuditConfig& audit = {}, Rng* audit_rng = nullptr) {
  const ForestResult forest = spanning_forest(h, profile, rng, audit, audit_rng);
  const auto [red, blue] = detail_witness::forest_two_coloring(h.n(), forest.trees);
  const std::int64_t in_red = detail_witness::class_internal_weight(h, red);
  const std::int64_t in_blue = detail_witness::class_internal_weight(h, blue);
  return {in_red == 0 && in_blue == 0, forest.rounds};
}

struct AcyclicResult {
  bool acyclic = false;
  std::int64_t rounds = 0;
};

// Acyclic iff bipartite (odd cycles) and the red/blue crossing weight equals
// the forest's edge count (even cycles would add extra crossing edges).
inline AcyclicResult test_acyclic(const OracleHandle& h, const Profile& profile, Rng& rng,
                                  const AuditConfig& audit = {}, Rng* audit_rng = nullptr) {
  if (h.graph().max_weight() > 1)
    throw ParameterError("test_acyclic counts edges and requires unit weights");
  const ForestResult forest = spanning_forest(h, profile, rng, audit, audit_rng);
  const auto [red, blue] = detail_witness::forest_two_coloring(h.n(), forest.trees);
  const std::int64_t in_red = detail_witness::class_internal_weight(h, red);
  const std::int64_t in_blue = detail_witness::class_internal_weight(h, blue);
  if (in_red != 0 || in_blue != 0) return {false, forest.rounds};

  QueryLedger::TraceScope scope(h.ledger());
  const std::int64_t crossing = disjoint_matrix_cut_via_cut(h, red, blue);
  scope.record({TraceOp::split_check, h.n()});
  std::int64_t forest_edges = 0;
  for (const auto& t : forest.trees) forest_edges += static_cast<std::int64_t>(t.edges.size());
  return {crossing == forest_edges, forest.rounds};
}

// One-sided emptiness test for the subgraph induced by `subset`: draws
// ceil(log2(1/eps)) uniform subsets R and reports empty only if every
// R-to-rest weight inside the subset is zero.  An edge inside the subset is
// split by each R with probability 1/2, so a non-empty subgraph is reported
// empty with probability at most eps.  The charge is deterministic: one cut
// query per repetition when the subset is all of V, else three.
inline bool test_empty_subgraph(const OracleHandle& h, const std::vector<int>& subset,
                                double eps, Rng& rng) {
  if (h.mode() != OracleMode::cut) throw ModeError("test_empty_subgraph requires a cut handle");
  if (!(eps > 0.0) || !(eps < 1.0))
    throw ParameterError("test_empty_subgraph: eps must be in (0,1)");
  const int n = h.n();
  std::vector<std::uint8_t> in_subset(static_cast<size_t>(n), 0);
  for (int v : subset) {
    if (v < 0 || v >= n) throw ParameterError("test_empty_subgraph: vertex out of range");
    if (in_subset[static_cast<size_t>(v)])
      throw ParameterError("test_empty_subgraph: duplicate vertex");
    in_subset[static_cast<size_t>(v)] = 1;
  }
  const bool whole = static_cast<int>(subset.size()) == n;
  const std::int64_t reps = ceil_log2_real(1.0 / eps);

  QueryLedger::TraceScope scope(h.ledger());
  bool found = false;
  for (std::int64_t r = 0; r < reps; ++r) {
    std::vector<std::uint8_t> pick(static_cast<size_t>(n), 0);
    for (int v : subset)
      if (rng() & 1) pick[static_cast<size_t>(v)] = 1;
    std::int64_t val = 0;
    if (whole) {
      val = h.cut_query(pick);
    } else {
      std::vector<std::uint8_t> rest(static_cast<size_t>(n), 0);
      for (int v : subset)
        if (!pick[static_cast<size_t>(v)]) rest[static_cast<size_t>(v)] = 1;
      val = disjoint_matrix_cut_via_cut(h, pick, rest);
    }
    if (val > 0) found = true;  // keep querying: the charge is part of the contract
  }
  scope.record({TraceOp::empty_test, static_cast<std::int64_t>(subset.size()), reps,
                whole ? 1 : 3});
  return !found;
}

}  // namespace cutq
