#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "cutq/common.hpp"
#include "cutq/graph.hpp"
#include "cutq/ledger.hpp"
#include "cutq/matrix.hpp"
#include "cutq/matrix_learn.hpp"
#include "cutq/oracle.hpp"
#include "cutq/quantum.hpp"
#include "cutq/sketch.hpp"

namespace cutq {

using SupervertexList = std::vector<std::vector<int>>;

// Tuning profile.  `paper` keeps the source constants (repetition constant
// 200, 64-ln factor in derived degree caps, shrink degree 1024 ceil(log n)^2)
// whose guarantees are proven; `desk` scales them down (20, 16-ln, 8 ceil(log
// n)) so small instances are not drowned in repetitions, trading proof-backed
// failure bounds for empirically checked ones.
struct Profile {
  std::string name = "paper";
  std::int64_t rep_const = 200;
  std::int64_t ln_factor = 64;
  SparseDecode decode = SparseDecode::trusted;

  std::int64_t shrink_degree(int n) const {
    const std::int64_t lg = ceil_log2(static_cast<std::uint64_t>(std::max(n, 2)));
    return name == "desk" ? 8 * lg : 1024 * lg * lg;
  }

  // Degree cap passed to Learn Low inside Reduce High: 3 * ln_factor * ln n
  // (192 ln n under the "paper" profile's constants).
  std::int64_t reduce_high_cap(int n) const {
    return ceil_to_i64(3.0 * static_cast<double>(ln_factor) * std::log(std::max(n, 2)));
  }

  static Profile paper() { return Profile{}; }
  static Profile desk() { return Profile{"desk", 20, 16, SparseDecode::trusted}; }

  static Profile by_name(const std::string& s) {
    if (s == "paper") return paper();
    if (s == "desk") return desk();
    throw ParameterError("unknown profile: " + s);
  }
};

inline SupervertexList singleton_supervertices(int n) {
  SupervertexList s;
  s.reserve(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) s.push_back({v});
  return s;
}

// Canonical ordering: vertices sorted inside each set, sets sorted by their
// least vertex.
inline void canonicalize(SupervertexList& sets) {
  for (auto& s : sets) std::sort(s.begin(), s.end());
  std::sort(sets.begin(), sets.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              return a.front() < b.front();
            });
}

namespace detail_super {

inline SupervertexList pick(const SupervertexList& s, const std::vector<int>& pos) {
  SupervertexList out;
  out.reserve(pos.size());
  for (int p : pos) out.push_back(s[static_cast<size_t>(p)]);
  return out;
}

}  // namespace detail_super

// ---------------------------------------------------------------------------
// Approximate Degree Sequence: estimates, for every S_i, the number of
// T_j's it has an edge into.  Served by OR tests against the supervertex
// biadjacency matrix, each answered by one quantum subset-sum round modulo
// n^2 whose pair-weight answers cost 3 cut queries apiece.
// ---------------------------------------------------------------------------
inline std::vector<double> approx_degree_sequence(const OracleHandle& h,
                                                  const SupervertexList& s,
                                                  const SupervertexList& t, double delta,
                                                  const Profile& profile, Rng& rng,
                                                  const AuditConfig& audit = {},
                                                  Rng* audit_rng = nullptr) {
  const int k = static_cast<int>(s.size());
  const int l = static_cast<int>(t.size());
  if (k == 0) return {};
  if (l == 0) return std::vector<double>(static_cast<size_t>(k), 0.0);

  BiadjacencyCutChannel ch(h.graph(), h.ledger(), s, t);
  const std::int64_t n = h.n();
  const std::int64_t mod = n * n;
  const std::int64_t m = ceil_log2(static_cast<std::uint64_t>(mod));
  QueryLedger& ledger = h.ledger();
  QueryLedger::TraceScope scope(ledger);

  // Row presence bitsets answer the OR tests.  For simple unweighted graphs
  // the masked row sums stay below n^2, so thresholding presence agrees
  // exactly with the mod-n^2 subset-sum value; weighted rows fall back to
  // summing entries so that modular wraparound is reproduced faithfully.
  const IntMatrix& b = ch.hidden();
  const bool weighted = h.graph().max_weight() > 1;
  const size_t words = (static_cast<size_t>(l) + 63) / 64;
  std::vector<std::vector<std::uint64_t>> bits;
  if (!weighted) {
    bits.assign(static_cast<size_t>(k), std::vector<std::uint64_t>(words, 0));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < l; ++j)
        if (b.at(i, j) > 0)
          bits[static_cast<size_t>(i)][static_cast<size_t>(j) >> 6] |=
              std::uint64_t{1} << (static_cast<unsigned>(j) & 63u);
  }

  std::vector<std::uint64_t> mask(words);
  std::vector<std::uint8_t> mask_bytes(static_cast<size_t>(l));
  const KOrOracle or_oracle = [&](const std::vector<int>& sample) {
    std::fill(mask.begin(), mask.end(), 0);
    std::fill(mask_bytes.begin(), mask_bytes.end(), 0);
    for (int j : sample) {
      mask[static_cast<size_t>(j) >> 6] |= std::uint64_t{1} << (static_cast<unsigned>(j) & 63u);
      mask_bytes[static_cast<size_t>(j)] = 1;
    }
    ledger.charge(QueryKind::quantum_charged, m);
    ch.charge_bulk(m);

    std::vector<std::uint8_t> ans(static_cast<size_t>(k), 0);
    std::vector<std::int64_t> sums;
    if (!weighted) {
      for (int i = 0; i < k; ++i) {
        const auto& row = bits[static_cast<size_t>(i)];
        for (size_t w = 0; w < words; ++w)
          if (row[w] & mask[w]) {
            ans[static_cast<size_t>(i)] = 1;
            break;
          }
      }
    } else {
      sums.assign(static_cast<size_t>(k), 0);
      for (int i = 0; i < k; ++i) {
        std::int64_t sum = 0;
        for (int j = 0; j < l; ++j)
          if (mask_bytes[static_cast<size_t>(j)]) sum += b.at(i, j);
        sums[static_cast<size_t>(i)] = floor_mod(sum, mod);
        ans[static_cast<size_t>(i)] = sums[static_cast<size_t>(i)] >= 1 ? 1 : 0;
      }
    }

    if (audit.enabled && audit_rng) {
      for (int c = 0; c < audit.checks; ++c) {
        std::vector<std::uint8_t> sel(static_cast<size_t>(k), 0);
        std::int64_t want = 0;
        for (int i = 0; i < k; ++i)
          if ((*audit_rng)() & 1) {
            sel[static_cast<size_t>(i)] = 1;
            std::int64_t vi = 0;
            if (!weighted) {
              for (int j = 0; j < l; ++j)
                if (mask_bytes[static_cast<size_t>(j)]) vi += b.at(i, j);
              vi = floor_mod(vi, mod);
            } else {
              vi = sums[static_cast<size_t>(i)];
            }
            want = floor_mod(want + vi, mod);
          }
        ledger.charge(QueryKind::audit);
        if (floor_mod(ch.eval_uncharged(sel, mask_bytes), mod) != want)
          throw IntegrityError("degree-sequence fast path inconsistent with the oracle");
      }
    }
    return ans;
  };

  const auto res = approximate_count(or_oracle, k, l, delta, profile.rep_const, rng);
  scope.record({TraceOp::approx_count, k, l, mod,
                static_cast<std::int64_t>(QueryKind::cut), 3, delta,
                static_cast<double>(profile.rep_const)});
  return res.estimate;
}

// ---------------------------------------------------------------------------
// Learn Low: the exact weighted biadjacency matrix B(i,j) = |E(S_i, T_j)|
// between supervertex families, assuming every S_i has at most degree_bound
// neighbors among the T_j.
// ---------------------------------------------------------------------------
inline IntMatrix learn_low(const OracleHandle& h, const SupervertexList& s,
                           const SupervertexList& t, std::int64_t degree_bound, double delta,
                           SparseDecode mode, Rng& rng, const AuditConfig& audit = {},
                           Rng* audit_rng = nullptr) {
  const int k = static_cast<int>(s.size());
  const int l = static_cast<int>(t.size());
  if (k == 0 || l == 0) return IntMatrix(k, l);
  BiadjacencyCutChannel ch(h.graph(), h.ledger(), s, t);
  const std::int64_t n = h.n();
  return learn_sparse_rows(ch, n * n, static_cast<int>(std::min<std::int64_t>(degree_bound, l)),
                           delta, mode, rng, audit, audit_rng);
}

// One undirected superedge discovered between supervertex list positions.
struct SuperedgeEntry {
  int i = 0;
  int j = 0;
  std::int64_t w = 0;
};
using SuperedgeList = std::vector<SuperedgeEntry>;

// ---------------------------------------------------------------------------
// Reduce High: every S_i has at least d T-neighbors and g estimates the
// degrees; finds at least one T-neighbor per S_i while touching only about
// l ln(n) / d columns.  Rows are bucketed by estimate magnitude; each bucket
// samples T at a rate inverse to its degree scale and learns the sampled
// (now low-degree) biadjacency.
// ---------------------------------------------------------------------------
inline SuperedgeList reduce_high(const OracleHandle& h, const SupervertexList& s,
                                 const SupervertexList& t, double d,
                                 const std::vector<double>& g, const Profile& profile, Rng& rng,
                                 const AuditConfig& audit = {}, Rng* audit_rng = nullptr) {
  const int k = static_cast<int>(s.size());
  const int l = static_cast<int>(t.size());
  SuperedgeList out;
  if (k == 0 || l == 0) return out;
  if (static_cast<int>(g.size()) != k)
    throw ParameterError("reduce_high: estimate length must match |S|");

  const int n = h.n();
  std::int64_t q_lo = 0;
  if (d > 1.0) q_lo = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor(std::log2(d))) - 1);
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

    const IntMatrix b = learn_low(h, detail_super::pick(s, bucket), detail_super::pick(t, picked),
                                  cap, 1.0 / (static_cast<double>(n) * n), profile.decode, rng,
                                  audit, audit_rng);
    for (size_t bi = 0; bi < bucket.size(); ++bi)
      for (size_t pj = 0; pj < picked.size(); ++pj)
        if (b.at(static_cast<int>(bi), static_cast<int>(pj)) != 0)
          out.push_back({bucket[bi], picked[pj], 1});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Contract: merges supervertices along discovered superedges (no queries).
// Fully-low merged groups have had all their superedges discovered, so they
// are finished components; groups containing a high member go back into the
// working set.
// ---------------------------------------------------------------------------
struct ContractResult {
  SupervertexList next_s;
  SupervertexList components;
};

inline ContractResult contract(const SupervertexList& s,
                               const std::vector<SuperedgeList>& superedges,
                               const std::vector<std::uint8_t>& low) {
  const int k = static_cast<int>(s.size());
  if (static_cast<int>(low.size()) != k)
    throw ParameterError("contract: low flags must match |S|");

  std::vector<int> parent(static_cast<size_t>(k));
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<std::uint8_t> flag(low);
  const auto find = [&](int v) {
    while (parent[static_cast<size_t>(v)] != v) {
      parent[static_cast<size_t>(v)] = parent[static_cast<size_t>(parent[static_cast<size_t>(v)])];
      v = parent[static_cast<size_t>(v)];
    }
    return v;
  };

  for (const auto& list : superedges)
    for (const auto& e : list) {
      if (e.w == 0) continue;
      if (e.i < 0 || e.i >= k || e.j < 0 || e.j >= k)
        throw ParameterError("contract: superedge index out of range");
      const int ri = find(e.i);
      const int rj = find(e.j);
      if (ri == rj) continue;  // both endpoints already share a set
      parent[static_cast<size_t>(rj)] = ri;
      flag[static_cast<size_t>(ri)] =
          static_cast<std::uint8_t>(flag[static_cast<size_t>(ri)] & flag[static_cast<size_t>(rj)]);
    }

  std::vector<std::vector<int>> members(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) members[static_cast<size_t>(find(i))].push_back(i);

  ContractResult res;
  for (int r = 0; r < k; ++r) {
    if (members[static_cast<size_t>(r)].empty()) continue;
    std::vector<int> verts;
    for (int i : members[static_cast<size_t>(r)])
      verts.insert(verts.end(), s[static_cast<size_t>(i)].begin(), s[static_cast<size_t>(i)].end());
    std::sort(verts.begin(), verts.end());
    if (flag[static_cast<size_t>(r)])
      res.components.push_back(std::move(verts));
    else
      res.next_s.push_back(std::move(verts));
  }
  canonicalize(res.next_s);
  canonicalize(res.components);
  return res;
}

// ---------------------------------------------------------------------------
// Shrink: one round of superedge discovery and contraction.  Positions of
// the current supervertex list are split by each index bit; high rows keep a
// sampled neighbor, low rows are learned exactly.
// ---------------------------------------------------------------------------
inline ContractResult shrink(const OracleHandle& h, const SupervertexList& s, std::int64_t d,
                             const Profile& profile, Rng& rng, const AuditConfig& audit = {},
                             Rng* audit_rng = nullptr) {
  const int k = static_cast<int>(s.size());
  const int n = h.n();
  std::vector<std::uint8_t> low(static_cast<size_t>(k), 1);
  std::vector<SuperedgeList> superedges;

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
      const auto g = approx_degree_sequence(h, lsets, rsets, 1.0 / n, profile, rng, audit,
                                            audit_rng);

      std::vector<int> high_local, low_local;
      std::vector<double> g_high;
      for (size_t i = 0; i < left.size(); ++i) {
        if (g[i] >= static_cast<double>(d)) {
          high_local.push_back(static_cast<int>(i));
          g_high.push_back(g[i]);
          low[static_cast<size_t>(left[i])] = 0;
        } else {
          low_local.push_back(static_cast<int>(i));
        }
      }

      if (!high_local.empty()) {
        std::vector<int> high_pos;
        for (int i : high_local) high_pos.push_back(left[static_cast<size_t>(i)]);
        const auto found = reduce_high(h, detail_super::pick(s, high_pos), rsets,
                                       static_cast<double>(d) / 4.0, g_high, profile, rng, audit,
                                       audit_rng);
        SuperedgeList remapped;
        for (const auto& e : found)
          remapped.push_back({high_pos[static_cast<size_t>(e.i)],
                              right[static_cast<size_t>(e.j)], e.w});
        superedges.push_back(std::move(remapped));
      }

      if (!low_local.empty()) {
        std::vector<int> low_pos;
        for (int i : low_local) low_pos.push_back(left[static_cast<size_t>(i)]);
        const IntMatrix c = learn_low(h, detail_super::pick(s, low_pos), rsets, 2 * d, 1.0 / n,
                                      profile.decode, rng, audit, audit_rng);
        SuperedgeList remapped;
        for (size_t li = 0; li < low_pos.size(); ++li)
          for (size_t rj = 0; rj < right.size(); ++rj)
            if (c.at(static_cast<int>(li), static_cast<int>(rj)) != 0)
              remapped.push_back({low_pos[li], right[rj],
                                  c.at(static_cast<int>(li), static_cast<int>(rj))});
        superedges.push_back(std::move(remapped));
      }
    }
  }
  return contract(s, superedges, low);
}

// Audit-mode invariant checks: every working set and component induces a
// connected subgraph, components have zero outgoing weight, and the pieces
// partition V.  Privileged graph access, metered on the audit counter.
inline void audit_partition(const WeightedGraph& g, const SupervertexList& working,
                            const SupervertexList& components, QueryLedger& ledger) {
  const int n = g.n();
  std::vector<std::uint8_t> seen(static_cast<size_t>(n), 0);
  const auto check_connected = [&](const std::vector<int>& verts) {
    ledger.charge(QueryKind::audit);
    if (verts.empty()) throw IntegrityError("audit: empty supervertex");
    std::vector<std::uint8_t> inside(static_cast<size_t>(n), 0);
    for (int v : verts) {
      if (v < 0 || v >= n || seen[static_cast<size_t>(v)])
        throw IntegrityError("audit: sets overlap or leave the vertex range");
      seen[static_cast<size_t>(v)] = 1;
      inside[static_cast<size_t>(v)] = 1;
    }
    std::vector<int> stack{verts.front()};
    std::vector<std::uint8_t> visited(static_cast<size_t>(n), 0);
    visited[static_cast<size_t>(verts.front())] = 1;
    size_t reached = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (auto [v, w] : g.neighbors(u)) {
        (void)w;
        if (inside[static_cast<size_t>(v)] && !visited[static_cast<size_t>(v)]) {
          visited[static_cast<size_t>(v)] = 1;
          ++reached;
          stack.push_back(v);
        }
      }
    }
    if (reached != verts.size())
      throw IntegrityError("audit: supervertex does not induce a connected subgraph");
    return inside;
  };

  for (const auto& u : working) check_connected(u);
  for (const auto& c : components) {
    const auto inside = check_connected(c);
    if (g.cut_value(inside) != 0)
      throw IntegrityError("audit: finished component has outgoing edges");
  }
  for (int v = 0; v < n; ++v)
    if (!seen[static_cast<size_t>(v)])
      throw IntegrityError("audit: working sets and components do not cover V");
}

// ---------------------------------------------------------------------------
// Connected components: shrink until the working set is empty.
// ---------------------------------------------------------------------------
struct ComponentsResult {
  SupervertexList components;
  std::int64_t rounds = 0;
};

inline ComponentsResult connected_components(const OracleHandle& h, const Profile& profile,
                                             Rng& rng, const AuditConfig& audit = {},
                                             Rng* audit_rng = nullptr) {
  if (h.mode() != OracleMode::cut)
    throw ModeError("connected_components requires a cut handle");
  const int n = h.n();
  const std::int64_t d = profile.shrink_degree(n);
  const std::int64_t stall_limit = 4 * ceil_log2(static_cast<std::uint64_t>(std::max(n, 2)));

  ComponentsResult res;
  SupervertexList s = singleton_supervertices(n);
  std::int64_t stalled = 0;
  while (!s.empty()) {
    const size_t before = s.size();
    ContractResult step = shrink(h, s, d, profile, rng, audit, audit_rng);
    for (auto& c : step.components) res.components.push_back(std::move(c));
    s = std::move(step.next_s);
    ++res.rounds;
    if (audit.enabled) audit_partition(h.graph(), s, res.components, h.ledger());
    if (s.size() < before) {
      stalled = 0;
    } else if (++stalled >= stall_limit) {
      throw FailureEvent("connectivity made no progress for " + std::to_string(stall_limit) +
                         " consecutive rounds");
    }
  }
  canonicalize(res.components);
  return res;
}

}  // namespace cutq
