#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cutq/common.hpp"

namespace cutq {

// Upper bound on vertices for which a dense adjacency view is materialized.
inline constexpr int kDenseViewLimit = 4096;

struct Edge {
  int u;  // u < v
  int v;
  std::int64_t w;  // w >= 1
};

// Undirected weighted graph on labeled vertices 0..n-1 with positive integer
// edge weights.  Absent pairs have weight 0.  Immutable after construction.
class WeightedGraph {
 public:
  WeightedGraph() : n_(0) {}

  WeightedGraph(int n, std::vector<Edge> edges) : n_(n) {
    if (n < 0) throw ParameterError("graph: n must be >= 0");
    for (auto& e : edges) {
      if (e.u > e.v) std::swap(e.u, e.v);
      if (e.u < 0 || e.v >= n || e.u == e.v)
        throw ParameterError("graph: edge endpoints out of range");
      if (e.w < 1) throw ParameterError("graph: edge weights must be >= 1");
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
      return std::tie(a.u, a.v) < std::tie(b.u, b.v);
    });
    for (size_t i = 1; i < edges.size(); ++i) {
      if (edges[i - 1].u == edges[i].u && edges[i - 1].v == edges[i].v)
        throw ParameterError("graph: duplicate edge");
    }
    edges_ = std::move(edges);
    adj_.assign(static_cast<size_t>(n_), {});
    for (const auto& e : edges_) {
      adj_[static_cast<size_t>(e.u)].push_back({e.v, e.w});
      adj_[static_cast<size_t>(e.v)].push_back({e.u, e.w});
    }
    for (auto& row : adj_) std::sort(row.begin(), row.end());
  }

  int n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::pair<int, std::int64_t>>& neighbors(int u) const {
    return adj_[static_cast<size_t>(u)];
  }

  std::int64_t weight(int u, int v) const {
    if (u == v) return 0;
    const auto& row = adj_[static_cast<size_t>(u)];
    auto it = std::lower_bound(row.begin(), row.end(),
                               std::make_pair(v, std::int64_t{0}));
    if (it != row.end() && it->first == v) return it->second;
    return 0;
  }

  std::int64_t total_weight() const {
    std::int64_t t = 0;
    for (const auto& e : edges_) t += e.w;
    return t;
  }

  std::int64_t max_weight() const {
    std::int64_t m = 0;
    for (const auto& e : edges_) m = std::max(m, e.w);
    return m;
  }

  bool is_simple() const { return max_weight() <= 1; }

  // Total weight crossing the cut (S, V \ S).  `in` is a 0/1 membership map.
  std::int64_t cut_value(const std::vector<std::uint8_t>& in) const {
    check_membership(in);
    std::int64_t t = 0;
    for (const auto& e : edges_) {
      if (in[static_cast<size_t>(e.u)] != in[static_cast<size_t>(e.v)]) t += e.w;
    }
    return t;
  }

  // Total weight of edges with both endpoints in S.
  std::int64_t additive_value(const std::vector<std::uint8_t>& in) const {
    check_membership(in);
    std::int64_t t = 0;
    for (const auto& e : edges_) {
      if (in[static_cast<size_t>(e.u)] && in[static_cast<size_t>(e.v)]) t += e.w;
    }
    return t;
  }

  // Total weight between disjoint vertex sets X and Y.
  std::int64_t pair_weight(const std::vector<std::uint8_t>& in_x,
                           const std::vector<std::uint8_t>& in_y) const {
    check_membership(in_x);
    check_membership(in_y);
    std::int64_t t = 0;
    for (const auto& e : edges_) {
      const auto u = static_cast<size_t>(e.u), v = static_cast<size_t>(e.v);
      if ((in_x[u] && in_y[v]) || (in_x[v] && in_y[u])) t += e.w;
    }
    return t;
  }

  // Dense presence rows (one bit per potential neighbor), for fast set logic.
  const std::vector<std::vector<std::uint64_t>>& bit_rows() const {
    if (bit_rows_.empty() && n_ > 0) {
      if (n_ > kDenseViewLimit)
        throw CapacityError("dense adjacency view limited to n <= 4096");
      const size_t words = (static_cast<size_t>(n_) + 63) / 64;
      bit_rows_.assign(static_cast<size_t>(n_), std::vector<std::uint64_t>(words, 0));
      for (const auto& e : edges_) {
        bit_rows_[static_cast<size_t>(e.u)][static_cast<size_t>(e.v) / 64] |=
            std::uint64_t{1} << (e.v % 64);
        bit_rows_[static_cast<size_t>(e.v)][static_cast<size_t>(e.u) / 64] |=
            std::uint64_t{1} << (e.u % 64);
      }
    }
    return bit_rows_;
  }

 private:
  void check_membership(const std::vector<std::uint8_t>& in) const {
    if (in.size() != static_cast<size_t>(n_))
      throw ParameterError("membership vector size must equal n");
  }

  int n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<int, std::int64_t>>> adj_;
  mutable std::vector<std::vector<std::uint64_t>> bit_rows_;
};

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

inline WeightedGraph make_empty(int n) { return WeightedGraph(n, {}); }

inline WeightedGraph make_path(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, 1});
  return WeightedGraph(n, std::move(e));
}

inline WeightedGraph make_cycle(int n) {
  if (n < 3) throw ParameterError("cycle requires n >= 3");
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, 1});
  e.push_back({0, n - 1, 1});
  return WeightedGraph(n, std::move(e));
}

// Perfect matching on pairs (2i, 2i+1); a trailing odd vertex stays isolated.
inline WeightedGraph make_matching(int n) {
  std::vector<Edge> e;
  for (int i = 0; 2 * i + 1 < n; ++i) e.push_back({2 * i, 2 * i + 1, 1});
  return WeightedGraph(n, std::move(e));
}

inline WeightedGraph make_complete(int n) {
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.push_back({u, v, 1});
  return WeightedGraph(n, std::move(e));
}

// Two disjoint cliques of sizes ceil(n/2) and floor(n/2).
inline WeightedGraph make_two_cliques(int n) {
  const int a = (n + 1) / 2;
  std::vector<Edge> e;
  for (int u = 0; u < a; ++u)
    for (int v = u + 1; v < a; ++v) e.push_back({u, v, 1});
  for (int u = a; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.push_back({u, v, 1});
  return WeightedGraph(n, std::move(e));
}

inline WeightedGraph make_erdos_renyi(int n, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw ParameterError("erdos_renyi: p must be in [0,1]");
  Rng rng = make_rng(seed, "gen/erdos_renyi");
  std::bernoulli_distribution coin(p);
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) e.push_back({u, v, 1});
  return WeightedGraph(n, std::move(e));
}

// Random d-regular simple graph via the pairing model with retries.
inline WeightedGraph make_d_regular(int n, int d, std::uint64_t seed) {
  if (d < 0 || d >= n) throw ParameterError("d_regular: need 0 <= d < n");
  if ((static_cast<std::int64_t>(n) * d) % 2 != 0)
    throw ParameterError("d_regular: n*d must be even");
  if (d == 0) return make_empty(n);
  Rng rng = make_rng(seed, "gen/d_regular");
  for (int attempt = 0; attempt < 5000; ++attempt) {
    std::vector<int> stubs;
    stubs.reserve(static_cast<size_t>(n) * static_cast<size_t>(d));
    for (int u = 0; u < n; ++u)
      for (int i = 0; i < d; ++i) stubs.push_back(u);
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::vector<Edge> e;
    std::vector<std::vector<std::uint8_t>> seen;
    bool simple = true;
    std::vector<std::pair<int, int>> pairs;
    for (size_t i = 0; i + 1 < stubs.size(); i += 2) {
      int u = stubs[i], v = stubs[i + 1];
      if (u == v) { simple = false; break; }
      pairs.emplace_back(std::min(u, v), std::max(u, v));
    }
    if (!simple) continue;
    std::sort(pairs.begin(), pairs.end());
    if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end()) continue;
    for (auto [u, v] : pairs) e.push_back({u, v, 1});
    return WeightedGraph(n, std::move(e));
  }
  throw FailureEvent("d_regular: pairing model failed to produce a simple graph");
}

// Each pair is present independently with probability 1/2; present edges get
// a uniform weight in 1..M-1.
inline WeightedGraph make_weighted_random(int n, std::int64_t M, std::uint64_t seed) {
  if (M < 2) throw ParameterError("weighted_random: M must be >= 2");
  Rng rng = make_rng(seed, "gen/weighted_random");
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<std::int64_t> wd(1, M - 1);
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) e.push_back({u, v, wd(rng)});
  return WeightedGraph(n, std::move(e));
}

struct FamilyParams {
  double p = -1.0;        // erdos_renyi edge probability; < 0 means 2 ln n / n
  int d = 2;              // regular degree
  std::int64_t M = 2;     // weight bound for weighted_random
};

inline WeightedGraph generate(const std::string& family, int n, std::uint64_t seed,
                              const FamilyParams& params = {}) {
  if (family == "empty") return make_empty(n);
  if (family == "path") return make_path(n);
  if (family == "cycle") return make_cycle(n);
  if (family == "matching") return make_matching(n);
  if (family == "complete") return make_complete(n);
  if (family == "two_cliques") return make_two_cliques(n);
  if (family == "erdos_renyi") {
    double p = params.p;
    if (p < 0.0) p = std::min(1.0, 2.0 * std::log(static_cast<double>(std::max(2, n))) / n);
    return make_erdos_renyi(n, p, seed);
  }
  if (family == "d_regular") return make_d_regular(n, params.d, seed);
  if (family == "weighted_random") return make_weighted_random(n, params.M, seed);
  throw ParameterError("unknown graph family: " + family);
}

// ---------------------------------------------------------------------------
// Reference algorithms (trusted baselines for audits and tests)
// ---------------------------------------------------------------------------

inline std::vector<std::vector<int>> reference_components(const WeightedGraph& g) {
  const int n = g.n();
  std::vector<int> comp(static_cast<size_t>(n), -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (comp[static_cast<size_t>(s)] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::queue<int> q;
    q.push(s);
    comp[static_cast<size_t>(s)] = id;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      out[static_cast<size_t>(id)].push_back(u);
      for (auto [v, w] : g.neighbors(u)) {
        (void)w;
        if (comp[static_cast<size_t>(v)] < 0) {
          comp[static_cast<size_t>(v)] = id;
          q.push(v);
        }
      }
    }
  }
  for (auto& c : out) std::sort(c.begin(), c.end());
  std::sort(out.begin(), out.end());
  return out;
}

inline bool reference_is_bipartite(const WeightedGraph& g) {
  const int n = g.n();
  std::vector<int> color(static_cast<size_t>(n), -1);
  for (int s = 0; s < n; ++s) {
    if (color[static_cast<size_t>(s)] >= 0) continue;
    color[static_cast<size_t>(s)] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (auto [v, w] : g.neighbors(u)) {
        (void)w;
        if (color[static_cast<size_t>(v)] < 0) {
          color[static_cast<size_t>(v)] = 1 - color[static_cast<size_t>(u)];
          q.push(v);
        } else if (color[static_cast<size_t>(v)] == color[static_cast<size_t>(u)]) {
          return false;
        }
      }
    }
  }
  return true;
}

inline bool reference_is_acyclic(const WeightedGraph& g) {
  const auto comps = reference_components(g);
  return static_cast<std::int64_t>(g.edges().size()) ==
         static_cast<std::int64_t>(g.n()) - static_cast<std::int64_t>(comps.size());
}

// ---------------------------------------------------------------------------
// File format: first line is n, then one "u v w" line per edge (u < v,
// w >= 1).  Lines starting with '#' and blank lines are ignored on read.
// Writing is canonical (edges sorted), so read-write round trips are
// byte-identical on canonical files.
// ---------------------------------------------------------------------------

inline void write_graph(std::ostream& os, const WeightedGraph& g) {
  os << g.n() << "\n";
  for (const auto& e : g.edges()) os << e.u << " " << e.v << " " << e.w << "\n";
}

inline std::string graph_to_string(const WeightedGraph& g) {
  std::ostringstream os;
  write_graph(os, g);
  return os.str();
}

inline WeightedGraph read_graph(std::istream& is) {
  std::string line;
  int n = -1;
  std::vector<Edge> edges;
  while (std::getline(is, line)) {
    size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    std::istringstream ls(line.substr(start));
    if (n < 0) {
      if (!(ls >> n) || n < 0) throw ParameterError("graph file: bad vertex count");
      continue;
    }
    std::int64_t u, v, w;
    if (!(ls >> u >> v >> w)) throw ParameterError("graph file: bad edge line: " + line);
    if (u < 0 || v < 0 || u >= n || v >= n || u >= v)
      throw ParameterError("graph file: edge endpoints must satisfy 0 <= u < v < n");
    if (w < 1) throw ParameterError("graph file: weights must be >= 1");
    edges.push_back({static_cast<int>(u), static_cast<int>(v), w});
  }
  if (n < 0) throw ParameterError("graph file: missing vertex count");
  return WeightedGraph(n, std::move(edges));
}

inline WeightedGraph graph_from_string(const std::string& s) {
  std::istringstream is(s);
  return read_graph(is);
}

// Membership helpers -------------------------------------------------------

inline std::vector<std::uint8_t> make_membership(int n, const std::vector<int>& verts) {
  std::vector<std::uint8_t> in(static_cast<size_t>(n), 0);
  for (int v : verts) {
    if (v < 0 || v >= n) throw ParameterError("vertex out of range");
    if (in[static_cast<size_t>(v)]) throw ParameterError("duplicate vertex in membership list");
    in[static_cast<size_t>(v)] = 1;
  }
  return in;
}

// Split a label set by bit j (1-based; j = 1 is the least significant bit)
// of the 0-based vertex label.  Returns {bit == 0, bit == 1}.
inline std::pair<std::vector<int>, std::vector<int>> split_by_label_bit(
    const std::vector<int>& verts, int j) {
  if (j < 1) throw ParameterError("split_by_label_bit: j must be >= 1");
  std::vector<int> zero, one;
  for (int v : verts) {
    if ((v >> (j - 1)) & 1) one.push_back(v);
    else zero.push_back(v);
  }
  return {zero, one};
}

}  // namespace cutq
