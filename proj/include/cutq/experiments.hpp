#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cutq/common.hpp"
#include "cutq/connectivity.hpp"
#include "cutq/graph.hpp"
#include "cutq/graph_learn.hpp"
#include "cutq/ledger.hpp"
#include "cutq/matrix_learn.hpp"
#include "cutq/oracle.hpp"
#include "cutq/quantum.hpp"
#include "cutq/spanning_forest.hpp"

namespace cutq {

// ---------------------------------------------------------------------------
// Ledger verification: recompute every traced operation's closed-form charge
// from its logged parameters and compare with the measured counter deltas.
// Audit counts are bookkeeping and are never verified.
// ---------------------------------------------------------------------------

inline std::array<std::int64_t, 6> expected_charges(const TraceRecord& rec) {
  std::array<std::int64_t, 6> e{};
  const auto add = [&e](QueryKind k, std::int64_t v) { e[static_cast<int>(k)] += v; };
  const auto backend = [&](std::int64_t kind, std::int64_t mult, std::int64_t units) {
    if (kind == static_cast<std::int64_t>(QueryKind::quantum_charged)) return;  // raw callable
    add(static_cast<QueryKind>(kind), mult * units);
  };
  switch (rec.op) {
    case TraceOp::raw_cut:
      add(QueryKind::cut, 1);
      break;
    case TraceOp::raw_additive:
      add(QueryKind::additive, 1);
      break;
    case TraceOp::raw_matrix_cut:
      add(QueryKind::matrix_cut, 1);
      break;
    case TraceOp::raw_disjoint_matrix_cut:
      add(QueryKind::disjoint_matrix_cut, 1);
      break;
    case TraceOp::dmc_via_cut:
      add(QueryKind::cut, 3);
      break;
    case TraceOp::mc_via_additive:
      add(QueryKind::additive, 5);
      break;
    case TraceOp::cut_via_additive:
      add(QueryKind::additive, 3);
      break;
    case TraceOp::qft_subset_sum: {
      const std::int64_t m = ceil_log2(static_cast<std::uint64_t>(rec.i0));
      add(QueryKind::quantum_charged, m);
      backend(rec.i1, rec.i2, m);
      break;
    }
    case TraceOp::learn_dense: {
      const std::int64_t m = ceil_log2(static_cast<std::uint64_t>(rec.i2));
      const std::int64_t u = std::min(rec.i0, rec.i1) * m;
      add(QueryKind::quantum_charged, u);
      backend(rec.i3, rec.i4, u);
      break;
    }
    case TraceOp::learn_sparse: {
      const std::int64_t q = sparse_sketch_columns(rec.i2, static_cast<int>(rec.i1),
                                                   static_cast<int>(rec.i3), rec.d0);
      const std::int64_t u = q * ceil_log2(static_cast<std::uint64_t>(rec.i2));
      add(QueryKind::quantum_charged, u);
      backend(rec.i4, static_cast<std::int64_t>(std::llround(rec.d1)), u);
      break;
    }
    case TraceOp::degree_seq_exact: {
      const std::int64_t u = ceil_log2(static_cast<std::uint64_t>(rec.i1) + 1);
      add(QueryKind::quantum_charged, u);
      backend(rec.i2, rec.i3, u);
      break;
    }
    case TraceOp::approx_count: {
      const std::int64_t a =
          approx_count_repetitions(static_cast<int>(rec.i0), rec.i1, rec.d0,
                                   static_cast<std::int64_t>(std::llround(rec.d1)));
      const std::int64_t levels = ceil_log2(static_cast<std::uint64_t>(rec.i1)) + 1;
      const std::int64_t m = ceil_log2(static_cast<std::uint64_t>(rec.i2));
      const std::int64_t u = a * levels * m;
      add(QueryKind::quantum_charged, u);
      backend(rec.i3, rec.i4, u);
      break;
    }
    case TraceOp::empty_test:
      add(QueryKind::cut, rec.i1 * rec.i2);
      break;
    case TraceOp::split_check:
      add(QueryKind::cut, 3);
      break;
  }
  return e;
}

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> mismatches;
};

inline VerifyReport verify_ledger(const QueryLedger& ledger) {
  VerifyReport rep;
  std::array<std::int64_t, 6> covered{};
  std::size_t idx = 0;
  for (const auto& rec : ledger.trace()) {
    const auto exp = expected_charges(rec);
    for (int k = 0; k < 6; ++k) {
      if (static_cast<QueryKind>(k) == QueryKind::audit) continue;
      covered[static_cast<size_t>(k)] += rec.actual[static_cast<size_t>(k)];
      if (exp[static_cast<size_t>(k)] != rec.actual[static_cast<size_t>(k)]) {
        rep.ok = false;
        std::ostringstream os;
        os << "record " << idx << " (" << trace_op_name(rec.op) << "): expected "
           << query_kind_name(static_cast<QueryKind>(k)) << "=" << exp[static_cast<size_t>(k)]
           << ", counted " << rec.actual[static_cast<size_t>(k)];
        rep.mismatches.push_back(os.str());
      }
    }
    ++idx;
  }
  for (int k = 0; k < 6; ++k) {
    if (static_cast<QueryKind>(k) == QueryKind::audit) continue;
    if (covered[static_cast<size_t>(k)] != ledger.counts()[static_cast<size_t>(k)]) {
      rep.ok = false;
      std::ostringstream os;
      os << "totals: " << query_kind_name(static_cast<QueryKind>(k)) << " counter is "
         << ledger.counts()[static_cast<size_t>(k)] << " but traced operations account for "
         << covered[static_cast<size_t>(k)];
      rep.mismatches.push_back(os.str());
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Single-run driver.
// ---------------------------------------------------------------------------

struct ExperimentConfig {
  std::string algorithm = "components";  // components|forest|bipartite|acyclic|empty|learn
  std::string family = "erdos_renyi";
  int n = 32;
  std::uint64_t seed = 1;
  Profile profile = Profile::paper();
  OracleMode oracle = OracleMode::cut;  // learn only
  bool audit = false;
  FamilyParams family_params{};
  double eps = 0.5;          // empty-test failure budget
  std::vector<int> subset;   // empty-test scope; empty means all of V
};

struct RunResult {
  std::string algorithm;
  std::string family;
  std::string profile;
  int n = 0;
  std::uint64_t seed = 0;
  std::array<std::int64_t, 6> queries{};
  bool failed = false;
  std::string failure;
  bool correct = false;  // vs privileged reference (meaningful when !failed)
  bool answer = false;   // bipartite / acyclic / empty verdict
  std::int64_t rounds = 0;
  SupervertexList components;       // components algorithm
  std::vector<Tree> trees;          // forest algorithm
  std::vector<Edge> learned_edges;  // learn algorithm
  VerifyReport ledger_report;
};

namespace detail_experiments {

inline IntMatrix adjacency_matrix(const WeightedGraph& g) {
  IntMatrix a(g.n(), g.n());
  for (const auto& e : g.edges()) {
    a.at(e.u, e.v) = e.w;
    a.at(e.v, e.u) = e.w;
  }
  return a;
}

inline bool same_graph(const WeightedGraph& a, const WeightedGraph& b) {
  return graph_to_string(a) == graph_to_string(b);
}

}  // namespace detail_experiments

inline RunResult run_experiment(const ExperimentConfig& cfg) {
  RunResult r;
  r.algorithm = cfg.algorithm;
  r.family = cfg.family;
  r.profile = cfg.profile.name;
  r.n = cfg.n;
  r.seed = cfg.seed;

  const WeightedGraph g =
      generate(cfg.family, cfg.n, derive_seed(cfg.seed, "instance"), cfg.family_params);
  QueryLedger ledger;
  const OracleMode mode = cfg.algorithm == "learn" ? cfg.oracle : OracleMode::cut;
  OracleHandle h(g, ledger, mode);
  Rng rng = make_rng(cfg.seed, "algo");
  Rng audit_rng = make_rng(cfg.seed, "audit");
  AuditConfig audit;
  audit.enabled = cfg.audit;

  try {
    if (cfg.algorithm == "components") {
      const auto res = connected_components(h, cfg.profile, rng, audit, &audit_rng);
      r.components = res.components;
      r.rounds = res.rounds;
      r.correct = res.components == reference_components(g);
    } else if (cfg.algorithm == "forest") {
      const auto res = spanning_forest(h, cfg.profile, rng, audit, &audit_rng);
      r.trees = res.trees;
      r.rounds = res.rounds;
      r.correct = forest_matches_reference(g, res);
    } else if (cfg.algorithm == "bipartite") {
      const auto res = test_bipartite(h, cfg.profile, rng, audit, &audit_rng);
      r.answer = res.bipartite;
      r.rounds = res.rounds;
      r.correct = res.bipartite == reference_is_bipartite(g);
    } else if (cfg.algorithm == "acyclic") {
      const auto res = test_acyclic(h, cfg.profile, rng, audit, &audit_rng);
      r.answer = res.acyclic;
      r.rounds = res.rounds;
      r.correct = res.acyclic == reference_is_acyclic(g);
    } else if (cfg.algorithm == "empty") {
      std::vector<int> subset = cfg.subset;
      if (subset.empty()) {
        subset.resize(static_cast<size_t>(cfg.n));
        std::iota(subset.begin(), subset.end(), 0);
      }
      r.answer = test_empty_subgraph(h, subset, cfg.eps, rng);
      const auto member = make_membership(cfg.n, subset);
      bool truly_empty = true;
      for (const auto& e : g.edges())
        if (member[static_cast<size_t>(e.u)] && member[static_cast<size_t>(e.v)])
          truly_empty = false;
      r.correct = r.answer == truly_empty;
    } else if (cfg.algorithm == "learn") {
      const std::int64_t M = std::max<std::int64_t>(2, g.max_weight() + 1);
      WeightedGraph learned = make_empty(cfg.n);
      if (mode == OracleMode::cut) {
        learned = learn_graph_cut_full(h, M, audit, &audit_rng);
      } else if (mode == OracleMode::additive) {
        const auto budget =
            LearnBudget::edge_bound(static_cast<std::int64_t>(g.edges().size()));
        learned = learn_graph_additive(h, M, budget, 1.0 / cfg.n, cfg.profile.decode, rng,
                                       cfg.profile.rep_const, audit, &audit_rng);
      } else {
        DirectMatrixChannel ch(detail_experiments::adjacency_matrix(g), ledger);
        learned = adjacency_to_graph(learn_dense(ch, M, audit, &audit_rng));
      }
      r.learned_edges = learned.edges();
      r.correct = detail_experiments::same_graph(learned, g);
      r.answer = r.correct;
    } else {
      throw ParameterError("unknown algorithm: " + cfg.algorithm);
    }
  } catch (const FailureEvent& ev) {
    r.failed = true;
    r.failure = ev.what();
  }
  r.queries = ledger.counts();
  r.ledger_report = verify_ledger(ledger);
  return r;
}

// ---------------------------------------------------------------------------
// Output shaping.
// ---------------------------------------------------------------------------

inline nlohmann::ordered_json queries_json(const std::array<std::int64_t, 6>& q) {
  nlohmann::ordered_json out;
  for (int k = 0; k < 6; ++k)
    out[query_kind_name(static_cast<QueryKind>(k))] = q[static_cast<size_t>(k)];
  return out;
}

inline nlohmann::ordered_json run_to_json(const RunResult& r) {
  nlohmann::ordered_json out;
  if (r.failed) {
    out["failure"] = r.failure;
    out["queries"] = queries_json(r.queries);
    out["profile"] = r.profile;
    return out;
  }
  if (r.algorithm == "components") {
    out["components"] = r.components;
  } else if (r.algorithm == "forest") {
    nlohmann::ordered_json trees = nlohmann::ordered_json::array();
    nlohmann::ordered_json comps = nlohmann::ordered_json::array();
    for (const auto& t : r.trees) {
      nlohmann::ordered_json edges = nlohmann::ordered_json::array();
      for (const auto& [u, v] : t.edges) edges.push_back({u, v});
      trees.push_back(edges);
      comps.push_back(t.vertices);
    }
    out["trees"] = trees;
    out["components"] = comps;
  } else if (r.algorithm == "bipartite") {
    out["bipartite"] = r.answer;
  } else if (r.algorithm == "acyclic") {
    out["acyclic"] = r.answer;
  } else if (r.algorithm == "empty") {
    out["empty"] = r.answer;
  } else if (r.algorithm == "learn") {
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (const auto& e : r.learned_edges) edges.push_back({e.u, e.v, e.w});
    out["edges"] = edges;
  }
  out["queries"] = queries_json(r.queries);
  out["profile"] = r.profile;
  if (r.algorithm == "components" || r.algorithm == "forest" || r.algorithm == "bipartite" ||
      r.algorithm == "acyclic")
    out["rounds"] = r.rounds;
  if (r.queries[static_cast<size_t>(QueryKind::audit)] > 0 || r.algorithm == "learn")
    out["correct"] = r.correct;
  return out;
}

inline std::string csv_header() {
  return "n,seed,algorithm,family,profile,cut_queries,additive_queries,matrix_cut_queries,"
         "quantum_charged,audit_queries,correct,rounds";
}

inline std::string csv_row(const RunResult& r) {
  const auto& q = r.queries;
  std::ostringstream os;
  os << r.n << ',' << r.seed << ',' << r.algorithm << ',' << r.family << ',' << r.profile << ','
     << q[static_cast<size_t>(QueryKind::cut)] << ',' << q[static_cast<size_t>(QueryKind::additive)]
     << ','
     << q[static_cast<size_t>(QueryKind::matrix_cut)] +
            q[static_cast<size_t>(QueryKind::disjoint_matrix_cut)]
     << ',' << q[static_cast<size_t>(QueryKind::quantum_charged)] << ','
     << q[static_cast<size_t>(QueryKind::audit)] << ',' << (r.correct && !r.failed ? 1 : 0) << ','
     << r.rounds;
  return os.str();
}

inline void write_csv(std::ostream& os, const std::vector<RunResult>& runs) {
  os << csv_header() << "\n";
  for (const auto& r : runs) os << csv_row(r) << "\n";
}

// ---------------------------------------------------------------------------
// Scaling sweeps.
// ---------------------------------------------------------------------------

struct ScaleRequest {
  std::string algorithm = "components";
  std::string family = "path";
  std::vector<int> sizes;
  int trials = 10;
  std::uint64_t seed = 1;
  Profile profile = Profile::desk();
  bool audit = false;
};

inline std::uint64_t trial_seed(std::uint64_t base, int n, int trial) {
  return derive_seed(derive_seed(base, "n" + std::to_string(n)), "t" + std::to_string(trial));
}

inline std::vector<RunResult> run_scale(const ScaleRequest& req) {
  std::vector<RunResult> runs;
  for (int n : req.sizes)
    for (int t = 0; t < req.trials; ++t) {
      ExperimentConfig cfg;
      cfg.algorithm = req.algorithm;
      cfg.family = req.family;
      cfg.n = n;
      cfg.seed = trial_seed(req.seed, n, t);
      cfg.profile = req.profile;
      cfg.audit = req.audit;
      runs.push_back(run_experiment(cfg));
    }
  std::sort(runs.begin(), runs.end(), [](const RunResult& a, const RunResult& b) {
    if (a.n != b.n) return a.n < b.n;
    return a.seed < b.seed;
  });
  return runs;
}

inline double mean_cut_queries(const std::vector<RunResult>& runs, int n) {
  double sum = 0.0;
  std::int64_t cnt = 0;
  for (const auto& r : runs)
    if (r.n == n) {
      sum += static_cast<double>(r.queries[static_cast<size_t>(QueryKind::cut)]);
      ++cnt;
    }
  if (cnt == 0) throw ParameterError("mean_cut_queries: no runs at this size");
  return sum / static_cast<double>(cnt);
}

// Least-squares slope of log(value) against log(n): the fitted growth
// exponent of a size/value series.  Values must be positive.
inline double fit_exponent(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) throw ParameterError("fit_exponent: need at least two points");
  double sx = 0, sy = 0;
  for (const auto& [n, v] : points) {
    if (!(n > 0.0) || !(v > 0.0)) throw ParameterError("fit_exponent: values must be positive");
    sx += std::log(n);
    sy += std::log(v);
  }
  const double mx = sx / static_cast<double>(points.size());
  const double my = sy / static_cast<double>(points.size());
  double num = 0, den = 0;
  for (const auto& [n, v] : points) {
    num += (std::log(n) - mx) * (std::log(v) - my);
    den += (std::log(n) - mx) * (std::log(n) - mx);
  }
  return num / den;
}

}  // namespace cutq
