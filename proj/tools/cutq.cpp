// cutq: hidden-graph oracle laboratory.
//
// Subcommands generate benchmark graphs, run the query algorithms against a
// hidden-graph oracle with full charge accounting, build adversarial graph
// pairs, and sweep sizes into CSV reports.  All outputs are deterministic
// functions of the seed and flags.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cutq/adversary.hpp"
#include "cutq/experiments.hpp"

namespace {

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoi(item));
  }
  return out;
}

std::vector<std::vector<int>> parse_query_sets(const std::string& s) {
  std::vector<std::vector<int>> out;
  std::stringstream ss(s);
  std::string group;
  while (std::getline(ss, group, ';')) out.push_back(parse_int_list(group));
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw cutq::ParameterError("cannot open output file: " + out_path);
  f << text;
}

struct CommonFlags {
  int n = 32;
  std::string family = "erdos_renyi";
  std::uint64_t seed = 1;
  std::string profile = "paper";
  std::string oracle = "cut";
  std::string audit = "off";
  std::string out;
  std::string format = "json";
  double p = -1.0;
  int d = 2;
  std::int64_t weight_bound = 2;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_family = true, bool with_n = true) {
  if (with_n) cmd->add_option("--n", f.n, "number of vertices");
  if (with_family) {
    cmd->add_option("--family", f.family,
                    "graph family: empty|path|cycle|matching|complete|two_cliques|"
                    "erdos_renyi|d_regular|weighted_random");
    cmd->add_option("--p", f.p, "erdos_renyi edge probability (default 2 ln n / n)");
    cmd->add_option("--d", f.d, "degree for d_regular");
    cmd->add_option("--weight-bound", f.weight_bound, "weight bound for weighted_random");
  }
  cmd->add_option("--seed", f.seed, "RNG seed; fixed seed + flags give identical output");
  cmd->add_option("--profile", f.profile, "constant profile: paper|desk")
      ->check(CLI::IsMember({"paper", "desk"}));
  cmd->add_option("--oracle", f.oracle, "oracle mode for learn: cut|additive|matrix")
      ->check(CLI::IsMember({"cut", "additive", "matrix"}));
  cmd->add_option("--audit", f.audit, "integrity audits: on|off")
      ->check(CLI::IsMember({"on", "off"}));
  cmd->add_option("--out", f.out, "output file (default stdout)");
  cmd->add_option("--format", f.format, "output format: json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

cutq::ExperimentConfig to_config(const CommonFlags& f, const std::string& algorithm) {
  cutq::ExperimentConfig cfg;
  cfg.algorithm = algorithm;
  cfg.family = f.family;
  cfg.n = f.n;
  cfg.seed = f.seed;
  cfg.profile = cutq::Profile::by_name(f.profile);
  cfg.oracle = cutq::oracle_mode_by_name(f.oracle);
  cfg.audit = f.audit == "on";
  cfg.family_params.p = f.p;
  cfg.family_params.d = f.d;
  cfg.family_params.M = f.weight_bound;
  return cfg;
}

int finish_run(const cutq::RunResult& r, const CommonFlags& f) {
  std::string text;
  if (f.format == "csv") {
    text = cutq::csv_header() + "\n" + cutq::csv_row(r) + "\n";
  } else {
    text = cutq::run_to_json(r).dump(2) + "\n";
  }
  emit(text, f.out);
  return r.failed ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hidden-graph cut-query laboratory"};
  app.require_subcommand(1);

  CommonFlags gen_f, learn_f, comp_f, forest_f, bip_f, acy_f, empty_f, scale_f;

  auto* gen = app.add_subcommand("gen", "generate a benchmark graph file");
  add_common(gen, gen_f);

  auto* learn = app.add_subcommand("learn", "reconstruct the hidden graph through the oracle");
  add_common(learn, learn_f);

  auto* comp = app.add_subcommand("components", "connected components via cut queries");
  add_common(comp, comp_f);

  auto* forest = app.add_subcommand("forest", "spanning forest via cut queries");
  add_common(forest, forest_f);

  auto* bip = app.add_subcommand("bipartite", "bipartiteness test via cut queries");
  add_common(bip, bip_f);

  auto* acy = app.add_subcommand("acyclic", "acyclicity test via cut queries");
  add_common(acy, acy_f);

  auto* emptyc = app.add_subcommand("empty-test", "one-sided subgraph emptiness test");
  add_common(emptyc, empty_f);
  double eps = 0.5;
  std::string subset_arg;
  emptyc->add_option("--eps", eps, "false-empty probability budget in (0,1)");
  emptyc->add_option("--subset", subset_arg, "comma-separated vertex subset (default: all)");

  auto* adv = app.add_subcommand("adversary", "build two graphs indistinguishable by the queries");
  int adv_n = 4;
  std::string adv_queries;
  std::string adv_out;
  adv->add_option("--n", adv_n, "number of vertices");
  adv->add_option("--queries", adv_queries,
                  "cut queries as ';'-separated ','-lists, e.g. \"0;1,2\"");
  adv->add_option("--out", adv_out, "output prefix (writes .g1.txt, .g2.txt, .certificate.json)");

  auto* scale = app.add_subcommand("scale", "sweep sizes and report query growth as CSV");
  std::string scale_sizes = "16,32,64,128";
  int scale_trials = 10;
  std::string scale_algo = "components";
  scale->add_option("--algo", scale_algo, "algorithm: components|forest|bipartite|acyclic");
  scale->add_option("--trials", scale_trials, "trials per size");
  scale->add_option("--sizes", scale_sizes, "comma-separated sizes");
  add_common(scale, scale_f, true, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      const auto g = cutq::generate(gen_f.family, gen_f.n,
                                    cutq::derive_seed(gen_f.seed, "instance"),
                                    {gen_f.p, gen_f.d, gen_f.weight_bound});
      emit(cutq::graph_to_string(g), gen_f.out);
      return 0;
    }
    if (learn->parsed()) return finish_run(cutq::run_experiment(to_config(learn_f, "learn")), learn_f);
    if (comp->parsed())
      return finish_run(cutq::run_experiment(to_config(comp_f, "components")), comp_f);
    if (forest->parsed())
      return finish_run(cutq::run_experiment(to_config(forest_f, "forest")), forest_f);
    if (bip->parsed())
      return finish_run(cutq::run_experiment(to_config(bip_f, "bipartite")), bip_f);
    if (acy->parsed()) return finish_run(cutq::run_experiment(to_config(acy_f, "acyclic")), acy_f);
    if (emptyc->parsed()) {
      auto cfg = to_config(empty_f, "empty");
      cfg.eps = eps;
      if (!subset_arg.empty()) cfg.subset = parse_int_list(subset_arg);
      return finish_run(cutq::run_experiment(cfg), empty_f);
    }
    if (adv->parsed()) {
      const auto pair = cutq::build_adversary_pair(adv_n, parse_query_sets(adv_queries));
      nlohmann::ordered_json cert;
      cert["n"] = pair.n;
      cert["queries_requested"] = pair.k_requested;
      cert["queries_used"] = pair.k_used;
      cert["base_weight"] = pair.m.str();
      nlohmann::ordered_json answers = nlohmann::ordered_json::array();
      for (size_t i = 0; i < pair.cut1.size(); ++i)
        answers.push_back({{"g1", pair.cut1[i].str()}, {"g2", pair.cut2[i].str()}});
      cert["cut_answers"] = answers;
      cert["total_weight_g1"] = pair.total1.str();
      cert["total_weight_g2"] = pair.total2.str();
      cert["certificate_inf_norm"] = pair.y_inf.str();
      std::ostringstream g1, g2;
      cutq::write_big_graph(g1, pair.n, pair.w1);
      cutq::write_big_graph(g2, pair.n, pair.w2);
      if (adv_out.empty()) {
        cert["graph1"] = g1.str();
        cert["graph2"] = g2.str();
        std::cout << cert.dump(2) << "\n";
      } else {
        emit(g1.str(), adv_out + ".g1.txt");
        emit(g2.str(), adv_out + ".g2.txt");
        emit(cert.dump(2) + "\n", adv_out + ".certificate.json");
      }
      return 0;
    }
    if (scale->parsed()) {
      cutq::ScaleRequest req;
      req.algorithm = scale_algo;
      req.family = scale_f.family;
      req.sizes = parse_int_list(scale_sizes);
      req.trials = scale_trials;
      req.seed = scale_f.seed;
      req.profile = cutq::Profile::by_name(scale_f.profile);
      req.audit = scale_f.audit == "on";
      const auto runs = cutq::run_scale(req);
      std::ostringstream os;
      if (scale_f.format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : runs) arr.push_back(cutq::run_to_json(r));
        os << arr.dump(2) << "\n";
      } else {
        cutq::write_csv(os, runs);
      }
      emit(os.str(), scale_f.out);
      return 0;
    }
  } catch (const cutq::FailureEvent& ev) {
    nlohmann::ordered_json rep;
    rep["failure"] = ev.what();
    std::cout << rep.dump(2) << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 1;
}
