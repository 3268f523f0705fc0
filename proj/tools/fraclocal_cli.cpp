#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "fraclocal/experiment.hpp"
#include "fraclocal/graph_io.hpp"
#include "fraclocal/multicoloring.hpp"
#include "fraclocal/oracle.hpp"

using namespace fraclocal;

namespace {

struct Common {
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "json";
  std::optional<std::int64_t> round_cap;
};

void emit(const Common& common, const std::string& file, const std::string& text) {
  if (common.out.empty()) {
    std::cout << text;
    return;
  }
  std::filesystem::create_directories(common.out);
  std::ofstream f(std::filesystem::path(common.out) / file, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + file);
  f << text;
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_edge_list(in);
}

std::string report_csv(const MultiColoringReport& r) {
  std::ostringstream out;
  out << "valid,complete,p,q,q_achieved,ratio\n"
      << (r.valid ? "true" : "false") << ',' << (r.complete ? "true" : "false") << ',' << r.p << ',' << r.q << ','
      << r.achieved_q_min << ',' << r.ratio << '\n';
  return out.str();
}

nlohmann::json report_json(const MultiColoringReport& r) {
  nlohmann::json out = {{"valid", r.valid},   {"complete", r.complete},        {"p", r.p},
                        {"q", r.q},           {"q_achieved", r.achieved_q_min}, {"colored_nodes", r.colored_nodes}};
  out["ratio"] = std::isinf(r.ratio) ? nlohmann::json(nullptr) : nlohmann::json(r.ratio);
  if (r.conflict) out["conflict"] = {r.conflict->first, r.conflict->second};
  if (!r.message.empty()) out["message"] = r.message;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LOCAL-model fractional coloring simulator and verifier"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--seed", common.seed, "master seed");
  app.add_option("--out", common.out, "output directory (stdout when absent)");
  app.add_option("--format", common.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--round-cap", common.round_cap, "runs scheduled past this many rounds count as failures");

  auto* gen = app.add_subcommand("gen", "generate a graph in edge-list format");
  std::string generator;
  int n = 60, delta = 3;
  gen->add_option("generator", generator, "generator name")->required()->check(CLI::IsMember(generator_names()));
  gen->add_option("--n", n, "node count (side product for grids)");
  gen->add_option("--delta", delta, "degree parameter");

  auto* run = app.add_subcommand("run", "run one algorithm on a graph and verify the output");
  std::string algorithm, graph_path;
  int q = 2;
  double epsilon = 0.25;
  run->add_option("algorithm", algorithm, "algorithm name")->required()->check(CLI::IsMember(algorithm_names()));
  run->add_option("--graph", graph_path, "edge-list file")->required();
  run->add_option("--q", q, "target q");
  run->add_option("--epsilon", epsilon, "loss parameter");

  auto* verify = app.add_subcommand("verify", "check a multicoloring against a graph");
  std::string coloring_path;
  verify->add_option("--graph", graph_path, "edge-list file")->required();
  verify->add_option("--coloring", coloring_path, "coloring JSON {p, q, colors}")->required();

  auto* suite = app.add_subcommand("suite", "run an experiment matrix (built-in name or config file)");
  std::string suite_arg;
  suite->add_option("config", suite_arg, "theorem1 | approx | grid | path to a config file")->required();

  auto* oracle = app.add_subcommand("oracle", "exact independence number, chi_f and girth of a small graph");
  int lowerbound_k = 0;
  oracle->add_option("--graph", graph_path, "edge-list file")->required();
  oracle->add_option("--subdivide", lowerbound_k, "also certify the graph with every edge subdivided (k >= 1)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const Graph g = make_graph(generator, n, delta, common.seed.value_or(1));
      emit(common, "graph.txt", to_edge_list_string(g));
      return 0;
    }
    if (*run) {
      const Graph g = load_graph(graph_path);
      const auto outcome = run_named_algorithm(algorithm, g, q, epsilon, common.seed.value_or(1));
      const auto report = check_multicoloring(g, outcome.coloring);
      const bool in_time = !common.round_cap || outcome.rounds <= *common.round_cap;
      if (common.format == "csv") {
        ExperimentRow row;
        row.generator = graph_path;
        row.n = g.size();
        row.delta = g.max_degree();
        row.algorithm = algorithm;
        row.q = q;
        row.epsilon = epsilon;
        row.seed = common.seed.value_or(1);
        row.p = outcome.coloring.p;
        row.q_achieved = report.achieved_q_min;
        row.ratio = report.ratio;
        row.rounds = outcome.rounds;
        row.valid = report.valid && report.complete && in_time;
        emit(common, "run.csv", rows_csv({row}));
      } else {
        nlohmann::json doc = multicoloring_json(outcome.coloring);
        doc["rounds"] = outcome.rounds;
        doc["verification"] = report_json(report);
        emit(common, "coloring.json", doc.dump(2) + "\n");
      }
      return report.valid && report.complete && in_time ? 0 : 1;
    }
    if (*verify) {
      const Graph g = load_graph(graph_path);
      std::ifstream in(coloring_path);
      if (!in) throw std::runtime_error("cannot open " + coloring_path);
      const auto coloring = multicoloring_from_json(nlohmann::json::parse(in), g.size());
      const auto report = check_multicoloring(g, coloring);
      if (common.format == "csv")
        emit(common, "report.csv", report_csv(report));
      else
        emit(common, "report.json", report_json(report).dump(2) + "\n");
      return report.valid && report.complete ? 0 : 1;
    }
    if (*suite) {
      ExperimentConfig cfg;
      if (std::filesystem::exists(suite_arg)) {
        std::ifstream in(suite_arg);
        cfg = parse_config(in);
      } else {
        cfg = suite_config(suite_arg);
      }
      if (common.seed) cfg.first_seed = *common.seed;
      if (common.round_cap) cfg.round_cap = *common.round_cap;
      const auto rows = run_experiment(cfg);
      if (common.format == "csv")
        emit(common, "results.csv", rows_csv(rows));
      else
        emit(common, "results.json", rows_json(rows).dump(2) + "\n");
      bool all = true;
      for (const auto& r : rows) {
        all = all && r.valid;
        if (!r.error.empty()) std::cerr << r.generator << " n=" << r.n << " " << r.algorithm << ": " << r.error << "\n";
      }
      return all ? 0 : 1;
    }
    if (*oracle) {
      const Graph g = load_graph(graph_path);
      const auto cert = certify(g, g.size() <= 20);
      nlohmann::json doc = certificate_json(cert);
      if (lowerbound_k > 0) {
        const auto lb = certify_lowerbound_family(g, lowerbound_k);
        doc["subdivided"] = {{"k", lb.k},
                             {"nodes", lb.nodes},
                             {"girth", lb.girth},
                             {"independence_number", lb.independence},
                             {"independence_bound", lb.independence_bound},
                             {"chi_f", lb.chi_f.get_str()},
                             {"margin", lb.margin.get_str()},
                             {"certified", lb.certified}};
      }
      emit(common, "certificate.json", doc.dump(2) + "\n");
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
