//
// Copyright 2026 The ldpgraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Command-line front end: experiment sweeps, reruns and dataset utilities.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "json.hpp"
#include "ldpgraph/collection.h"
#include "ldpgraph/experiment.h"
#include "ldpgraph/graph.h"
#include "ldpgraph/linqs.h"
#include "ldpgraph/synthetic.h"
#include "ldpgraph/trainer.h"

namespace {

using ldpgraph::Graph;

int Fail(const absl::Status& status) {
  std::cerr << "error: " << status << "\n";
  return 1;
}

struct RunFlags {
  std::string dataset;
  std::string name;
  std::string arch = "gcn";
  std::vector<double> eps_x = {1.0};
  std::vector<double> eps_a = {7.0};
  std::vector<double> label_rates = {1.0};
  std::vector<std::string> modes = {"solitude"};
  int repeats = 5;
  uint64_t seed = 0;
  ldpgraph::TrainConfig train;
  int hidden = 16;
  bool grid = false;
  size_t grid_budget = 0;
  int sampled_dims = 0;
  std::string normalization = "product";
  std::string label_graph = "noisy";
  bool input_dropout = false;
  bool transpose = false;
  std::string out;
  int jobs = 1;
};

absl::StatusOr<Graph> Load(const std::string& dir, const std::string& name) {
  return ldpgraph::LoadDataset(dir, name);
}

int Run(const RunFlags& flags) {
  absl::StatusOr<Graph> graph = Load(flags.dataset, flags.name);
  if (!graph.ok()) return Fail(graph.status());

  ldpgraph::ExperimentSpec spec;
  spec.dataset = graph->name;
  absl::StatusOr<ldpgraph::Architecture> arch =
      ldpgraph::ParseArchitecture(flags.arch);
  if (!arch.ok()) return Fail(arch.status());
  spec.model.architecture = *arch;
  spec.model.hidden_dim = flags.hidden;
  spec.model.input_dropout = flags.input_dropout;
  spec.model.transpose_aggregation = flags.transpose;
  if (flags.eps_x.size() != flags.eps_a.size() && flags.eps_x.size() != 1 &&
      flags.eps_a.size() != 1) {
    return Fail(absl::InvalidArgumentError(
        "--eps-x and --eps-a need equal lengths, or one of them a single "
        "value"));
  }
  const size_t pairs = std::max(flags.eps_x.size(), flags.eps_a.size());
  for (size_t i = 0; i < pairs; ++i) {
    spec.budgets.push_back(
        {flags.eps_x[flags.eps_x.size() == 1 ? 0 : i],
         flags.eps_a[flags.eps_a.size() == 1 ? 0 : i]});
  }
  spec.label_rates = flags.label_rates;
  spec.modes.clear();
  for (const std::string& mode : flags.modes) {
    absl::StatusOr<ldpgraph::TrainingMode> parsed =
        ldpgraph::ParseTrainingMode(mode);
    if (!parsed.ok()) return Fail(parsed.status());
    spec.modes.push_back(*parsed);
  }
  spec.repeats = flags.repeats;
  spec.seed = flags.seed;
  spec.train = flags.train;
  spec.train.normalization =
      flags.normalization == "sqrt"
          ? ldpgraph::SmoothingNormalization::kSymmetricSqrt
          : ldpgraph::SmoothingNormalization::kDegreeProduct;
  spec.train.label_graph = flags.label_graph == "calibrated"
                               ? ldpgraph::LabelGraph::kCalibrated
                               : ldpgraph::LabelGraph::kNoisy;
  spec.grid = flags.grid;
  if (flags.grid_budget > 0) spec.grid_budget = flags.grid_budget;
  if (flags.sampled_dims > 0) spec.sampled_dims = flags.sampled_dims;
  spec.jobs = flags.jobs;
  spec.out = flags.out;

  for (const ldpgraph::BudgetPair& budget : spec.budgets) {
    for (const std::string& warning :
         ldpgraph::BudgetGuard(*graph, budget.eps_a, budget.eps_x)) {
      std::cerr << "warning: " << warning << "\n";
    }
  }
  absl::StatusOr<ldpgraph::ExperimentReport> report =
      ldpgraph::RunExperiment(*graph, spec);
  if (!report.ok()) return Fail(report.status());
  std::cout << ldpgraph::FormatTable(spec.dataset, spec.model, report->cells,
                                     spec.grid);
  return 0;
}

int Rerun(const std::string& dataset, const std::string& results, int line) {
  absl::StatusOr<Graph> graph = Load(dataset, "");
  if (!graph.ok()) return Fail(graph.status());
  std::ifstream in(results);
  if (!in) return Fail(absl::NotFoundError("cannot read " + results));
  std::string text;
  int index = 0;
  int mismatches = 0;
  while (std::getline(in, text)) {
    ++index;
    if (text.empty() || (line > 0 && index != line)) continue;
    nlohmann::json row = nlohmann::json::parse(text, nullptr, false);
    if (row.is_discarded()) {
      return Fail(absl::DataLossError("unparsable row " + std::to_string(index)));
    }
    if (!row.at("test_accuracy").is_number()) {
      std::cout << "row " << index << ": diverged, skipped\n";
      continue;
    }
    absl::StatusOr<ldpgraph::RunResult> result =
        ldpgraph::ReproduceRow(*graph, row);
    if (!result.ok()) return Fail(result.status());
    const double recorded = row.at("test_accuracy").get<double>();
    const bool same = result->test_accuracy == recorded;
    mismatches += !same;
    std::printf("row %d: recorded %.17g reproduced %.17g %s\n", index,
                recorded, result->test_accuracy, same ? "identical" : "DIFFERS");
  }
  return mismatches == 0 ? 0 : 2;
}

int Collect(const std::string& dataset, double eps_x, double eps_a,
            uint64_t seed, const std::string& out) {
  absl::StatusOr<Graph> graph = Load(dataset, "");
  if (!graph.ok()) return Fail(graph.status());
  absl::StatusOr<ldpgraph::PrivacyBudget> budget =
      ldpgraph::PrivacyBudget::Create(eps_a, eps_x);
  if (!budget.ok()) return Fail(budget.status());
  absl::StatusOr<ldpgraph::NoisyGraph> noisy =
      ldpgraph::SimulateCollection(*graph, *budget, seed);
  if (!noisy.ok()) return Fail(noisy.status());
  absl::StatusOr<ldpgraph::DensityReport> density =
      ldpgraph::MakeDensityReport(*graph, *noisy);
  if (!density.ok()) return Fail(density.status());
  std::printf(
      "avg degree %.4f -> %.4f, added %lld, deleted %lld, retained %lld, "
      "expected flips %.1f\n",
      density->original_avg_degree, density->noisy_avg_degree,
      static_cast<long long>(density->added),
      static_cast<long long>(density->deleted),
      static_cast<long long>(density->retained),
      ldpgraph::ExpectedFlipCount(graph->num_nodes, eps_a));
  if (!out.empty()) {
    absl::Status saved = ldpgraph::SaveNoisyGraph(*noisy, *graph, out);
    if (!saved.ok()) return Fail(saved);
  }
  return 0;
}

int Stats(const std::string& dataset) {
  absl::StatusOr<Graph> graph = Load(dataset, "");
  if (!graph.ok()) return Fail(graph.status());
  std::printf(
      "name %s\nnodes %d\narcs %lld\navg degree %.4f\nclasses %d\n"
      "features %d\nfeature range [%g, %g]\nln(n-1) %.4f\n2.18*D %.2f\n",
      graph->name.c_str(), graph->num_nodes,
      static_cast<long long>(graph->num_arcs()),
      ldpgraph::AverageDegree(*graph), graph->num_classes,
      graph->feature_dim(), graph->feature_range.min, graph->feature_range.max,
      std::log(std::max(1, graph->num_nodes - 1)),
      ldpgraph::kSingleDimensionBudget * graph->feature_dim());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Locally private graph learning experiments"};
  app.require_subcommand(1);

  RunFlags run;
  CLI::App* run_cmd = app.add_subcommand("run", "Run an experiment sweep");
  run_cmd->add_option("--dataset", run.dataset, "Dataset directory")
      ->required();
  run_cmd->add_option("--name", run.name, "Dataset name for seeds and reports");
  run_cmd->add_option("--arch", run.arch, "gcn or sage");
  run_cmd->add_option("--eps-x", run.eps_x, "Feature budgets")->delimiter(',');
  run_cmd->add_option("--eps-a", run.eps_a, "Edge budgets")->delimiter(',');
  run_cmd->add_option("--label-rate", run.label_rates, "Label rates")
      ->delimiter(',');
  run_cmd->add_option("--mode", run.modes, "base, smooth-only, solitude")
      ->delimiter(',');
  run_cmd->add_option("--repeats", run.repeats);
  run_cmd->add_option("--seed", run.seed);
  run_cmd->add_option("--lx", run.train.lx);
  run_cmd->add_option("--ly", run.train.ly);
  run_cmd->add_option("--lambda1", run.train.lambda1);
  run_cmd->add_option("--lambda2", run.train.lambda2);
  run_cmd->add_option("--lr", run.train.lr_theta);
  run_cmd->add_option("--lr-adj", run.train.lr_adj);
  run_cmd->add_option("--dropout", run.train.dropout_rate);
  run_cmd->add_option("--weight-decay", run.train.weight_decay);
  run_cmd->add_option("--epochs", run.train.max_epochs);
  run_cmd->add_option("--theta-steps", run.train.theta_steps_per_adj_step,
                      "Model steps per adjacency step");
  run_cmd->add_option("--hidden", run.hidden);
  run_cmd->add_flag("--grid", run.grid, "Per-cell hyperparameter search");
  run_cmd->add_option("--grid-budget", run.grid_budget,
                      "Random subset size for --grid");
  run_cmd->add_option("--sampled-dims", run.sampled_dims,
                      "Override the multi-bit sample size");
  run_cmd->add_option("--normalization", run.normalization, "product or sqrt");
  run_cmd->add_option("--label-graph", run.label_graph, "noisy or calibrated");
  run_cmd->add_flag("--input-dropout", run.input_dropout);
  run_cmd->add_flag("--transpose-aggregation", run.transpose);
  run_cmd->add_option("--out", run.out, "Report directory");
  run_cmd->add_option("--jobs", run.jobs, "Concurrent cells");

  std::string rerun_dataset, rerun_results;
  int rerun_line = 0;
  CLI::App* rerun_cmd =
      app.add_subcommand("rerun", "Re-run results.jsonl rows from snapshots");
  rerun_cmd->add_option("--dataset", rerun_dataset)->required();
  rerun_cmd->add_option("--results", rerun_results)->required();
  rerun_cmd->add_option("--line", rerun_line, "1-based row; 0 for all");

  std::string collect_dataset, collect_out;
  double collect_eps_x = 1.0, collect_eps_a = 7.0;
  uint64_t collect_seed = 0;
  CLI::App* collect_cmd =
      app.add_subcommand("collect", "Simulate one private collection round");
  collect_cmd->add_option("--dataset", collect_dataset)->required();
  collect_cmd->add_option("--eps-x", collect_eps_x);
  collect_cmd->add_option("--eps-a", collect_eps_a);
  collect_cmd->add_option("--seed", collect_seed);
  collect_cmd->add_option("--out", collect_out, "Write the noisy dataset here");

  ldpgraph::SyntheticOptions synth;
  std::string synth_out;
  CLI::App* synth_cmd =
      app.add_subcommand("synth", "Write a synthetic block-model dataset");
  synth_cmd->add_option("--name", synth.name);
  synth_cmd->add_option("--nodes", synth.num_nodes);
  synth_cmd->add_option("--edges", synth.num_edges, "Undirected edges");
  synth_cmd->add_option("--classes", synth.num_classes);
  synth_cmd->add_option("--features", synth.feature_dim);
  synth_cmd->add_option("--homophily", synth.homophily);
  synth_cmd->add_option("--word-in", synth.word_in_class);
  synth_cmd->add_option("--word-off", synth.word_off_class);
  synth_cmd->add_option("--seed", synth.seed);
  synth_cmd->add_option("--out", synth_out)->required();

  std::string stats_dataset;
  CLI::App* stats_cmd = app.add_subcommand("stats", "Print dataset statistics");
  stats_cmd->add_option("--dataset", stats_dataset)->required();

  std::string linqs_content, linqs_cites, linqs_name = "cora", linqs_out;
  CLI::App* linqs_cmd = app.add_subcommand(
      "import-linqs", "Convert a .content/.cites corpus to a dataset directory");
  linqs_cmd->add_option("--content", linqs_content)->required();
  linqs_cmd->add_option("--cites", linqs_cites)->required();
  linqs_cmd->add_option("--name", linqs_name);
  linqs_cmd->add_option("--out", linqs_out)->required();

  CLI11_PARSE(app, argc, argv);

  if (*run_cmd) return Run(run);
  if (*rerun_cmd) return Rerun(rerun_dataset, rerun_results, rerun_line);
  if (*collect_cmd) {
    return Collect(collect_dataset, collect_eps_x, collect_eps_a, collect_seed,
                   collect_out);
  }
  if (*synth_cmd) {
    absl::StatusOr<Graph> graph = ldpgraph::MakeSyntheticGraph(synth);
    if (!graph.ok()) return Fail(graph.status());
    absl::Status saved = ldpgraph::SaveDataset(*graph, synth_out);
    return saved.ok() ? 0 : Fail(saved);
  }
  if (*stats_cmd) return Stats(stats_dataset);
  if (*linqs_cmd) {
    absl::StatusOr<Graph> graph =
        ldpgraph::ImportLinqs(linqs_content, linqs_cites, linqs_name);
    if (!graph.ok()) return Fail(graph.status());
    absl::Status saved = ldpgraph::SaveDataset(*graph, linqs_out);
    return saved.ok() ? 0 : Fail(saved);
  }
  return 0;
}
