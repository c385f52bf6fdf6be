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

#include "ldpgraph/experiment.h"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "ldpgraph/random.h"
#include "ldpgraph/status_macros.h"

namespace ldpgraph {
namespace {

struct Job {
  BudgetPair budget;
  double label_rate = 0;
  int repeat = 0;
};

uint64_t Tagged(uint64_t seed, StreamTag tag) {
  return DeriveSeed(seed, {static_cast<uint64_t>(tag)});
}

// Serializes result lines so each one lands whole.
class Appender {
 public:
  absl::Status Open(const std::filesystem::path& path) {
    file_.open(path, std::ios::trunc);
    if (!file_) {
      return absl::InternalError(absl::StrCat("cannot write ", path.string()));
    }
    return absl::OkStatus();
  }

  void Append(const nlohmann::json& row) {
    std::lock_guard<std::mutex> lock(mu_);
    if (file_.is_open()) {
      file_ << row.dump() << '\n';
      file_.flush();
    }
  }

 private:
  std::mutex mu_;
  std::ofstream file_;
};

struct JobOutput {
  std::vector<nlohmann::json> rows;
  nlohmann::json noise;
  absl::Status status;
};

absl::StatusOr<NoisyGraph> Collect(const Graph& graph, double eps_x,
                                   double eps_a,
                                   std::optional<int> sampled_dims,
                                   uint64_t seed) {
  ASSIGN_OR_RETURN(PrivacyBudget budget, PrivacyBudget::Create(eps_a, eps_x));
  CollectionOptions options;
  options.sampled_dims = sampled_dims;
  return SimulateCollection(graph, budget, seed, options);
}

JobOutput RunJob(const Graph& graph, const ExperimentSpec& spec,
                 const std::string& dataset, const Job& job,
                 Appender& appender) {
  JobOutput output;
  const uint64_t cell_seed =
      CellSeed(spec.seed, dataset, job.budget.eps_x, job.budget.eps_a,
               job.label_rate, job.repeat);
  const uint64_t collection_seed = Tagged(cell_seed, StreamTag::kCollection);
  const uint64_t split_seed = Tagged(cell_seed, StreamTag::kSplit);
  const uint64_t train_seed = Tagged(cell_seed, StreamTag::kTraining);

  absl::StatusOr<NoisyGraph> noisy =
      Collect(graph, job.budget.eps_x, job.budget.eps_a, spec.sampled_dims,
              collection_seed);
  if (!noisy.ok()) {
    output.status = noisy.status();
    return output;
  }
  Rng split_rng(split_seed);
  absl::StatusOr<SplitAssignment> split =
      MakeSplit(graph, spec.fractions, job.label_rate, split_rng);
  if (!split.ok()) {
    output.status = split.status();
    return output;
  }
  absl::StatusOr<DensityReport> density = MakeDensityReport(graph, *noisy);
  if (!density.ok()) {
    output.status = density.status();
    return output;
  }
  output.noise = {
      {"eps_x", job.budget.eps_x},
      {"eps_a", job.budget.eps_a},
      {"label_rate", job.label_rate},
      {"repeat", job.repeat},
      {"collection_seed", collection_seed},
      {"sampled_dims", noisy->feature_config.sampled_dims()},
      {"original_avg_degree", density->original_avg_degree},
      {"noisy_avg_degree", density->noisy_avg_degree},
      {"added", density->added},
      {"deleted", density->deleted},
      {"retained", density->retained},
  };

  for (TrainingMode mode : spec.modes) {
    TrainConfig base = WithMode(spec.train, mode);
    base.seed = train_seed;
    nlohmann::json row = {
        {"dataset", dataset},
        {"mode", std::string(TrainingModeName(mode))},
        {"eps_x", job.budget.eps_x},
        {"eps_a", job.budget.eps_a},
        {"label_rate", job.label_rate},
        {"repeat", job.repeat},
        {"root_seed", spec.seed},
        {"cell_seed", cell_seed},
        {"collection_seed", collection_seed},
        {"split_seed", split_seed},
        {"fractions", {spec.fractions.train, spec.fractions.val,
                       spec.fractions.test}},
        {"sampled_dims", noisy->feature_config.sampled_dims()},
        {"model", ModelConfigToJson(spec.model)},
        {"selection", spec.grid ? "grid" : "fixed"},
    };
    absl::StatusOr<RunResult> result;
    TrainConfig chosen = base;
    if (spec.grid) {
      GridSearchOptions options;
      options.budget = spec.grid_budget;
      options.seed = train_seed;
      const HyperparameterGrid grid =
          spec.grid_values.value_or(HyperparameterGrid::Full(base));
      absl::StatusOr<GridSearchResult> search = GridSearch(
          *noisy, graph.labels, *split, spec.model, base, mode, grid, options);
      if (search.ok()) {
        chosen = search->best_config;
        row["grid_evaluated"] = search->evaluated;
        row["grid_diverged"] = search->diverged;
        result = std::move(search->best_result);
      } else {
        result = search.status();
      }
    } else {
      result = Train(*noisy, graph.labels, *split, spec.model, base);
    }
    row["train"] = TrainConfigToJson(chosen);
    if (result.ok()) {
      row["diverged"] = false;
      row["test_accuracy"] = result->test_accuracy;
      row["best_val_accuracy"] = result->best_val_accuracy;
      row["best_epoch"] = result->best_epoch;
      row["epochs_run"] = result->val_trace.size();
      row["adjacency_l1"] = result->adjacency_l1;
      row["noisy_adjacency_l1"] = result->noisy_adjacency_l1;
      row["wall_seconds"] = result->wall_seconds;
    } else if (IsDivergence(result.status()) ||
               absl::IsAborted(result.status())) {
      row["diverged"] = true;
      row["test_accuracy"] = nullptr;
      row["error"] = std::string(result.status().message());
    } else {
      output.status = result.status();
      return output;
    }
    appender.Append(row);
    output.rows.push_back(std::move(row));
  }
  return output;
}

std::string Percent(double fraction) {
  return absl::StrFormat("%.1f", 100.0 * fraction);
}

}  // namespace

uint64_t CellSeed(uint64_t root, std::string_view dataset, double eps_x,
                  double eps_a, double label_rate, int repeat) {
  return DeriveSeed(root, {HashString(dataset), HashDouble(eps_x),
                           HashDouble(eps_a), HashDouble(label_rate),
                           static_cast<uint64_t>(repeat)});
}

std::vector<std::string> BudgetGuard(const Graph& graph, double eps_a,
                                     double eps_x) {
  std::vector<std::string> warnings;
  if (graph.num_nodes > 1) {
    const double limit = std::log(static_cast<double>(graph.num_nodes - 1));
    if (eps_a > limit) {
      warnings.push_back(absl::StrFormat(
          "eps_a=%g exceeds ln(n-1)=%.3f for %s: fewer than one expected "
          "flip per node",
          eps_a, limit, graph.name));
    }
  }
  const double capacity = kSingleDimensionBudget * graph.feature_dim();
  if (eps_x > capacity) {
    warnings.push_back(absl::StrFormat(
        "eps_x=%g exceeds 2.18 * D = %g for %s: extra budget buys no more "
        "sampled dimensions",
        eps_x, capacity, graph.name));
  }
  return warnings;
}

nlohmann::json ModelConfigToJson(const ModelConfig& config) {
  return {
      {"architecture", std::string(ArchitectureName(config.architecture))},
      {"input_dim", config.input_dim},
      {"hidden_dim", config.hidden_dim},
      {"num_classes", config.num_classes},
      {"dropout_rate", config.dropout_rate},
      {"input_dropout", config.input_dropout},
      {"transpose_aggregation", config.transpose_aggregation},
  };
}

absl::StatusOr<ModelConfig> ModelConfigFromJson(const nlohmann::json& json) {
  ModelConfig config;
  try {
    ASSIGN_OR_RETURN(
        config.architecture,
        ParseArchitecture(json.at("architecture").get<std::string>()));
    config.input_dim = json.at("input_dim").get<int>();
    config.hidden_dim = json.at("hidden_dim").get<int>();
    config.num_classes = json.at("num_classes").get<int>();
    config.dropout_rate = json.at("dropout_rate").get<double>();
    config.input_dropout = json.value("input_dropout", false);
    config.transpose_aggregation = json.value("transpose_aggregation", false);
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("bad model config: ", e.what()));
  }
  return config;
}

std::vector<CellSummary> SummarizeRows(
    const std::vector<nlohmann::json>& rows) {
  using Key = std::tuple<double, double, double, std::string>;
  std::map<Key, size_t> index;
  std::vector<CellSummary> cells;
  std::vector<std::vector<double>> values;
  for (const nlohmann::json& row : rows) {
    const std::string mode = row.at("mode").get<std::string>();
    const Key key{row.at("label_rate").get<double>(),
                  row.at("eps_x").get<double>(), row.at("eps_a").get<double>(),
                  mode};
    auto [it, inserted] = index.try_emplace(key, cells.size());
    if (inserted) {
      CellSummary cell;
      cell.label_rate = std::get<0>(key);
      cell.eps_x = std::get<1>(key);
      cell.eps_a = std::get<2>(key);
      cell.mode = ParseTrainingMode(mode).value_or(TrainingMode::kSolitude);
      cells.push_back(cell);
      values.emplace_back();
    }
    const nlohmann::json& accuracy = row.at("test_accuracy");
    if (accuracy.is_number()) {
      values[it->second].push_back(accuracy.get<double>());
    } else {
      ++cells[it->second].diverged;
    }
  }
  for (size_t c = 0; c < cells.size(); ++c) {
    const std::vector<double>& v = values[c];
    CellSummary& cell = cells[c];
    cell.runs = static_cast<int>(v.size());
    if (v.empty()) {
      cell.mean = std::nan("");
      cell.stddev = std::nan("");
      continue;
    }
    double sum = 0;
    for (double x : v) sum += x;
    cell.mean = sum / v.size();
    if (v.size() < 2) {
      cell.stddev = std::nan("");
      continue;
    }
    double ss = 0;
    for (double x : v) ss += (x - cell.mean) * (x - cell.mean);
    cell.stddev = std::sqrt(ss / (v.size() - 1));
  }
  return cells;
}

std::string FormatTable(const std::string& dataset, const ModelConfig& model,
                        const std::vector<CellSummary>& cells, bool grid) {
  std::string out = absl::StrCat("# ", dataset, " / ",
                                 ArchitectureName(model.architecture), "\n\n");
  // Sections keyed by (label rate, eps_x), in first-seen order.
  std::vector<std::pair<double, double>> sections;
  for (const CellSummary& cell : cells) {
    const std::pair<double, double> key{cell.label_rate, cell.eps_x};
    if (std::find(sections.begin(), sections.end(), key) == sections.end()) {
      sections.push_back(key);
    }
  }
  int footnotes = 0;
  std::string notes;
  for (const auto& [rate, eps_x] : sections) {
    std::vector<double> columns;
    std::vector<TrainingMode> modes;
    for (const CellSummary& cell : cells) {
      if (cell.label_rate != rate || cell.eps_x != eps_x) continue;
      if (std::find(columns.begin(), columns.end(), cell.eps_a) ==
          columns.end()) {
        columns.push_back(cell.eps_a);
      }
      if (std::find(modes.begin(), modes.end(), cell.mode) == modes.end()) {
        modes.push_back(cell.mode);
      }
    }
    absl::StrAppendFormat(&out, "## label rate %g, eps_x = %g\n\n| Mode |",
                          rate, eps_x);
    for (double eps_a : columns) absl::StrAppendFormat(&out, " eps_a=%g |", eps_a);
    out += "\n|---|";
    for (size_t i = 0; i < columns.size(); ++i) out += "---|";
    out += "\n";
    for (TrainingMode mode : modes) {
      absl::StrAppend(&out, "| ", TrainingModeName(mode), " |");
      for (double eps_a : columns) {
        auto it = std::find_if(cells.begin(), cells.end(),
                               [&](const CellSummary& c) {
                                 return c.label_rate == rate &&
                                        c.eps_x == eps_x && c.eps_a == eps_a &&
                                        c.mode == mode;
                               });
        if (it == cells.end()) {
          out += " |";
          continue;
        }
        std::string text = "n/a";
        if (it->runs > 0) {
          text = Percent(it->mean);
          if (!std::isnan(it->stddev)) {
            absl::StrAppend(&text, " ± ", Percent(it->stddev));
          }
        }
        if (it->diverged > 0) {
          ++footnotes;
          absl::StrAppend(&text, " [", footnotes, "]");
          absl::StrAppendFormat(&notes,
                                "[%d] %d of %d runs diverged and are excluded "
                                "from the mean.\n",
                                footnotes, it->diverged,
                                it->diverged + it->runs);
        }
        absl::StrAppend(&out, " ", text, " |");
      }
      out += "\n";
    }
    out += "\n";
  }
  out += notes;
  if (!notes.empty()) out += "\n";
  absl::StrAppend(&out, "Test accuracy in percent, mean ± sample std over ",
                  "repeats. Hyperparameters: ",
                  grid ? "per-cell grid search, selected on validation accuracy"
                       : "one fixed configuration for every cell",
                  ".\n");
  return out;
}

absl::StatusOr<ExperimentReport> RunExperiment(const Graph& graph,
                                               const ExperimentSpec& spec) {
  if (spec.budgets.empty() || spec.label_rates.empty() || spec.modes.empty()) {
    return absl::InvalidArgumentError(
        "need at least one budget pair, label rate and mode");
  }
  if (spec.repeats < 1 || spec.jobs < 1) {
    return absl::InvalidArgumentError("repeats and jobs must be positive");
  }
  RETURN_IF_ERROR(ValidateTrainConfig(spec.train));
  const std::string dataset = spec.dataset.empty() ? graph.name : spec.dataset;

  ExperimentSpec resolved = spec;
  resolved.model.input_dim = graph.feature_dim();
  resolved.model.num_classes = graph.num_classes;
  resolved.model.dropout_rate = spec.train.dropout_rate;
  RETURN_IF_ERROR(ValidateModelConfig(resolved.model));

  ExperimentReport report;
  for (const BudgetPair& budget : spec.budgets) {
    for (std::string& warning : BudgetGuard(graph, budget.eps_a, budget.eps_x)) {
      report.warnings.push_back(std::move(warning));
    }
  }

  std::vector<Job> jobs;
  for (double rate : spec.label_rates) {
    for (const BudgetPair& budget : spec.budgets) {
      for (int r = 0; r < spec.repeats; ++r) jobs.push_back({budget, rate, r});
    }
  }

  Appender appender;
  if (!spec.out.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(spec.out, ec);
    if (ec) {
      return absl::InternalError(
          absl::StrCat("cannot create ", spec.out.string(), ": ", ec.message()));
    }
    RETURN_IF_ERROR(appender.Open(spec.out / "results.jsonl"));
  }

  std::vector<JobOutput> outputs(jobs.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t j = next++; j < jobs.size(); j = next++) {
      outputs[j] = RunJob(graph, resolved, dataset, jobs[j], appender);
    }
  };
  const int workers =
      std::min<int>(spec.jobs, static_cast<int>(jobs.size()));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  nlohmann::json noise = nlohmann::json::array();
  for (JobOutput& output : outputs) {
    RETURN_IF_ERROR(output.status);
    for (nlohmann::json& row : output.rows) report.rows.push_back(std::move(row));
    noise.push_back(std::move(output.noise));
  }
  report.cells = SummarizeRows(report.rows);

  if (!spec.out.empty()) {
    std::ofstream table(spec.out / "table.md", std::ios::trunc);
    table << FormatTable(dataset, resolved.model, report.cells, spec.grid);
    std::ofstream meta(spec.out / "noise_meta.json", std::ios::trunc);
    meta << nlohmann::json{{"dataset", dataset},
                           {"root_seed", spec.seed},
                           {"collections", noise}}
                .dump(2)
         << '\n';
    if (!table || !meta) {
      return absl::InternalError("failed writing experiment reports");
    }
  }
  return report;
}

absl::StatusOr<RunResult> ReproduceRow(const Graph& graph,
                                       const nlohmann::json& row) {
  try {
    ASSIGN_OR_RETURN(ModelConfig model, ModelConfigFromJson(row.at("model")));
    ASSIGN_OR_RETURN(TrainConfig train, TrainConfigFromJson(row.at("train")));
    const std::vector<double> fractions =
        row.at("fractions").get<std::vector<double>>();
    if (fractions.size() != 3) {
      return absl::InvalidArgumentError("fractions needs three entries");
    }
    ASSIGN_OR_RETURN(
        NoisyGraph noisy,
        Collect(graph, row.at("eps_x").get<double>(),
                row.at("eps_a").get<double>(), row.at("sampled_dims").get<int>(),
                row.at("collection_seed").get<uint64_t>()));
    Rng split_rng(row.at("split_seed").get<uint64_t>());
    ASSIGN_OR_RETURN(
        SplitAssignment split,
        MakeSplit(graph, {fractions[0], fractions[1], fractions[2]},
                  row.at("label_rate").get<double>(), split_rng));
    return Train(noisy, graph.labels, split, model, train);
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("bad result row: ", e.what()));
  }
}

}  // namespace ldpgraph
