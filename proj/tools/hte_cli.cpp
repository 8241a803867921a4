// Command-line driver for the experiment harness and for fitting/scoring models.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "hte/datapipe.hpp"
#include "hte/ensemble.hpp"
#include "hte/error.hpp"
#include "hte/experiment_config.hpp"
#include "hte/experiments.hpp"
#include "hte/kde.hpp"
#include "hte/model.hpp"
#include "hte/serialize.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::size_t> threads;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "JSON config or a previous run's manifest.json");
  cmd->add_option("--seed", f.seed, "root seed");
  cmd->add_option("--out-dir", f.out_dir, "output directory");
  cmd->add_option("--threads", f.threads, "worker threads");
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw hte::Error(hte::ErrorKind::Config, fmt::format("cannot open config '{}'", path));
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw hte::Error(hte::ErrorKind::Config, fmt::format("{}: {}", path, e.what()));
  }
}

hte::exp::ExperimentConfig resolve(hte::exp::ExperimentKind kind, const CommonFlags& f) {
  auto cfg = f.config.empty() ? hte::exp::ExperimentConfig::preset(kind)
                              : hte::exp::ExperimentConfig::from_json(read_json(f.config), kind);
  if (cfg.kind != kind) {
    throw hte::Error(hte::ErrorKind::Config,
                     fmt::format("config is for '{}', not '{}'", hte::exp::experiment_name(cfg.kind),
                                 hte::exp::experiment_name(kind)));
  }
  if (f.seed) cfg.seed = *f.seed;
  if (f.out_dir) cfg.out_dir = *f.out_dir;
  if (f.threads) cfg.threads = *f.threads;
  cfg.validate();
  return cfg;
}

struct FitFlags {
  std::string data;
  std::string method = "ahte";
  std::size_t members = 100;
  std::uint64_t m = 10;
  double s_min = 0.0;
  double s_max = 1.0;
  std::string out;
  bool no_header = false;
};

int run_fit(const FitFlags& f, const CommonFlags& common) {
  hte::data::CsvOptions opts;
  opts.header = !f.no_header;
  const auto ds = hte::data::load_csv(f.data, opts);
  const hte::Rng rng(common.seed.value_or(0));
  const std::size_t threads = common.threads.value_or(1);
  std::optional<hte::DensityModel> model;
  if (f.method == "nhte") {
    model = hte::fit_nhte(ds.rows, {f.members, f.s_min, f.s_max, {}, threads}, rng);
  } else if (f.method == "ahte") {
    model = hte::fit_ahte(ds.rows, {f.members, f.m, true, threads}, rng);
  } else if (f.method == "kde") {
    model = hte::fit_kde(ds.rows);
  } else {
    throw hte::Error(hte::ErrorKind::Config, fmt::format("unknown method '{}'", f.method));
  }
  hte::io::save_model(*model, f.out);
  fmt::print("wrote {} model (d={}, n={}) to {}\n", f.method, ds.dim(), ds.size(), f.out);
  return kExitOk;
}

struct ScoreFlags {
  std::string model;
  std::string data;
  std::string out;
  bool no_header = false;
};

int run_score(const ScoreFlags& f) {
  const auto model = hte::io::load_model(f.model);
  hte::data::CsvOptions opts;
  opts.header = !f.no_header;
  const auto ds = hte::data::load_csv(f.data, opts);
  if (ds.dim() != hte::model_dim(model)) {
    throw hte::Error(hte::ErrorKind::DimensionMismatch,
                     fmt::format("model has d={} but '{}' has {} columns", hte::model_dim(model),
                                 f.data, ds.dim()));
  }
  const hte::Vector density = hte::evaluate_rows(model, ds.rows);
  std::ofstream out(f.out, std::ios::binary);
  if (!out) throw hte::Error(hte::ErrorKind::Io, fmt::format("cannot write '{}'", f.out));
  out << "row,density\n";
  for (Eigen::Index i = 0; i < density.size(); ++i) out << fmt::format("{},{:.17g}\n", i, density(i));
  return kExitOk;
}

int run_experiment(hte::exp::ExperimentKind kind, const CommonFlags& f) {
  const auto cfg = resolve(kind, f);
  const auto result = hte::exp::run_and_write(cfg);
  fmt::print("{}: {} runs, {} summary rows written to {}\n", hte::exp::experiment_name(kind),
             result.runs.size(), result.summary.size(), cfg.out_dir);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Histogram transform ensembles: density estimation experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", HTE_VERSION);

  CommonFlags common;
  const std::pair<const char*, hte::exp::ExperimentKind> experiments[] = {
      {"ensemble-gap", hte::exp::ExperimentKind::EnsembleGap},
      {"synth-bench", hte::exp::ExperimentKind::SynthBench},
      {"param-study", hte::exp::ExperimentKind::ParamStudy},
      {"rate-study", hte::exp::ExperimentKind::RateStudy},
      {"real-bench", hte::exp::ExperimentKind::RealBench},
  };
  std::vector<std::pair<CLI::App*, hte::exp::ExperimentKind>> experiment_cmds;
  for (const auto& [name, kind] : experiments) {
    auto* cmd = app.add_subcommand(name, fmt::format("run the {} experiment", name));
    add_common(cmd, common);
    experiment_cmds.emplace_back(cmd, kind);
  }

  FitFlags fit;
  auto* fit_cmd = app.add_subcommand("fit", "fit a density model to a CSV file");
  add_common(fit_cmd, common);
  fit_cmd->add_option("--data", fit.data, "training CSV")->required();
  fit_cmd->add_option("--method", fit.method, "nhte, ahte or kde")
      ->check(CLI::IsMember({"nhte", "ahte", "kde"}));
  fit_cmd->add_option("--T", fit.members, "ensemble size");
  fit_cmd->add_option("--m", fit.m, "AHTE min_samples_split");
  fit_cmd->add_option("--s-min", fit.s_min, "NHTE lower log-stretch offset");
  fit_cmd->add_option("--s-max", fit.s_max, "NHTE upper log-stretch offset");
  fit_cmd->add_option("--out", fit.out, "model JSON path")->required();
  fit_cmd->add_flag("--no-header", fit.no_header, "CSV has no header row");

  ScoreFlags score;
  auto* score_cmd = app.add_subcommand("score", "evaluate a saved model at CSV query points");
  score_cmd->add_option("--model", score.model, "model JSON path")->required();
  score_cmd->add_option("--data", score.data, "query CSV")->required();
  score_cmd->add_option("--out", score.out, "output CSV path")->required();
  score_cmd->add_flag("--no-header", score.no_header, "CSV has no header row");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    for (const auto& [cmd, kind] : experiment_cmds) {
      if (cmd->parsed()) return run_experiment(kind, common);
    }
    if (fit_cmd->parsed()) return run_fit(fit, common);
    if (score_cmd->parsed()) return run_score(score);
  } catch (const hte::Error& e) {
    fmt::print(stderr, "error [{}]: {}\n", hte::to_string(e.kind()), e.what());
    return e.is_config_error() ? kExitConfig : kExitData;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitData;
  }
  return kExitConfig;
}
