#include "hte/experiment_config.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "hte/error.hpp"
#include "hte/synth.hpp"

namespace hte::exp {

using nlohmann::json;

ExperimentKind parse_experiment(const std::string& name) {
  if (name == "ensemble-gap") return ExperimentKind::EnsembleGap;
  if (name == "synth-bench") return ExperimentKind::SynthBench;
  if (name == "param-study") return ExperimentKind::ParamStudy;
  if (name == "rate-study") return ExperimentKind::RateStudy;
  if (name == "real-bench") return ExperimentKind::RealBench;
  throw Error(ErrorKind::Config, fmt::format("unknown experiment '{}'", name));
}

std::string experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::EnsembleGap: return "ensemble-gap";
    case ExperimentKind::SynthBench: return "synth-bench";
    case ExperimentKind::ParamStudy: return "param-study";
    case ExperimentKind::RateStudy: return "rate-study";
    case ExperimentKind::RealBench: return "real-bench";
  }
  return "unknown";
}

ExperimentConfig ExperimentConfig::preset(ExperimentKind kind) {
  ExperimentConfig c;
  c.kind = kind;
  c.m_grid = {1, 3, 10, 20, 40};
  c.stretch_grid = {{0.0, 1.0}, {-0.5, 0.5}, {0.0, 0.5}, {0.5, 1.0}, {-1.0, 1.0}};
  switch (kind) {
    case ExperimentKind::EnsembleGap:
      c.types = {"BetaToy"};
      c.dims = {2};
      c.n_grid = {10, 20, 50, 100, 200, 500, 1000};
      c.n_test = 1000;
      c.methods = {"nhte"};
      c.member_grid = {1, 2, 5, 20};
      c.replications = 50;
      break;
    case ExperimentKind::SynthBench:
      c.types = {"I", "II", "III", "IV"};
      c.dims = {2, 5};
      c.methods = {"nhte", "kde", "ahte"};
      c.replications = 20;
      break;
    case ExperimentKind::ParamStudy:
      c.types = {"I", "II", "III", "IV"};
      c.dims = {2, 5};
      c.methods = {"ahte"};
      c.member_grid = {5, 20, 100};
      c.m_grid = {1, 2, 5, 10, 20, 30};
      c.replications = 3;
      break;
    case ExperimentKind::RateStudy:
      c.types = {"BetaToy"};
      c.dims = {2};
      c.n_grid = {250, 500, 1000, 2000, 4000, 8000, 16000};
      c.n_test = 1000;
      c.methods = {"nhte"};
      c.replications = 20;
      break;
    case ExperimentKind::RealBench:
      c.methods = {"nhte", "kde", "ahte"};
      c.pca_dims = {2};
      c.replications = 5;
      break;
  }
  return c;
}

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "experiment", "types", "dims", "n_grid", "n_train", "n_test", "methods",
      "ahte_members", "nhte_members", "member_grid", "m_grid", "s_min_exp", "s_max_exp",
      "stretch_grid", "validation_fraction", "smoothness_alpha", "csv_path", "delimiter",
      "header", "drop_columns", "correlation_threshold", "normalize", "pca_dims",
      "test_fraction", "export_preprocessed", "replications", "seed", "out_dir", "threads"};
  return keys;
}

template <typename T>
void take(const json& j, const char* key, T& field) {
  if (j.contains(key)) field = j.at(key).get<T>();
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& input, ExperimentKind kind) {
  const json& j = input.contains("config") ? input.at("config") : input;
  if (!j.is_object()) throw Error(ErrorKind::Config, "config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!known_keys().count(key)) {
      throw Error(ErrorKind::Config, fmt::format("unknown config key '{}'", key));
    }
  }
  try {
    if (j.contains("experiment")) kind = parse_experiment(j.at("experiment").get<std::string>());
    ExperimentConfig c = preset(kind);
    take(j, "types", c.types);
    take(j, "dims", c.dims);
    take(j, "n_grid", c.n_grid);
    take(j, "n_train", c.n_train);
    take(j, "n_test", c.n_test);
    take(j, "methods", c.methods);
    take(j, "ahte_members", c.ahte_members);
    take(j, "nhte_members", c.nhte_members);
    take(j, "member_grid", c.member_grid);
    take(j, "m_grid", c.m_grid);
    take(j, "s_min_exp", c.s_min_exp);
    take(j, "s_max_exp", c.s_max_exp);
    take(j, "stretch_grid", c.stretch_grid);
    take(j, "validation_fraction", c.validation_fraction);
    take(j, "smoothness_alpha", c.smoothness_alpha);
    take(j, "csv_path", c.csv_path);
    if (j.contains("delimiter")) {
      const auto d = j.at("delimiter").get<std::string>();
      if (d.size() != 1) throw Error(ErrorKind::Config, "delimiter must be one character");
      c.csv.delimiter = d[0];
    }
    take(j, "header", c.csv.header);
    take(j, "drop_columns", c.csv.drop_columns);
    take(j, "correlation_threshold", c.correlation_threshold);
    take(j, "normalize", c.normalize);
    take(j, "pca_dims", c.pca_dims);
    take(j, "test_fraction", c.test_fraction);
    take(j, "export_preprocessed", c.export_preprocessed);
    take(j, "replications", c.replications);
    take(j, "seed", c.seed);
    take(j, "out_dir", c.out_dir);
    take(j, "threads", c.threads);
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Config, fmt::format("bad config value: {}", e.what()));
  }
}

json ExperimentConfig::to_json() const {
  return {{"experiment", experiment_name(kind)},
          {"types", types},
          {"dims", dims},
          {"n_grid", n_grid},
          {"n_train", n_train},
          {"n_test", n_test},
          {"methods", methods},
          {"ahte_members", ahte_members},
          {"nhte_members", nhte_members},
          {"member_grid", member_grid},
          {"m_grid", m_grid},
          {"s_min_exp", s_min_exp},
          {"s_max_exp", s_max_exp},
          {"stretch_grid", stretch_grid},
          {"validation_fraction", validation_fraction},
          {"smoothness_alpha", smoothness_alpha},
          {"csv_path", csv_path},
          {"delimiter", std::string(1, csv.delimiter)},
          {"header", csv.header},
          {"drop_columns", csv.drop_columns},
          {"correlation_threshold", correlation_threshold},
          {"normalize", normalize},
          {"pca_dims", pca_dims},
          {"test_fraction", test_fraction},
          {"export_preprocessed", export_preprocessed},
          {"replications", replications},
          {"seed", seed},
          {"out_dir", out_dir},
          {"threads", threads}};
}

bool ExperimentConfig::has_method(const std::string& m) const {
  return std::find(methods.begin(), methods.end(), m) != methods.end();
}

void ExperimentConfig::validate() const {
  const auto fail = [](const std::string& msg) { throw Error(ErrorKind::Config, msg); };
  if (replications < 1) fail("replications must be at least 1");
  if (threads < 1) fail("threads must be at least 1");
  if (methods.empty()) fail("at least one method is required");
  for (const auto& m : methods) {
    if (m != "nhte" && m != "ahte" && m != "kde") fail(fmt::format("unknown method '{}'", m));
  }
  if (kind != ExperimentKind::RealBench) {
    if (types.empty() || dims.empty()) fail("types and dims must be non-empty");
    for (const auto& t : types) synth::parse_type(t);
    for (auto d : dims) {
      if (d < 1) fail("dimensions must be positive");
    }
    if (n_test < 1) fail("n_test must be positive");
  }
  const bool sweeps_n =
      kind == ExperimentKind::EnsembleGap || kind == ExperimentKind::RateStudy;
  if (sweeps_n) {
    if (n_grid.empty()) fail("n_grid must be non-empty");
    for (auto n : n_grid) {
      if (n < 2) fail("every n in n_grid must be at least 2");
    }
  } else if (kind != ExperimentKind::RealBench && n_train < 4) {
    fail("n_train must be at least 4");
  }
  if (kind == ExperimentKind::RateStudy && n_grid.size() < 3) {
    fail("rate study needs at least three sample sizes");
  }
  if ((kind == ExperimentKind::EnsembleGap || kind == ExperimentKind::ParamStudy) &&
      (member_grid.empty() ||
       std::any_of(member_grid.begin(), member_grid.end(), [](auto t) { return t < 1; }))) {
    fail("member_grid must hold positive ensemble sizes");
  }
  if (ahte_members < 1 || nhte_members < 1) fail("ensembles need at least one member");
  if (m_grid.empty() || std::any_of(m_grid.begin(), m_grid.end(), [](auto m) { return m < 1; })) {
    fail("m_grid must hold values >= 1");
  }
  if (s_min_exp > s_max_exp) fail("s_min_exp must not exceed s_max_exp");
  if (stretch_grid.empty()) fail("stretch_grid must be non-empty");
  for (const auto& [lo, hi] : stretch_grid) {
    if (lo > hi) fail("stretch_grid pairs need s_min_exp <= s_max_exp");
  }
  if (!(validation_fraction > 0.0 && validation_fraction < 1.0)) {
    fail("validation_fraction must lie in (0, 1)");
  }
  if (!(smoothness_alpha > 0.0 && smoothness_alpha <= 1.0)) {
    fail("smoothness_alpha must lie in (0, 1]");
  }
  if (kind == ExperimentKind::RealBench) {
    if (csv_path.empty()) fail("real-bench needs csv_path");
    if (pca_dims.empty()) fail("pca_dims must be non-empty");
    for (auto k : pca_dims) {
      if (k < 1) fail("pca_dims must be positive");
    }
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) fail("test_fraction must lie in (0, 1)");
    if (!(correlation_threshold > 0.0 && correlation_threshold <= 1.0)) {
      fail("correlation_threshold must lie in (0, 1]");
    }
  }
}

}  // namespace hte::exp
