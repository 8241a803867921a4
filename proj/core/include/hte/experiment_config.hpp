#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "hte/datapipe.hpp"

namespace hte::exp {

enum class ExperimentKind { EnsembleGap, SynthBench, ParamStudy, RateStudy, RealBench };

ExperimentKind parse_experiment(const std::string& name);
std::string experiment_name(ExperimentKind kind);

/// Fully resolved experiment settings. Every field has a preset value per
/// experiment kind; a JSON config overrides individual fields.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::EnsembleGap;

  std::vector<std::string> types;           // synthetic types: I, II, III, IV, BetaToy
  std::vector<long long> dims;              // synthetic d values
  std::vector<long long> n_grid;            // ensemble-gap / rate-study sample sizes
  long long n_train = 2000;
  long long n_test = 10000;
  std::vector<std::string> methods;         // subset of {nhte, ahte, kde}

  std::size_t ahte_members = 100;
  std::size_t nhte_members = 100;
  std::vector<std::size_t> member_grid;     // ensemble-gap / param-study T values
  std::vector<std::uint64_t> m_grid;        // min_samples_split candidates
  double s_min_exp = 0.0;
  double s_max_exp = 1.0;
  std::vector<std::pair<double, double>> stretch_grid;  // NHTE (s_min_exp, s_max_exp) search
  double validation_fraction = 0.3;

  // Rate study: bandwidth schedules scaled by 3.5σ of the training sample.
  double smoothness_alpha = 1.0;

  // Real-data benchmark.
  std::string csv_path;
  data::CsvOptions csv;
  double correlation_threshold = 0.98;
  bool normalize = true;
  std::vector<long long> pca_dims;
  double test_fraction = 0.3;
  bool export_preprocessed = true;

  std::size_t replications = 1;
  std::uint64_t seed = 0;
  std::string out_dir = "results";
  std::size_t threads = 1;

  static ExperimentConfig preset(ExperimentKind kind);

  /// Overlays `j` on the preset for the experiment it names (or `kind` when
  /// it names none). Accepts either a bare config or a run manifest with a
  /// "config" member. Unknown keys are configuration errors.
  static ExperimentConfig from_json(const nlohmann::json& j, ExperimentKind kind);

  nlohmann::json to_json() const;
  void validate() const;

  bool has_method(const std::string& m) const;
};

}  // namespace hte::exp
