#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hte/experiment_config.hpp"
#include "hte/metrics.hpp"
#include "hte/rng.hpp"
#include "hte/types.hpp"

namespace hte::exp {

/// One (dataset, method, setting, replication) evaluation. The CSV columns
/// are shared by every experiment.
struct RunRow {
  std::string dataset;
  std::string method;
  long long d = 0;
  long long n = 0;
  std::size_t members = 0;             // T; 0 for KDE
  std::optional<std::uint64_t> m;      // min_samples_split, AHTE only
  bool m_selected = false;             // m chosen per replication by validation
  std::uint64_t seed = 0;              // replication seed
  metrics::EvalReport report;
};

struct SummaryRow {
  std::string dataset;
  std::string method;
  long long d = 0;
  long long n = 0;
  std::size_t members = 0;
  std::optional<std::uint64_t> m;
  std::size_t reps = 0;
  double anll_mean = 0.0;
  double anll_std = 0.0;
  std::optional<double> mae_mean;
  std::optional<double> mae_std;
  double epsilon_hits_mean = 0.0;
};

struct ExperimentResult {
  std::vector<RunRow> runs;           // sorted
  std::vector<SummaryRow> summary;    // sorted
  nlohmann::json details = nlohmann::json::object();
};

inline constexpr const char* kRunColumns =
    "dataset,method,d,n,T,m,seed,anll,mae,epsilon_hits";
inline constexpr const char* kSummaryColumns =
    "dataset,method,d,n,T,m,reps,anll_mean,anll_std,mae_mean,mae_std,epsilon_hits_mean";

/// Seed of replication r: root_seed + r.
inline std::uint64_t replication_seed(std::uint64_t root, std::size_t r) { return root + r; }

ExperimentResult run_ensemble_gap(const ExperimentConfig& cfg);
ExperimentResult run_synth_bench(const ExperimentConfig& cfg);
ExperimentResult run_param_study(const ExperimentConfig& cfg);
ExperimentResult run_rate_study(const ExperimentConfig& cfg);
ExperimentResult run_real_bench(const ExperimentConfig& cfg);

/// Dispatches on cfg.kind after validation.
ExperimentResult run(const ExperimentConfig& cfg);

std::vector<SummaryRow> summarize(const std::vector<RunRow>& runs);
std::string runs_csv(const std::vector<RunRow>& runs);
std::string summary_csv(const std::vector<SummaryRow>& rows);

/// Writes runs.csv, summary.csv, details.json and manifest.json to
/// cfg.out_dir. Returns the manifest.
nlohmann::json write_outputs(const ExperimentConfig& cfg, const ExperimentResult& result);

/// run() followed by write_outputs().
ExperimentResult run_and_write(const ExperimentConfig& cfg);

/// Bandwidth schedules of the rate study for a sample of size n in d
/// dimensions with pooled standard deviation sigma.
/// Bin widths and ensemble size for the rate study. Both widths equal
/// 3.5σ·n0^{-1/(2+d)} at the anchor size n0 (the smallest n of the sweep);
/// from there the single width decays as n^{-1/(2+d)} and the ensemble width
/// as (n/log n)^{-1/(2(1+α)+d)}.
struct RateSchedule {
  double single_width;
  double ensemble_width;
  std::size_t ensemble_members;  // ceil(n^{2α/(2(1+α)+d)})
};
RateSchedule rate_schedule(long long n, long long d, double sigma, double alpha, long long anchor_n);

}  // namespace hte::exp
