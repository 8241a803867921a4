#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hte/types.hpp"

namespace hte::metrics {

/// Guard added to every estimated density before taking logs: the spacing of
/// doubles just above 1.
inline constexpr double kAnllEpsilon = std::numeric_limits<double>::epsilon();

struct EvalReport {
  std::optional<double> mae;
  double anll = 0.0;
  std::size_t n_test = 0;
  std::size_t epsilon_hits = 0;
};

/// (1/m) Σ |estimate_j − truth_j|.
double mae(std::span<const double> estimate, std::span<const double> truth);

struct AnllResult {
  double anll;
  std::size_t epsilon_hits;  ///< estimates that were exactly zero
};

/// −(1/m) Σ log(estimate_j + ε).
AnllResult anll(std::span<const double> estimate);

/// MAE is filled in only when a truth vector is supplied.
EvalReport evaluate(std::span<const double> estimate,
                    std::optional<std::span<const double>> truth = {});

inline std::span<const double> as_span(const Vector& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

struct SlopeFit {
  double slope;
  double intercept;
  double slope_stderr;  ///< NaN with fewer than three points
};

/// Ordinary least squares of log(error) on log(n).
SlopeFit fit_log_log(std::span<const std::pair<double, double>> pairs);

/// Slope of fit_log_log; requires at least three pairs with positive errors.
double rate_slope(std::span<const std::pair<double, double>> pairs);

}  // namespace hte::metrics
