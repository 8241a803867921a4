#include "hte/metrics.hpp"

#include <cmath>

#include <fmt/format.h>

#include "hte/error.hpp"

namespace hte::metrics {

double mae(std::span<const double> estimate, std::span<const double> truth) {
  if (estimate.size() != truth.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                fmt::format("{} estimates but {} truth values", estimate.size(), truth.size()));
  }
  if (estimate.empty()) throw Error(ErrorKind::InsufficientData, "MAE over no test points");
  double sum = 0.0;
  for (std::size_t j = 0; j < estimate.size(); ++j) sum += std::abs(estimate[j] - truth[j]);
  return sum / static_cast<double>(estimate.size());
}

AnllResult anll(std::span<const double> estimate) {
  if (estimate.empty()) throw Error(ErrorKind::InsufficientData, "ANLL over no test points");
  double sum = 0.0;
  std::size_t hits = 0;
  for (double f : estimate) {
    if (!(f >= 0.0)) throw Error(ErrorKind::InvalidInput, "density estimates must be >= 0");
    if (f == 0.0) ++hits;
    sum += std::log(f + kAnllEpsilon);
  }
  return {-sum / static_cast<double>(estimate.size()), hits};
}

EvalReport evaluate(std::span<const double> estimate,
                    std::optional<std::span<const double>> truth) {
  const auto [value, hits] = anll(estimate);
  EvalReport report;
  report.anll = value;
  report.epsilon_hits = hits;
  report.n_test = estimate.size();
  if (truth) report.mae = mae(estimate, *truth);
  return report;
}

SlopeFit fit_log_log(std::span<const std::pair<double, double>> pairs) {
  if (pairs.size() < 2) {
    throw Error(ErrorKind::InsufficientData, "slope fit needs at least two points");
  }
  const auto k = static_cast<double>(pairs.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [n, err] : pairs) {
    if (!(n > 0.0) || !(err > 0.0)) {
      throw Error(ErrorKind::InvalidInput, "slope fit needs positive n and error");
    }
    mx += std::log(n);
    my += std::log(err);
  }
  mx /= k;
  my /= k;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [n, err] : pairs) {
    const double dx = std::log(n) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(err) - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorKind::DegenerateData, "slope fit needs distinct n values");
  SlopeFit fit{sxy / sxx, 0.0, std::numeric_limits<double>::quiet_NaN()};
  fit.intercept = my - fit.slope * mx;
  if (pairs.size() > 2) {
    double sse = 0.0;
    for (const auto& [n, err] : pairs) {
      const double r = std::log(err) - fit.intercept - fit.slope * std::log(n);
      sse += r * r;
    }
    fit.slope_stderr = std::sqrt(sse / (k - 2.0) / sxx);
  }
  return fit;
}

double rate_slope(std::span<const std::pair<double, double>> pairs) {
  if (pairs.size() < 3) {
    throw Error(ErrorKind::InsufficientData, "rate slope needs at least three points");
  }
  return fit_log_log(pairs).slope;
}

}  // namespace hte::metrics
