#pragma once

// Independent reference computations used by unit and acceptance tests.
// Nothing here calls into the code paths it is meant to check.

#include <cstdint>
#include <functional>
#include <vector>

#include "hte/adaptive_estimator.hpp"
#include "hte/ensemble.hpp"
#include "hte/grid_estimator.hpp"
#include "hte/rng.hpp"
#include "hte/synth.hpp"
#include "hte/types.hpp"

namespace hte::oracle {

/// One-sample Kolmogorov-Smirnov statistic of `sample` against `cdf`.
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);

/// Asymptotic KS critical value sqrt(-ln(alpha/2)/2) / sqrt(n).
double ks_critical(std::size_t n, double alpha);

/// Pearson statistic of observed bin counts against equal expected counts.
double chi_square_uniform(const std::vector<std::size_t>& counts);

/// Upper-tail critical value of the chi-square distribution.
double chi_square_critical(double dof, double alpha);

/// CDF of a primitive, computed from closed forms (Beta via the regularized
/// incomplete beta function).
double primitive_cdf(const synth::Primitive& p, double x);
double mixture_cdf(const synth::Mixture& m, double x);

/// Type-7 quantile written from its 1-based textbook definition.
double quantile_type7(std::vector<double> values, double p);

/// Bin key of x under t, recomputed with explicit loops.
std::vector<long long> direct_bin_key(const HistogramTransform& t, const Vector& x);

/// Number of rows of `data` whose direct bin key equals `key`.
std::uint64_t direct_cell_count(const HistogramTransform& t, const Matrix& data,
                                const std::vector<long long>& key);

/// Number of rows of `points` inside the half-open box.
std::uint64_t points_in_box(const Matrix& points, const Vector& lo, const Vector& hi);

/// Exact integral of a 1-D piecewise-constant function: evaluates `f` at the
/// midpoint of every interval between sorted breakpoints and sums.
double integrate_piecewise_1d(std::vector<double> breakpoints,
                              const std::function<double(double)>& f);

/// Integral of a grid estimator obtained by evaluating it at the preimage of
/// every lattice cell centre in the bounding range of the training data's
/// transformed keys (empty cells included).
double grid_lattice_quadrature(const GridEstimator& e, const Matrix& data);

/// Exact integral of a tree over its root box using the product grid of all
/// split values. Practical for d <= 2.
double tree_breakpoint_quadrature(const AdaptiveTree& tree);

/// Midpoint rule on [a, b] with `steps` intervals.
double midpoint_1d(const std::function<double(double)>& f, double a, double b, std::size_t steps);

/// Random data set for property tests: mixes of Gaussian, uniform and
/// heavily duplicated columns.
Matrix random_dataset(Eigen::Index n, Eigen::Index d, Rng& rng);

}  // namespace hte::oracle
