#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "hte/adaptive_estimator.hpp"
#include "hte/grid_estimator.hpp"
#include "hte/rng.hpp"
#include "hte/transform.hpp"

namespace hte {

/// Adaptive tree grown on R·x; queries are rotated before descending.
struct AdaptiveMember {
  RotationMatrix rotation;
  AdaptiveTree tree;
  std::optional<std::uint64_t> seed;

  double evaluate(const Eigen::Ref<const Vector>& x) const;
};

enum class EnsembleKind { Grid, Adaptive };

const char* to_string(EnsembleKind kind) noexcept;

/// Average of T fitted members of a single kind.
class EnsembleModel {
public:
  explicit EnsembleModel(std::vector<GridEstimator> members);
  explicit EnsembleModel(std::vector<AdaptiveMember> members);

  EnsembleKind kind() const noexcept;
  std::size_t size() const noexcept;
  Eigen::Index dim() const noexcept { return dim_; }

  const std::vector<GridEstimator>& grid_members() const;
  const std::vector<AdaptiveMember>& adaptive_members() const;

  double evaluate_member(std::size_t t, const Eigen::Ref<const Vector>& x) const;

  /// (1/T) Σ_t f_t(x).
  double evaluate(const Eigen::Ref<const Vector>& x) const;

  /// Densities for every row of `points`, using only the first `members`
  /// members (all of them by default). Members are independent draws, so a
  /// prefix is itself a valid smaller ensemble.
  Vector evaluate_rows(const Matrix& points, std::optional<std::size_t> members = {}) const;

private:
  std::variant<std::vector<GridEstimator>, std::vector<AdaptiveMember>> members_;
  Eigen::Index dim_ = 0;
};

struct NhteOptions {
  std::size_t members = 20;
  double s_min_exp = 0.0;
  double s_max_exp = 1.0;
  /// Overrides ŝ = reference_scale(data); used for fixed-bandwidth schedules.
  std::optional<double> reference_scale;
  std::size_t threads = 1;
};

struct AhteOptions {
  std::size_t members = 100;
  std::uint64_t min_samples_split = 10;
  /// When false every member uses R = I (plain adaptive histograms).
  bool rotate = true;
  std::size_t threads = 1;
};

/// Member t draws its transform from root.substream(t).
EnsembleModel fit_nhte(const Matrix& data, const NhteOptions& options, const Rng& root);
EnsembleModel fit_ahte(const Matrix& data, const AhteOptions& options, const Rng& root);

}  // namespace hte
