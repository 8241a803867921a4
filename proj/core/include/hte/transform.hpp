#pragma once

#include <cstdint>
#include <optional>

#include "hte/rng.hpp"
#include "hte/types.hpp"

namespace hte {

/// Proper rotation: RᵀR = I and det R = +1 (checked to 1e-10 on construction).
class RotationMatrix {
public:
  static RotationMatrix identity(Eigen::Index dim);
  static RotationMatrix from_matrix(Matrix entries);

  const Matrix& matrix() const noexcept { return entries_; }
  Eigen::Index dim() const noexcept { return entries_.rows(); }

private:
  explicit RotationMatrix(Matrix entries) : entries_(std::move(entries)) {}
  Matrix entries_;
};

/// Per-dimension scales s and the matching input-space bin widths h = 1/s.
struct StretchVector {
  Vector scale;
  Vector width;

  static StretchVector from_scale(const Vector& scale);
};

/// Jeffreys-prior stretch range: log s_i ~ U[s_min_exp + log ŝ, s_max_exp + log ŝ].
struct StretchConfig {
  double s_min_exp = 0.0;
  double s_max_exp = 1.0;
  double reference_scale = 1.0;

  void validate() const;
};

/// H(x) = R·S·x + b together with the unit lattice it induces.
class HistogramTransform {
public:
  HistogramTransform(RotationMatrix rotation, StretchVector stretch,
                     Vector translation, std::optional<std::uint64_t> seed = {});

  /// R = I, s = 1, b = 0.
  static HistogramTransform identity(Eigen::Index dim);

  Eigen::Index dim() const noexcept { return rotation_.dim(); }
  const RotationMatrix& rotation() const noexcept { return rotation_; }
  const StretchVector& stretch() const noexcept { return stretch_; }
  const Vector& translation() const noexcept { return translation_; }
  std::optional<std::uint64_t> seed() const noexcept { return seed_; }

  /// R·(s ⊙ x) + b.
  Vector apply(const Eigen::Ref<const Vector>& x) const;
  /// S⁻¹·Rᵀ·(y − b).
  Vector invert(const Eigen::Ref<const Vector>& y) const;
  /// ⌊H(x)⌋ componentwise; cells are half-open [k, k+1).
  IndexVector bin_index(const Eigen::Ref<const Vector>& x) const;
  /// ∏ h_i, the input-space volume of every cell.
  double cell_volume() const noexcept { return volume_; }

private:
  RotationMatrix rotation_;
  StretchVector stretch_;
  Vector translation_;
  std::optional<std::uint64_t> seed_;
  double volume_;
};

/// Haar-uniform rotation from the QR factorization of a Gaussian matrix.
RotationMatrix sample_rotation(Eigen::Index dim, Rng& rng);

/// ŝ = (3.5σ)⁻¹·n^{1/(2+d)} with σ = sqrt(trace(V)/d), V the unbiased covariance.
double reference_scale(const Matrix& data);

StretchVector sample_stretch(Eigen::Index dim, const StretchConfig& cfg, Rng& rng);

/// d independent Uniform[0, 1) components.
Vector sample_translation(Eigen::Index dim, Rng& rng);

/// Rotation, stretch and translation drawn in that order from `rng`.
HistogramTransform sample_transform(Eigen::Index dim, const StretchConfig& cfg,
                                    Rng& rng);

}  // namespace hte
