#pragma once

#include "hte/types.hpp"

namespace hte {

/// Gaussian kernel density estimate with Scott's-rule bandwidth.
///
/// The kernel covariance is factor²·Σ̂ where Σ̂ is the unbiased sample
/// covariance and factor = n^{-1/(d+4)}.
class KdeModel {
public:
  const Matrix& points() const noexcept { return points_; }
  double bandwidth_factor() const noexcept { return factor_; }
  const Matrix& covariance() const noexcept { return covariance_; }
  /// ((2π)^d · det(factor²·Σ̂))^{-1/2}
  double normalizer() const noexcept { return normalizer_; }
  Eigen::Index dim() const noexcept { return points_.cols(); }

  double evaluate(const Eigen::Ref<const Vector>& x) const;
  Vector evaluate_rows(const Matrix& queries) const;

  friend KdeModel fit_kde(const Matrix& data);

private:
  KdeModel() = default;
  Vector whiten(const Eigen::Ref<const Vector>& x) const;

  Matrix points_;
  double factor_ = 1.0;
  Matrix covariance_;
  Vector center_;
  Matrix chol_lower_;  // Cholesky factor of factor²·Σ̂
  Matrix whitened_;    // one whitened training point per column
  double normalizer_ = 0.0;
};

KdeModel fit_kde(const Matrix& data);

}  // namespace hte
