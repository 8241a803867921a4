#include "hte/transform.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "hte/error.hpp"
#include "hte/stats.hpp"

namespace hte {

namespace {

constexpr double kRotationTolerance = 1e-10;

void require_dim(Eigen::Index dim) {
  if (dim < 1) {
    throw Error(ErrorKind::InvalidDimension,
                fmt::format("dimension must be at least 1, got {}", dim));
  }
}

}  // namespace

RotationMatrix RotationMatrix::identity(Eigen::Index dim) {
  require_dim(dim);
  return RotationMatrix(Matrix::Identity(dim, dim));
}

RotationMatrix RotationMatrix::from_matrix(Matrix entries) {
  if (entries.rows() < 1 || entries.rows() != entries.cols()) {
    throw Error(ErrorKind::InvalidDimension, "rotation must be a non-empty square matrix");
  }
  const Eigen::Index d = entries.rows();
  const double orth_err =
      (entries.transpose() * entries - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (orth_err > kRotationTolerance) {
    throw Error(ErrorKind::InvalidInput,
                fmt::format("matrix is not orthogonal (max |RᵀR − I| = {:.3g})", orth_err));
  }
  if (std::abs(entries.determinant() - 1.0) > kRotationTolerance) {
    throw Error(ErrorKind::InvalidInput, "rotation must have determinant +1");
  }
  return RotationMatrix(std::move(entries));
}

StretchVector StretchVector::from_scale(const Vector& scale) {
  if (scale.size() < 1) {
    throw Error(ErrorKind::InvalidDimension, "stretch vector must be non-empty");
  }
  for (double s : scale) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw Error(ErrorKind::InvalidInput, "stretch scales must be positive and finite");
    }
  }
  return StretchVector{scale, scale.cwiseInverse()};
}

void StretchConfig::validate() const {
  if (!std::isfinite(s_min_exp) || !std::isfinite(s_max_exp) || s_min_exp > s_max_exp) {
    throw Error(ErrorKind::Config,
                fmt::format("stretch range requires s_min_exp <= s_max_exp, got ({}, {})",
                            s_min_exp, s_max_exp));
  }
  if (!(reference_scale > 0.0) || !std::isfinite(reference_scale)) {
    throw Error(ErrorKind::Config, "reference scale must be positive and finite");
  }
}

HistogramTransform::HistogramTransform(RotationMatrix rotation, StretchVector stretch,
                                       Vector translation,
                                       std::optional<std::uint64_t> seed)
    : rotation_(std::move(rotation)),
      stretch_(std::move(stretch)),
      translation_(std::move(translation)),
      seed_(seed),
      volume_(stretch_.width.prod()) {
  if (stretch_.scale.size() != rotation_.dim() || stretch_.width.size() != rotation_.dim() ||
      translation_.size() != rotation_.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                "rotation, stretch and translation dimensions differ");
  }
}

HistogramTransform HistogramTransform::identity(Eigen::Index dim) {
  return HistogramTransform(RotationMatrix::identity(dim),
                            StretchVector::from_scale(Vector::Ones(dim)),
                            Vector::Zero(dim));
}

Vector HistogramTransform::apply(const Eigen::Ref<const Vector>& x) const {
  if (x.size() != dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                fmt::format("point has dimension {}, transform has {}", x.size(), dim()));
  }
  return rotation_.matrix() * stretch_.scale.cwiseProduct(x) + translation_;
}

Vector HistogramTransform::invert(const Eigen::Ref<const Vector>& y) const {
  if (y.size() != dim()) {
    throw Error(ErrorKind::DimensionMismatch, "point dimension does not match transform");
  }
  return stretch_.width.cwiseProduct(rotation_.matrix().transpose() * (y - translation_));
}

IndexVector HistogramTransform::bin_index(const Eigen::Ref<const Vector>& x) const {
  if (!x.allFinite()) {
    throw Error(ErrorKind::InvalidInput, "cannot bin a non-finite point");
  }
  const Vector y = apply(x);
  constexpr double kLimit = 9.0e18;
  IndexVector index(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double f = std::floor(y[i]);
    if (std::abs(f) > kLimit) {
      throw Error(ErrorKind::InvalidInput, "transformed coordinate overflows the bin index");
    }
    index[i] = static_cast<long long>(f);
  }
  return index;
}

RotationMatrix sample_rotation(Eigen::Index dim, Rng& rng) {
  require_dim(dim);
  Matrix gaussian(dim, dim);
  // Column-major fill order is part of the seed contract.
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      gaussian(i, j) = rng.normal();
    }
  }
  Eigen::HouseholderQR<Matrix> qr(gaussian);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < dim; ++j) {
    if (r(j, j) < 0.0) {
      q.col(j) = -q.col(j);
    }
  }
  if (q.determinant() < 0.0) {
    q.col(0) = -q.col(0);
  }
  return RotationMatrix::from_matrix(std::move(q));
}

double reference_scale(const Matrix& data) {
  const auto n = data.rows();
  const auto d = data.cols();
  if (n < 2) {
    throw Error(ErrorKind::InsufficientData, "reference scale needs at least two points");
  }
  require_dim(d);
  const double sigma = std::sqrt(sample_covariance(data).trace() / static_cast<double>(d));
  if (!(sigma > 0.0)) {
    throw Error(ErrorKind::DegenerateData, "all points are identical (zero variance)");
  }
  return std::pow(static_cast<double>(n), 1.0 / (2.0 + static_cast<double>(d))) /
         (3.5 * sigma);
}

StretchVector sample_stretch(Eigen::Index dim, const StretchConfig& cfg, Rng& rng) {
  require_dim(dim);
  cfg.validate();
  // ŝ·exp(e) with e ~ U[s_min_exp, s_max_exp] is log-uniform on
  // [s_min_exp + log ŝ, s_max_exp + log ŝ]; a zero span consumes no draws.
  const double span = cfg.s_max_exp - cfg.s_min_exp;
  Vector scale(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double offset = span == 0.0 ? cfg.s_min_exp : cfg.s_min_exp + span * rng.uniform();
    scale[i] = cfg.reference_scale * std::exp(offset);
  }
  return StretchVector::from_scale(scale);
}

Vector sample_translation(Eigen::Index dim, Rng& rng) {
  require_dim(dim);
  Vector b(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    b[i] = rng.uniform();
  }
  return b;
}

HistogramTransform sample_transform(Eigen::Index dim, const StretchConfig& cfg, Rng& rng) {
  auto rotation = sample_rotation(dim, rng);
  auto stretch = sample_stretch(dim, cfg, rng);
  auto translation = sample_translation(dim, rng);
  return HistogramTransform(std::move(rotation), std::move(stretch), std::move(translation),
                            rng.seed());
}

}  // namespace hte
