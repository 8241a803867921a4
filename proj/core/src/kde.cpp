#include "hte/kde.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "hte/error.hpp"
#include "hte/stats.hpp"

namespace hte {

KdeModel fit_kde(const Matrix& data) {
  const Eigen::Index n = data.rows();
  const Eigen::Index d = data.cols();
  if (d < 1) {
    throw Error(ErrorKind::InvalidDimension, "KDE needs at least one column");
  }
  if (n <= d) {
    throw Error(ErrorKind::InsufficientData,
                fmt::format("KDE needs more points than dimensions (n = {}, d = {})", n, d));
  }
  if (!data.allFinite()) {
    throw Error(ErrorKind::InvalidInput, "data contains non-finite values");
  }

  KdeModel model;
  model.points_ = data;
  model.factor_ = std::pow(static_cast<double>(n), -1.0 / (static_cast<double>(d) + 4.0));
  model.covariance_ = sample_covariance(data);

  Eigen::SelfAdjointEigenSolver<Matrix> eig(model.covariance_, Eigen::EigenvaluesOnly);
  const double max_ev = eig.eigenvalues().cwiseAbs().maxCoeff();
  if (!(eig.eigenvalues().minCoeff() > 1e-12 * max_ev)) {
    throw Error(ErrorKind::SingularCovariance,
                "sample covariance is singular; reduce the dimension (e.g. with PCA) "
                "or drop collinear columns");
  }

  const Matrix kernel_cov = model.factor_ * model.factor_ * model.covariance_;
  Eigen::LLT<Matrix> llt(kernel_cov);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorKind::SingularCovariance, "kernel covariance is not positive definite");
  }
  model.chol_lower_ = llt.matrixL();
  const double log_det = 2.0 * model.chol_lower_.diagonal().array().log().sum();
  model.normalizer_ =
      std::exp(-0.5 * (static_cast<double>(d) * std::log(2.0 * std::numbers::pi) + log_det));

  model.center_ = column_mean(data);
  const Matrix centered = (data.rowwise() - model.center_.transpose()).transpose();
  model.whitened_ = model.chol_lower_.triangularView<Eigen::Lower>().solve(centered);
  return model;
}

Vector KdeModel::whiten(const Eigen::Ref<const Vector>& x) const {
  return chol_lower_.triangularView<Eigen::Lower>().solve(x - center_);
}

double KdeModel::evaluate(const Eigen::Ref<const Vector>& x) const {
  if (x.size() != dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                fmt::format("point has dimension {}, model has {}", x.size(), dim()));
  }
  if (!x.allFinite()) {
    throw Error(ErrorKind::InvalidInput, "cannot evaluate a non-finite point");
  }
  const Vector z = whiten(x);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < whitened_.cols(); ++i) {
    sum += std::exp(-0.5 * (whitened_.col(i) - z).squaredNorm());
  }
  return normalizer_ * sum / static_cast<double>(whitened_.cols());
}

Vector KdeModel::evaluate_rows(const Matrix& queries) const {
  Vector out(queries.rows());
  for (Eigen::Index q = 0; q < queries.rows(); ++q) {
    out[q] = evaluate(queries.row(q).transpose());
  }
  return out;
}

}  // namespace hte
