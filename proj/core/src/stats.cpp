#include "hte/stats.hpp"

#include "hte/error.hpp"

namespace hte {

Vector column_mean(const Matrix& data) {
  if (data.rows() == 0) {
    throw Error(ErrorKind::InsufficientData, "mean of an empty point set");
  }
  return data.colwise().mean().transpose();
}

Matrix sample_covariance(const Matrix& data) {
  if (data.rows() < 2) {
    throw Error(ErrorKind::InsufficientData,
                "sample covariance needs at least two points");
  }
  const Matrix centered = data.rowwise() - data.colwise().mean();
  return (centered.transpose() * centered) / static_cast<double>(data.rows() - 1);
}

double sample_variance(const Vector& values) {
  if (values.size() < 2) {
    throw Error(ErrorKind::InsufficientData,
                "sample variance needs at least two values");
  }
  const double mean = values.mean();
  return (values.array() - mean).square().sum() /
         static_cast<double>(values.size() - 1);
}

}  // namespace hte
