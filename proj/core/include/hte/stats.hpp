#pragma once

#include "hte/types.hpp"

namespace hte {

/// Column means of an n×d point set.
Vector column_mean(const Matrix& data);

/// Unbiased (n−1) sample covariance of an n×d point set. Requires n ≥ 2.
Matrix sample_covariance(const Matrix& data);

/// Unbiased variance of a sample.
double sample_variance(const Vector& values);

}  // namespace hte
