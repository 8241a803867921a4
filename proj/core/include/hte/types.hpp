#pragma once

#include <Eigen/Core>

namespace hte {

/// Point sets are stored one observation per row.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IndexVector = Eigen::Matrix<long long, Eigen::Dynamic, 1>;

}  // namespace hte
