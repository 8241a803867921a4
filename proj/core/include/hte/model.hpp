#pragma once

#include <string>
#include <variant>

#include "hte/ensemble.hpp"
#include "hte/kde.hpp"

namespace hte {

/// Any fitted estimator the CLI can write, read and score.
using DensityModel = std::variant<EnsembleModel, KdeModel>;

Vector evaluate_rows(const DensityModel& model, const Matrix& points);
Eigen::Index model_dim(const DensityModel& model);
std::string model_method(const DensityModel& model);

}  // namespace hte
