#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "hte/model.hpp"

namespace hte::io {

inline constexpr const char* kGridVersion = "nhte-v1";
inline constexpr const char* kTreeVersion = "ahte-v1";
inline constexpr const char* kKdeVersion = "kde-v1";
inline constexpr const char* kModelFormat = "hte-model";

/// {d, R (row-major), s, b, seed}. Doubles use the shortest representation
/// that parses back to the identical bits.
nlohmann::json to_json(const HistogramTransform& t);
HistogramTransform transform_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GridEstimator& e);
GridEstimator grid_from_json(const nlohmann::json& j);

/// Rotation, root box and a pre-order node list.
nlohmann::json to_json(const AdaptiveMember& m);
AdaptiveMember adaptive_from_json(const nlohmann::json& j);

nlohmann::json to_json(const KdeModel& m);
KdeModel kde_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DensityModel& m);
DensityModel model_from_json(const nlohmann::json& j);

void save_model(const DensityModel& m, const std::filesystem::path& path);
DensityModel load_model(const std::filesystem::path& path);

}  // namespace hte::io
