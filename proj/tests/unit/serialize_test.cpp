#include <gtest/gtest.h>

#include <filesystem>

#include "hte/ensemble.hpp"
#include "hte/error.hpp"
#include "hte/kde.hpp"
#include "hte/serialize.hpp"
#include "oracles.hpp"

namespace {

using hte::Matrix;

TEST(Serialize, NhteRoundTripEvaluatesIdentically) {
  hte::Rng rng(1);
  const Matrix data = hte::oracle::random_dataset(80, 3, rng);
  const hte::DensityModel model = hte::fit_nhte(data, {4, 0.0, 1.0, {}, 1}, hte::Rng(2));
  const auto back = hte::io::model_from_json(hte::io::to_json(model));
  EXPECT_EQ(hte::evaluate_rows(back, data), hte::evaluate_rows(model, data));
  EXPECT_EQ(hte::model_method(back), "nhte");
}

TEST(Serialize, AhteRoundTripEvaluatesIdentically) {
  hte::Rng rng(3);
  const Matrix data = hte::oracle::random_dataset(120, 2, rng);
  const hte::DensityModel model = hte::fit_ahte(data, {3, 4, true, 1}, hte::Rng(4));
  const auto j = hte::io::to_json(model);
  EXPECT_EQ(j["members"][0]["version"], "ahte-v1");
  const auto back = hte::io::model_from_json(j);
  const Matrix probe = data.array() + 0.01;
  EXPECT_EQ(hte::evaluate_rows(back, probe), hte::evaluate_rows(model, probe));
}

TEST(Serialize, KdeRoundTrip) {
  hte::Rng rng(5);
  const Matrix data = hte::oracle::random_dataset(40, 2, rng);
  const hte::DensityModel model = hte::fit_kde(data);
  const auto back = hte::io::model_from_json(hte::io::to_json(model));
  EXPECT_EQ(hte::evaluate_rows(back, data), hte::evaluate_rows(model, data));
}

TEST(Serialize, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "hte_serialize_test.json";
  hte::Rng rng(6);
  const Matrix data = hte::oracle::random_dataset(50, 2, rng);
  const hte::DensityModel model = hte::fit_nhte(data, {2, 0.0, 1.0, {}, 1}, hte::Rng(7));
  hte::io::save_model(model, path);
  EXPECT_EQ(hte::evaluate_rows(hte::io::load_model(path), data), hte::evaluate_rows(model, data));
}

TEST(Serialize, MalformedInputIsParseError) {
  try {
    hte::io::model_from_json(nlohmann::json{{"format", "hte-model"}, {"method", "nhte"}});
    FAIL();
  } catch (const hte::Error& e) {
    EXPECT_EQ(e.kind(), hte::ErrorKind::Parse);
  }
  EXPECT_THROW(hte::io::load_model("/nonexistent/model.json"), hte::Error);
}

}  // namespace
