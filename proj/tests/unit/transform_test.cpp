#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <Eigen/LU>

#include "hte/error.hpp"
#include "hte/transform.hpp"
#include "oracles.hpp"

namespace {

using hte::Matrix;
using hte::Vector;

hte::HistogramTransform axis_transform(Vector s, Vector b) {
  const auto d = s.size();
  return hte::HistogramTransform(hte::RotationMatrix::identity(d),
                                 hte::StretchVector::from_scale(s), std::move(b));
}

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

TEST(Rotation, OneDimensionalIsIdentity) {
  for (std::uint64_t seed : {0u, 1u, 99u}) {
    hte::Rng rng(seed);
    const auto r = hte::sample_rotation(1, rng);
    EXPECT_EQ(r.matrix()(0, 0), 1.0);
  }
}

TEST(Rotation, OrthogonalWithUnitDeterminant) {
  hte::Rng rng(42);
  const auto r = hte::sample_rotation(3, rng);
  const Matrix& q = r.matrix();
  EXPECT_LT((q.transpose() * q - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT(std::abs(q.determinant() - 1.0), 1e-10);
}

TEST(Rotation, InvariantsAcrossDimensions) {
  hte::Rng rng(5);
  for (Eigen::Index d = 1; d <= 8; ++d) {
    for (int k = 0; k < 200; ++k) {
      const Matrix q = hte::sample_rotation(d, rng).matrix();
      ASSERT_LT((q.transpose() * q - Matrix::Identity(d, d)).cwiseAbs().maxCoeff(), 1e-10);
      ASSERT_LT(std::abs(q.determinant() - 1.0), 1e-10);
    }
  }
}

TEST(Rotation, FirstColumnAngleUniformIn2D) {
  hte::Rng rng(2024);
  std::vector<std::size_t> bins(16, 0);
  for (int k = 0; k < 10000; ++k) {
    const Matrix q = hte::sample_rotation(2, rng).matrix();
    double angle = std::atan2(q(1, 0), q(0, 0));
    if (angle < 0) angle += 2.0 * std::numbers::pi;
    const auto b = static_cast<std::size_t>(angle / (2.0 * std::numbers::pi) * 16.0);
    ++bins[std::min<std::size_t>(b, 15)];
  }
  EXPECT_LT(hte::oracle::chi_square_uniform(bins), hte::oracle::chi_square_critical(15, 0.001));
}

TEST(Rotation, FromMatrixRejectsNonRotation) {
  Matrix reflection = Matrix::Identity(2, 2);
  reflection(0, 0) = -1.0;
  EXPECT_THROW(hte::RotationMatrix::from_matrix(reflection), hte::Error);
  EXPECT_THROW(hte::RotationMatrix::from_matrix(2.0 * Matrix::Identity(2, 2)), hte::Error);
}

TEST(ReferenceScale, TwoPointsInOneDimension) {
  Matrix data(2, 1);
  data << 0.0, 2.0;
  // Unbiased variance of {0, 2} is 2.
  const double expected = 1.0 / (3.5 * std::sqrt(2.0)) * std::cbrt(2.0);
  EXPECT_NEAR(hte::reference_scale(data), expected, 1e-12);
  EXPECT_NEAR(hte::reference_scale(data), 0.25454, 1e-5);
}

TEST(ReferenceScale, DuplicatedSquareCornersMatchesDirectCovariance) {
  Matrix data(8, 2);
  data << 0, 0, 1, 0, 0, 1, 1, 1, 0, 0, 1, 0, 0, 1, 1, 1;
  double trace = 0.0;
  for (int j = 0; j < 2; ++j) {
    double mean = 0.0;
    for (int i = 0; i < 8; ++i) mean += data(i, j) / 8.0;
    double ss = 0.0;
    for (int i = 0; i < 8; ++i) ss += (data(i, j) - mean) * (data(i, j) - mean);
    trace += ss / 7.0;
  }
  const double sigma = std::sqrt(trace / 2.0);
  EXPECT_NEAR(hte::reference_scale(data), std::pow(8.0, 0.25) / (3.5 * sigma), 1e-12);
}

TEST(ReferenceScale, IdenticalPointsFail) {
  Matrix data = Matrix::Constant(5, 2, 3.0);
  EXPECT_THROW(hte::reference_scale(data), hte::Error);
  EXPECT_THROW(hte::reference_scale(Matrix::Zero(1, 2)), hte::Error);
}

TEST(Stretch, DegenerateIntervalGivesReferenceScale) {
  hte::Rng rng(3);
  const auto s = hte::sample_stretch(4, {0.0, 0.0, 2.0}, rng);
  for (Eigen::Index i = 0; i < 4; ++i) {
    EXPECT_EQ(s.scale[i], 2.0);
    EXPECT_EQ(s.width[i], 0.5);
  }
}

TEST(Stretch, LogScaleUniformOnInterval) {
  hte::Rng rng(17);
  std::vector<double> logs;
  for (int k = 0; k < 10000; ++k) {
    const auto s = hte::sample_stretch(1, {0.0, 1.0, 1.0}, rng);
    ASSERT_GE(s.scale[0], 1.0);
    ASSERT_LE(s.scale[0], std::exp(1.0));
    logs.push_back(std::log(s.scale[0]));
  }
  const double d = hte::oracle::ks_statistic(logs, [](double x) { return std::clamp(x, 0.0, 1.0); });
  EXPECT_LT(d, hte::oracle::ks_critical(logs.size(), 0.001));
}

TEST(Stretch, WidthTimesScaleIsOne) {
  hte::Rng rng(8);
  const auto s = hte::sample_stretch(3, {-1.0, 1.0, 0.7}, rng);
  for (Eigen::Index i = 0; i < 3; ++i) EXPECT_NEAR(s.width[i] * s.scale[i], 1.0, 1e-15);
}

TEST(Stretch, InvalidConfig) {
  hte::Rng rng(1);
  EXPECT_THROW(hte::sample_stretch(2, {1.0, 0.0, 1.0}, rng), hte::Error);
  EXPECT_THROW(hte::sample_stretch(2, {0.0, 1.0, -1.0}, rng), hte::Error);
}

TEST(Translation, ComponentsInUnitInterval) {
  hte::Rng rng(4);
  const Vector b = hte::sample_translation(2, rng);
  for (Eigen::Index i = 0; i < 2; ++i) {
    EXPECT_GE(b[i], 0.0);
    EXPECT_LT(b[i], 1.0);
  }
}

TEST(Translation, FirstComponentUniform) {
  hte::Rng rng(23);
  std::vector<double> xs;
  for (int k = 0; k < 10000; ++k) xs.push_back(hte::sample_translation(3, rng)[0]);
  const double d = hte::oracle::ks_statistic(xs, [](double x) { return std::clamp(x, 0.0, 1.0); });
  EXPECT_LT(d, hte::oracle::ks_critical(xs.size(), 0.001));
}

TEST(Translation, Reproducible) {
  hte::Rng a(9), b(9);
  EXPECT_EQ(hte::sample_translation(4, a), hte::sample_translation(4, b));
}

TEST(Apply, AxisAlignedExamples) {
  EXPECT_EQ(axis_transform(vec({1, 1}), vec({0.5, 0.5})).apply(vec({0, 0})), vec({0.5, 0.5}));
  EXPECT_EQ(axis_transform(vec({2, 4}), vec({0, 0})).apply(vec({1, 1})), vec({2, 4}));
}

TEST(Apply, InvertRoundTrip) {
  hte::Rng rng(31);
  for (int k = 0; k < 50; ++k) {
    const auto t = hte::sample_transform(3, {-1.0, 1.0, 2.0}, rng);
    const Vector x = Vector::Random(3) * 5.0;
    const Vector y = t.apply(x);
    const Vector back = t.stretch().scale.cwiseInverse().cwiseProduct(
        t.rotation().matrix().transpose() * (y - t.translation()));
    EXPECT_LT((back - x).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((t.invert(y) - x).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Apply, DimensionMismatchThrows) {
  const auto t = hte::HistogramTransform::identity(2);
  EXPECT_THROW(t.apply(vec({1, 2, 3})), hte::Error);
}

TEST(BinIndex, HalfOpenBins) {
  const auto t = axis_transform(vec({1}), vec({0.5}));
  EXPECT_EQ(t.bin_index(vec({0.6}))[0], 1);
  EXPECT_EQ(t.bin_index(vec({0.5}))[0], 1);
  EXPECT_EQ(t.bin_index(vec({0.49}))[0], 0);
  EXPECT_EQ(t.bin_index(vec({-0.6}))[0], -1);
  EXPECT_EQ(t.bin_index(vec({-1.6}))[0], -2);
}

TEST(BinIndex, MatchesDirectFloorOfTransform) {
  hte::Rng rng(12);
  const auto t = hte::sample_transform(3, {0.0, 1.0, 1.5}, rng);
  for (int k = 0; k < 1000; ++k) {
    const Vector x = Vector::Random(3) * 3.0;
    const auto key = t.bin_index(x);
    const auto direct = hte::oracle::direct_bin_key(t, x);
    for (int j = 0; j < 3; ++j) ASSERT_EQ(key[j], direct[static_cast<std::size_t>(j)]);
  }
}

TEST(BinIndex, NonFiniteInputRejected) {
  const auto t = hte::HistogramTransform::identity(1);
  EXPECT_THROW(t.bin_index(vec({std::nan("")})), hte::Error);
}

TEST(CellVolume, ProductOfWidths) {
  EXPECT_DOUBLE_EQ(axis_transform(vec({2, 4}), vec({0, 0})).cell_volume(), 0.125);
  EXPECT_DOUBLE_EQ(hte::HistogramTransform::identity(5).cell_volume(), 1.0);
}

TEST(CellVolume, MonteCarloPreimageVolume) {
  hte::Rng rng(77);
  const auto t = hte::sample_transform(2, {0.0, 1.0, 1.3}, rng);
  const hte::IndexVector key = t.bin_index(vec({0.1, -0.2}));
  // Bounding box of the preimage of the unit square at `key`.
  Vector lo = Vector::Constant(2, 1e300), hi = Vector::Constant(2, -1e300);
  for (int c = 0; c < 4; ++c) {
    Vector y(2);
    y << static_cast<double>(key[0] + (c & 1)), static_cast<double>(key[1] + ((c >> 1) & 1));
    const Vector x = t.invert(y);
    lo = lo.cwiseMin(x);
    hi = hi.cwiseMax(x);
  }
  hte::Rng mc(78);
  const int samples = 200000;
  int inside = 0;
  for (int k = 0; k < samples; ++k) {
    Vector x(2);
    x << lo[0] + (hi[0] - lo[0]) * mc.uniform(), lo[1] + (hi[1] - lo[1]) * mc.uniform();
    if (t.bin_index(x) == key) ++inside;
  }
  const double estimate = (hi - lo).prod() * inside / samples;
  EXPECT_NEAR(estimate / t.cell_volume(), 1.0, 0.02);
}

}  // namespace
