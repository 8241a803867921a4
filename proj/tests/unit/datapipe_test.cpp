#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hte/datapipe.hpp"
#include "hte/error.hpp"
#include "hte/stats.hpp"

namespace {

using hte::Matrix;
using hte::data::Dataset;

Dataset parse(const std::string& text, hte::data::CsvOptions opts = {}) {
  std::istringstream in(text);
  return hte::data::parse_csv(in, opts, "test.csv");
}

Dataset from_matrix(Matrix m) {
  Dataset ds;
  ds.rows = std::move(m);
  for (Eigen::Index j = 0; j < ds.rows.cols(); ++j) ds.column_names.push_back("c" + std::to_string(j));
  return ds;
}

double pearson(const Matrix& m, Eigen::Index a, Eigen::Index b) {
  const double ma = m.col(a).mean(), mb = m.col(b).mean();
  double sab = 0, saa = 0, sbb = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    sab += (m(i, a) - ma) * (m(i, b) - mb);
    saa += (m(i, a) - ma) * (m(i, a) - ma);
    sbb += (m(i, b) - mb) * (m(i, b) - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

TEST(LoadCsv, SmallNumericFile) {
  const auto ds = parse("x,y\n1,2\n3,4\n5,6\n");
  ASSERT_EQ(ds.size(), 3);
  ASSERT_EQ(ds.dim(), 2);
  EXPECT_EQ(ds.column_names, (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(ds.rows(2, 1), 6.0);
}

TEST(LoadCsv, NoHeaderAndDelimiter) {
  hte::data::CsvOptions opts;
  opts.header = false;
  opts.delimiter = ';';
  const auto ds = parse("1;2\n3;4\n", opts);
  EXPECT_EQ(ds.size(), 2);
  EXPECT_EQ(ds.rows(1, 0), 3.0);
}

TEST(LoadCsv, TextCellIsLocatedError) {
  try {
    parse("a,b\n1,2\n3,oops\n4,5\n");
    FAIL() << "expected parse error";
  } catch (const hte::Error& e) {
    EXPECT_EQ(e.kind(), hte::ErrorKind::Parse);
    const std::string msg = e.what();
    EXPECT_NE(msg.find("test.csv"), std::string::npos);
    EXPECT_NE(msg.find("oops"), std::string::npos);
    EXPECT_NE(msg.find("column 2"), std::string::npos) << msg;
  }
}

TEST(LoadCsv, RaggedRowRejected) {
  EXPECT_THROW(parse("a,b\n1,2\n3\n"), hte::Error);
}

TEST(LoadCsv, DropColumns) {
  hte::data::CsvOptions opts;
  opts.drop_columns = {"b"};
  const auto ds = parse("a,b,c\n1,2,3\n4,5,6\n", opts);
  EXPECT_EQ(ds.column_names, (std::vector<std::string>{"a", "c"}));
  EXPECT_EQ(ds.rows(1, 1), 6.0);
  opts.drop_columns = {"missing"};
  EXPECT_THROW(parse("a,b\n1,2\n", opts), hte::Error);
}

TEST(LoadCsv, MissingFile) {
  EXPECT_THROW(hte::data::load_csv("/nonexistent/file.csv"), hte::Error);
}

TEST(Prune, IdenticalColumnsDropOne) {
  Matrix m(50, 2);
  for (Eigen::Index i = 0; i < 50; ++i) m(i, 0) = m(i, 1) = std::sin(static_cast<double>(i));
  const auto out = hte::data::prune_correlated(from_matrix(m), 0.98);
  EXPECT_EQ(out.dim(), 1);
  EXPECT_EQ(out.column_names[0], "c0");
}

TEST(Prune, IndependentColumnsKept) {
  hte::Rng rng(1234);
  Matrix m(1000, 4);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < 4; ++j) m(i, j) = rng.normal();
  EXPECT_EQ(hte::data::prune_correlated(from_matrix(m), 0.98).dim(), 4);
}

TEST(Prune, CollinearTripleDropsTwo) {
  Matrix m(30, 4);
  hte::Rng rng(2);
  for (Eigen::Index i = 0; i < 30; ++i) {
    const double t = rng.normal();
    m.row(i) << t, rng.normal(), 2.0 * t + 1.0, -3.0 * t;
  }
  const auto out = hte::data::prune_correlated(from_matrix(m), 0.98);
  EXPECT_EQ(out.column_names, (std::vector<std::string>{"c0", "c1"}));
  for (Eigen::Index a = 0; a < out.dim(); ++a)
    for (Eigen::Index b = a + 1; b < out.dim(); ++b) EXPECT_LE(std::abs(pearson(out.rows, a, b)), 0.98);
}

TEST(Normalize, ColumnToUnitInterval) {
  Matrix m(3, 2);
  m << 2, 7, 4, 7, 6, 7;
  const auto out = hte::data::normalize_unit(from_matrix(m));
  EXPECT_EQ(out.rows(0, 0), 0.0);
  EXPECT_EQ(out.rows(1, 0), 0.5);
  EXPECT_EQ(out.rows(2, 0), 1.0);
  EXPECT_TRUE((out.rows.col(1).array() == 0.0).all());
  const auto& step = out.provenance.back();
  EXPECT_EQ(step["step"], "normalize_unit");
  EXPECT_EQ(step["warnings"].size(), 1u);
}

TEST(Normalize, RangeInvariant) {
  hte::Rng rng(3);
  Matrix m(100, 3);
  for (Eigen::Index i = 0; i < 100; ++i) m.row(i) << rng.normal() * 5, rng.uniform() - 3, std::exp(rng.normal());
  const auto out = hte::data::normalize_unit(from_matrix(m));
  for (Eigen::Index j = 0; j < 3; ++j) {
    EXPECT_EQ(out.rows.col(j).minCoeff(), 0.0);
    EXPECT_EQ(out.rows.col(j).maxCoeff(), 1.0);
  }
}

TEST(Pca, FullRankPreservesDistances) {
  hte::Rng rng(4);
  Matrix m(40, 3);
  for (Eigen::Index i = 0; i < 40; ++i) m.row(i) << rng.normal(), rng.normal() + 0.3 * m(i, 0), rng.uniform();
  const auto out = hte::data::pca_reduce(from_matrix(m), 3);
  for (Eigen::Index a = 0; a < 40; a += 3)
    for (Eigen::Index b = a + 1; b < 40; b += 5)
      EXPECT_NEAR((out.rows.row(a) - out.rows.row(b)).norm(), (m.row(a) - m.row(b)).norm(), 1e-8);
}

TEST(Pca, LineCapturesAllVariance) {
  Matrix m(20, 2);
  for (Eigen::Index i = 0; i < 20; ++i) m.row(i) << i, i;
  const auto out = hte::data::pca_reduce(from_matrix(m), 1);
  const double ratio = out.provenance.back()["explained_variance_ratio"][0];
  EXPECT_GE(ratio, 1.0 - 1e-12);
}

TEST(Pca, ProjectedCovarianceDiagonal) {
  hte::Rng rng(5);
  Matrix m(200, 4);
  for (Eigen::Index i = 0; i < 200; ++i) {
    const double t = rng.normal();
    m.row(i) << t, t + 0.5 * rng.normal(), rng.normal(), 0.2 * t + rng.uniform();
  }
  const auto out = hte::data::pca_reduce(from_matrix(m), 3);
  Matrix cov = hte::sample_covariance(out.rows);
  cov.diagonal().setZero();
  EXPECT_LT(cov.cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Pca, TargetDimensionGuard) {
  EXPECT_THROW(hte::data::pca_reduce(from_matrix(Matrix::Random(10, 2)), 3), hte::Error);
  EXPECT_THROW(hte::data::pca_reduce(from_matrix(Matrix::Random(10, 2)), 0), hte::Error);
}

TEST(Split, SeventyThirtyDisjoint) {
  Matrix m(100, 1);
  for (Eigen::Index i = 0; i < 100; ++i) m(i, 0) = static_cast<double>(i);
  hte::Rng rng(6);
  const auto parts = hte::data::split(from_matrix(m), {0.7, 0.3}, rng);
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0].size(), 70);
  EXPECT_EQ(parts[1].size(), 30);
  std::vector<double> all;
  for (const auto& p : parts) all.insert(all.end(), p.rows.data(), p.rows.data() + p.rows.size());
  std::sort(all.begin(), all.end());
  for (int i = 0; i < 100; ++i) EXPECT_EQ(all[static_cast<std::size_t>(i)], i);
}

TEST(Split, Reproducible) {
  const Matrix m = Matrix::Random(50, 2);
  hte::Rng a(7), b(7);
  EXPECT_EQ(hte::data::split(from_matrix(m), {0.5, 0.3, 0.2}, a)[2].rows,
            hte::data::split(from_matrix(m), {0.5, 0.3, 0.2}, b)[2].rows);
}

TEST(Pipeline, FixtureDeterministicEndToEnd) {
  const std::filesystem::path path = std::filesystem::path(HTE_TEST_DATA_DIR) / "fixture_500x6.csv";
  const auto run = [&] {
    auto ds = hte::data::load_csv(path);
    ds = hte::data::prune_correlated(ds, 0.98);
    ds = hte::data::normalize_unit(ds);
    return hte::data::pca_reduce(ds, 2);
  };
  const auto a = run();
  const auto b = run();
  EXPECT_EQ(a.rows, b.rows);
  EXPECT_EQ(a.provenance, b.provenance);
  EXPECT_EQ(a.size(), 500);
}

TEST(Pipeline, FixtureDropsCorrelatedColumn) {
  const auto ds = hte::data::load_csv(std::filesystem::path(HTE_TEST_DATA_DIR) / "fixture_500x6.csv");
  const auto pruned = hte::data::prune_correlated(ds, 0.98);
  EXPECT_EQ(pruned.dim(), 5);
  EXPECT_EQ(std::count(pruned.column_names.begin(), pruned.column_names.end(), "shape_scaled"), 0);
}

TEST(Export, WritesCsvAndProvenance) {
  const auto dir = std::filesystem::temp_directory_path() / "hte_datapipe_export";
  std::filesystem::create_directories(dir);
  Dataset ds = from_matrix(Matrix::Random(5, 2));
  ds.provenance.push_back({{"step", "test"}});
  hte::data::export_csv(ds, dir / "out.csv");
  const auto back = hte::data::load_csv(dir / "out.csv");
  EXPECT_LT((back.rows - ds.rows).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_TRUE(std::filesystem::exists(dir / "out.csv.provenance.json"));
}

}  // namespace
