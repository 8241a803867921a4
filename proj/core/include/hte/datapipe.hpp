#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hte/rng.hpp"
#include "hte/types.hpp"

namespace hte::data {

/// Numeric table plus an append-only log of the steps that produced it.
struct Dataset {
  Matrix rows;
  std::vector<std::string> column_names;
  nlohmann::json provenance = nlohmann::json::array();

  Eigen::Index size() const noexcept { return rows.rows(); }
  Eigen::Index dim() const noexcept { return rows.cols(); }
};

struct CsvOptions {
  char delimiter = ',';
  bool header = true;
  /// Column names (or zero-based indices written as text) to discard.
  std::vector<std::string> drop_columns;
};

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options = {});
Dataset parse_csv(std::istream& in, const CsvOptions& options = {},
                  const std::string& source = "<stream>");

/// Writes the matrix as CSV and its provenance to `<path>.provenance.json`.
void export_csv(const Dataset& ds, const std::filesystem::path& path);

/// Drops the higher-indexed column of every pair with |pearson| > threshold,
/// scanning pairs in index order until no pair exceeds it.
Dataset prune_correlated(const Dataset& ds, double threshold = 0.98);

/// Maps each column affinely onto [0, 1]; constant columns become zeros.
Dataset normalize_unit(const Dataset& ds);

/// Projects centered data on the top-k covariance eigenvectors. Each
/// direction is signed so its largest-magnitude loading is positive.
Dataset pca_reduce(const Dataset& ds, Eigen::Index k);

/// Seeded permutation split. Part i > 0 receives round(fractions[i]·n) rows,
/// part 0 the remainder.
std::vector<Dataset> split(const Dataset& ds, const std::vector<double>& fractions, Rng& rng);

/// Rows of `m` selected by `indices`, in that order.
Matrix take_rows(const Matrix& m, const std::vector<Eigen::Index>& indices);

}  // namespace hte::data
