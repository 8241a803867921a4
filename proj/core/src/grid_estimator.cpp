#include "hte/grid_estimator.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "hte/error.hpp"
#include "hte/rng.hpp"

namespace hte {

namespace {

CellKey to_key(const IndexVector& index) {
  return CellKey(index.data(), index.data() + index.size());
}

}  // namespace

std::size_t CellKeyHash::operator()(const CellKey& key) const noexcept {
  std::uint64_t h = 0x84222325cbf29ce4ULL;
  for (long long k : key) {
    h = mix64(h ^ static_cast<std::uint64_t>(k));
  }
  return static_cast<std::size_t>(h);
}

GridEstimator::GridEstimator(HistogramTransform transform, CellCounts counts,
                             std::uint64_t n)
    : transform_(std::move(transform)),
      counts_(std::move(counts)),
      n_(n),
      volume_(transform_.cell_volume()) {
  if (n_ == 0) {
    throw Error(ErrorKind::InsufficientData, "grid estimator needs at least one sample");
  }
  std::uint64_t total = 0;
  for (const auto& [key, c] : counts_) {
    if (static_cast<Eigen::Index>(key.size()) != transform_.dim()) {
      throw Error(ErrorKind::DimensionMismatch, "cell index dimension does not match transform");
    }
    if (c == 0) {
      throw Error(ErrorKind::InvalidInput, "empty cells must not be stored");
    }
    total += c;
  }
  if (total != n_) {
    throw Error(ErrorKind::InvalidInput,
                fmt::format("cell counts sum to {} but n = {}", total, n_));
  }
}

std::uint64_t GridEstimator::count(const CellKey& key) const {
  const auto it = counts_.find(key);
  return it == counts_.end() ? 0 : it->second;
}

double GridEstimator::evaluate(const Eigen::Ref<const Vector>& x) const {
  const auto c = count(to_key(transform_.bin_index(x)));
  if (c == 0) {
    return 0.0;
  }
  return static_cast<double>(c) / (static_cast<double>(n_) * volume_);
}

std::vector<std::pair<CellKey, std::uint64_t>> GridEstimator::sorted_cells() const {
  std::vector<std::pair<CellKey, std::uint64_t>> cells(counts_.begin(), counts_.end());
  std::sort(cells.begin(), cells.end());
  return cells;
}

GridEstimator fit_grid(const Matrix& data, const HistogramTransform& transform) {
  if (data.rows() == 0) {
    throw Error(ErrorKind::InsufficientData, "cannot fit a histogram to an empty data set");
  }
  if (data.cols() != transform.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                fmt::format("data has {} columns, transform has dimension {}", data.cols(),
                            transform.dim()));
  }
  CellCounts counts;
  counts.reserve(static_cast<std::size_t>(data.rows()));
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    const Vector x = data.row(i).transpose();
    ++counts[to_key(transform.bin_index(x))];
  }
  return GridEstimator(transform, std::move(counts), static_cast<std::uint64_t>(data.rows()));
}

}  // namespace hte
