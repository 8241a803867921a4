#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "hte/transform.hpp"
#include "hte/types.hpp"

namespace hte {

using CellKey = std::vector<long long>;

struct CellKeyHash {
  std::size_t operator()(const CellKey& key) const noexcept;
};

using CellCounts = std::unordered_map<CellKey, std::uint64_t, CellKeyHash>;

/// Piecewise-constant density on the unit lattice of one histogram transform.
///
/// Only occupied cells are stored. The value in a cell is
/// count / (n · cell_volume) and zero in every unoccupied cell, so the
/// estimator integrates to Σ count / n = 1.
class GridEstimator {
public:
  GridEstimator(HistogramTransform transform, CellCounts counts, std::uint64_t n);

  const HistogramTransform& transform() const noexcept { return transform_; }
  const CellCounts& counts() const noexcept { return counts_; }
  std::uint64_t sample_count() const noexcept { return n_; }
  double volume() const noexcept { return volume_; }
  Eigen::Index dim() const noexcept { return transform_.dim(); }

  /// Count stored for a cell; 0 when the cell is unoccupied.
  std::uint64_t count(const CellKey& key) const;

  double evaluate(const Eigen::Ref<const Vector>& x) const;

  /// Occupied cells sorted lexicographically by index.
  std::vector<std::pair<CellKey, std::uint64_t>> sorted_cells() const;

private:
  HistogramTransform transform_;
  CellCounts counts_;
  std::uint64_t n_;
  double volume_;
};

GridEstimator fit_grid(const Matrix& data, const HistogramTransform& transform);

}  // namespace hte
