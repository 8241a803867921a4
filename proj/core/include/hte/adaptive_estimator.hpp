#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hte/types.hpp"

namespace hte {

/// Axis-aligned half-open box [lo, hi).
struct Box {
  Vector lo;
  Vector hi;

  Eigen::Index dim() const noexcept { return lo.size(); }
  double volume() const { return (hi - lo).prod(); }
  bool contains(const Eigen::Ref<const Vector>& x) const;
};

struct SplitDecision {
  Eigen::Index dim = 0;
  double value = 0.0;
};

/// Why a node is a leaf.
enum class LeafStatus : std::uint8_t {
  Internal,    ///< not a leaf
  Small,       ///< holds at most m points
  ZeroRange,   ///< all points coincide; cannot be split
  EmptyChild,  ///< the chosen split would leave one side empty
};

const char* to_string(LeafStatus status) noexcept;

/// Split rule for one cell holding more than `min_samples_split` points.
///
/// The dimension maximizes range_i / scaled_var_i, where the per-dimension
/// sample variances are mapped affinely so their minimum becomes 0.5 and
/// their maximum 2.5 (all equal: 1.5). Ties go to the lowest dimension.
/// Within that dimension the split is the 0.618 quantile when the mean is at
/// most the 0.6 quantile and the 0.382 quantile otherwise (type-7 linear
/// interpolation). Returns nothing when the cell cannot be split.
std::optional<SplitDecision> select_split(const Matrix& cell_points, const Box& cell_box,
                                          std::uint64_t min_samples_split);

/// Binary space partition of a (rotated) sample, grown until every leaf holds
/// at most m points. Nodes are stored breadth-first, lower child first.
class AdaptiveTree {
public:
  struct Node {
    int split_dim = -1;
    double split_value = 0.0;
    std::int32_t lower = -1;
    std::int32_t upper = -1;
    std::uint64_t count = 0;
    LeafStatus status = LeafStatus::Small;

    bool is_leaf() const noexcept { return split_dim < 0; }
  };

  /// Rebuilds node boxes and checks structural invariants.
  AdaptiveTree(Box root_box, std::vector<Node> nodes, std::uint64_t n,
               std::uint64_t min_samples_split);

  Eigen::Index dim() const noexcept { return root_box_.dim(); }
  const Box& root_box() const noexcept { return root_box_; }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  std::uint64_t sample_count() const noexcept { return n_; }
  std::uint64_t min_samples_split() const noexcept { return m_; }

  Box node_box(std::size_t node) const;
  std::vector<std::size_t> leaves() const;

  /// Leaf containing x, or nothing outside the root box.
  std::optional<std::size_t> locate(const Eigen::Ref<const Vector>& x) const;

  /// count / (n · leaf volume) in the leaf holding x; 0 outside the root box.
  double evaluate(const Eigen::Ref<const Vector>& x) const;

private:
  Box root_box_;
  std::vector<Node> nodes_;
  std::vector<double> bounds_;  // per node: d lower then d upper bounds
  std::vector<double> density_;  // per node; leaf values only
  std::uint64_t n_;
  std::uint64_t m_;
};

/// Relative padding applied to the empirical bounding box of the sample.
inline constexpr double kRootBoxPadding = 1e-9;

AdaptiveTree fit_adaptive(const Matrix& rotated_data, std::uint64_t min_samples_split);

}  // namespace hte
