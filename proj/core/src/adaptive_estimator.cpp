#include "hte/adaptive_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include <fmt/format.h>

#include "hte/error.hpp"

namespace hte {

namespace {

// Type-7 quantile of sorted values.
double quantile_sorted(const std::vector<double>& sorted, double p) {
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) {
    return sorted.back();
  }
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

struct SplitOutcome {
  std::optional<SplitDecision> decision;
  LeafStatus reason = LeafStatus::Internal;
};

SplitOutcome try_split(const Matrix& pts, const Box& box) {
  const Eigen::Index d = pts.cols();
  const Vector range = (pts.colwise().maxCoeff() - pts.colwise().minCoeff()).transpose();
  if (range.maxCoeff() <= 0.0) {
    return {std::nullopt, LeafStatus::ZeroRange};
  }

  const Vector mean = pts.colwise().mean().transpose();
  const auto k = static_cast<double>(pts.rows());
  Vector var(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    var[i] = (pts.col(i).array() - mean[i]).square().sum() / (k - 1.0);
  }
  const double vmin = var.minCoeff();
  const double vmax = var.maxCoeff();
  Eigen::Index best = 0;
  double best_ratio = -1.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    const double scaled = vmax > vmin ? 0.5 + 2.0 * (var[i] - vmin) / (vmax - vmin) : 1.5;
    const double ratio = range[i] / scaled;
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best = i;
    }
  }

  std::vector<double> values(pts.col(best).data(), pts.col(best).data() + pts.rows());
  std::sort(values.begin(), values.end());
  const double value = mean[best] <= quantile_sorted(values, 0.6)
                           ? quantile_sorted(values, 0.618)
                           : quantile_sorted(values, 0.382);

  const bool interior = box.lo[best] < value && value < box.hi[best];
  const bool both_sides = values.front() < value && value <= values.back();
  if (!interior || !both_sides) {
    return {std::nullopt, LeafStatus::EmptyChild};
  }
  return {SplitDecision{best, value}, LeafStatus::Internal};
}

void check_min_samples(std::uint64_t m) {
  if (m < 1) {
    throw Error(ErrorKind::Config, "min_samples_split must be at least 1");
  }
}

}  // namespace

const char* to_string(LeafStatus status) noexcept {
  switch (status) {
    case LeafStatus::Internal: return "internal";
    case LeafStatus::Small: return "small";
    case LeafStatus::ZeroRange: return "zero-range";
    case LeafStatus::EmptyChild: return "empty-child";
  }
  return "unknown";
}

bool Box::contains(const Eigen::Ref<const Vector>& x) const {
  return (x.array() >= lo.array()).all() && (x.array() < hi.array()).all();
}

std::optional<SplitDecision> select_split(const Matrix& cell_points, const Box& cell_box,
                                          std::uint64_t min_samples_split) {
  check_min_samples(min_samples_split);
  if (static_cast<std::uint64_t>(cell_points.rows()) <= min_samples_split) {
    throw Error(ErrorKind::InvalidInput,
                fmt::format("select_split needs more than {} points, got {}",
                            min_samples_split, cell_points.rows()));
  }
  if (cell_points.cols() != cell_box.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "cell points and box dimensions differ");
  }
  return try_split(cell_points, cell_box).decision;
}

AdaptiveTree::AdaptiveTree(Box root_box, std::vector<Node> nodes, std::uint64_t n,
                           std::uint64_t min_samples_split)
    : root_box_(std::move(root_box)), nodes_(std::move(nodes)), n_(n), m_(min_samples_split) {
  check_min_samples(m_);
  const Eigen::Index d = root_box_.dim();
  if (d < 1 || root_box_.hi.size() != d) {
    throw Error(ErrorKind::InvalidDimension, "root box must have matching non-empty bounds");
  }
  if (!(root_box_.hi.array() > root_box_.lo.array()).all()) {
    throw Error(ErrorKind::InvalidInput, "root box must have positive extent");
  }
  if (nodes_.empty() || n_ == 0) {
    throw Error(ErrorKind::InsufficientData, "tree needs a root node and at least one sample");
  }
  const auto dd = static_cast<std::size_t>(d);
  bounds_.assign(nodes_.size() * 2 * dd, 0.0);
  density_.assign(nodes_.size(), 0.0);
  std::copy(root_box_.lo.data(), root_box_.lo.data() + d, bounds_.begin());
  std::copy(root_box_.hi.data(), root_box_.hi.data() + d, bounds_.begin() + d);

  std::vector<bool> seen(nodes_.size(), false);
  seen[0] = true;
  std::uint64_t leaf_total = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!seen[i]) {
      throw Error(ErrorKind::InvalidInput, fmt::format("node {} is unreachable", i));
    }
    const Node& node = nodes_[i];
    const double* lo = &bounds_[i * 2 * dd];
    const double* hi = lo + dd;
    if (node.is_leaf()) {
      if (node.status == LeafStatus::Internal || node.count == 0) {
        throw Error(ErrorKind::InvalidInput, fmt::format("leaf {} is malformed", i));
      }
      double volume = 1.0;
      for (std::size_t j = 0; j < dd; ++j) volume *= hi[j] - lo[j];
      density_[i] = static_cast<double>(node.count) / (static_cast<double>(n_) * volume);
      leaf_total += node.count;
      continue;
    }
    const auto sd = static_cast<std::size_t>(node.split_dim);
    const auto valid_child = [&](std::int32_t c) {
      return c > static_cast<std::int32_t>(i) && static_cast<std::size_t>(c) < nodes_.size() &&
             !seen[static_cast<std::size_t>(c)];
    };
    if (node.split_dim >= d || !valid_child(node.lower) || !valid_child(node.upper) ||
        node.lower == node.upper || !(lo[sd] < node.split_value && node.split_value < hi[sd])) {
      throw Error(ErrorKind::InvalidInput, fmt::format("internal node {} is malformed", i));
    }
    const auto lower = static_cast<std::size_t>(node.lower);
    const auto upper = static_cast<std::size_t>(node.upper);
    if (nodes_[lower].count + nodes_[upper].count != node.count) {
      throw Error(ErrorKind::InvalidInput,
                  fmt::format("children of node {} do not conserve its count", i));
    }
    seen[lower] = seen[upper] = true;
    std::copy(lo, lo + 2 * dd, bounds_.begin() + static_cast<std::ptrdiff_t>(lower * 2 * dd));
    std::copy(lo, lo + 2 * dd, bounds_.begin() + static_cast<std::ptrdiff_t>(upper * 2 * dd));
    bounds_[lower * 2 * dd + dd + sd] = node.split_value;
    bounds_[upper * 2 * dd + sd] = node.split_value;
  }
  if (nodes_[0].count != n_ || leaf_total != n_) {
    throw Error(ErrorKind::InvalidInput,
                fmt::format("leaf counts sum to {} but n = {}", leaf_total, n_));
  }
}

Box AdaptiveTree::node_box(std::size_t node) const {
  const Eigen::Index d = dim();
  const double* lo = &bounds_.at(node * 2 * static_cast<std::size_t>(d));
  return Box{Eigen::Map<const Vector>(lo, d), Eigen::Map<const Vector>(lo + d, d)};
}

std::vector<std::size_t> AdaptiveTree::leaves() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].is_leaf()) out.push_back(i);
  }
  return out;
}

std::optional<std::size_t> AdaptiveTree::locate(const Eigen::Ref<const Vector>& x) const {
  if (x.size() != dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                fmt::format("point has dimension {}, tree has {}", x.size(), dim()));
  }
  if (!x.allFinite()) {
    throw Error(ErrorKind::InvalidInput, "cannot evaluate a non-finite point");
  }
  if (!root_box_.contains(x)) {
    return std::nullopt;
  }
  std::size_t i = 0;
  while (!nodes_[i].is_leaf()) {
    const Node& node = nodes_[i];
    i = static_cast<std::size_t>(x[node.split_dim] >= node.split_value ? node.upper : node.lower);
  }
  return i;
}

double AdaptiveTree::evaluate(const Eigen::Ref<const Vector>& x) const {
  const auto leaf = locate(x);
  return leaf ? density_[*leaf] : 0.0;
}

AdaptiveTree fit_adaptive(const Matrix& rotated_data, std::uint64_t min_samples_split) {
  check_min_samples(min_samples_split);
  const Eigen::Index n = rotated_data.rows();
  const Eigen::Index d = rotated_data.cols();
  if (n == 0) {
    throw Error(ErrorKind::InsufficientData, "cannot fit an adaptive tree to no data");
  }
  if (d < 1) {
    throw Error(ErrorKind::InvalidDimension, "data must have at least one column");
  }
  if (!rotated_data.allFinite()) {
    throw Error(ErrorKind::InvalidInput, "data contains non-finite values");
  }

  Box root{rotated_data.colwise().minCoeff().transpose(),
           rotated_data.colwise().maxCoeff().transpose()};
  for (Eigen::Index i = 0; i < d; ++i) {
    const double scale = std::max({root.hi[i] - root.lo[i], std::abs(root.lo[i]),
                                   std::abs(root.hi[i]), 1.0});
    root.lo[i] -= kRootBoxPadding * scale;
    root.hi[i] += kRootBoxPadding * scale;
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});

  struct Pending {
    std::size_t node;
    std::size_t begin;
    std::size_t end;
    Box box;
  };
  std::vector<AdaptiveTree::Node> nodes(1);
  nodes[0].count = static_cast<std::uint64_t>(n);
  std::deque<Pending> queue;
  queue.push_back({0, 0, order.size(), root});

  Matrix cell;
  while (!queue.empty()) {
    Pending item = std::move(queue.front());
    queue.pop_front();
    const std::size_t k = item.end - item.begin;
    if (k <= min_samples_split) {
      nodes[item.node].status = LeafStatus::Small;
      continue;
    }
    cell.resize(static_cast<Eigen::Index>(k), d);
    for (std::size_t r = 0; r < k; ++r) {
      cell.row(static_cast<Eigen::Index>(r)) = rotated_data.row(order[item.begin + r]);
    }
    const SplitOutcome outcome = try_split(cell, item.box);
    if (!outcome.decision) {
      nodes[item.node].status = outcome.reason;
      continue;
    }
    const auto [dim, value] = *outcome.decision;
    const auto first = order.begin() + static_cast<std::ptrdiff_t>(item.begin);
    const auto last = order.begin() + static_cast<std::ptrdiff_t>(item.end);
    const auto mid = std::stable_partition(
        first, last, [&](Eigen::Index row) { return rotated_data(row, dim) < value; });
    const auto split_at = static_cast<std::size_t>(mid - order.begin());

    const auto lower = static_cast<std::int32_t>(nodes.size());
    nodes.emplace_back();
    nodes.emplace_back();
    auto& parent = nodes[item.node];
    parent.split_dim = static_cast<int>(dim);
    parent.split_value = value;
    parent.lower = lower;
    parent.upper = lower + 1;
    parent.status = LeafStatus::Internal;
    nodes[static_cast<std::size_t>(lower)].count = split_at - item.begin;
    nodes[static_cast<std::size_t>(lower) + 1].count = item.end - split_at;

    Box lower_box = item.box;
    Box upper_box = std::move(item.box);
    lower_box.hi[dim] = value;
    upper_box.lo[dim] = value;
    queue.push_back({static_cast<std::size_t>(lower), item.begin, split_at, std::move(lower_box)});
    queue.push_back(
        {static_cast<std::size_t>(lower) + 1, split_at, item.end, std::move(upper_box)});
  }
  return AdaptiveTree(std::move(root), std::move(nodes), static_cast<std::uint64_t>(n),
                      min_samples_split);
}

}  // namespace hte
