#include "hte/ensemble.hpp"

#include <fmt/format.h>

#include "hte/error.hpp"
#include "hte/parallel.hpp"

namespace hte {

namespace {

void require_members(std::size_t members) {
  if (members < 1) {
    throw Error(ErrorKind::Config, "an ensemble needs at least one member");
  }
}

}  // namespace

double AdaptiveMember::evaluate(const Eigen::Ref<const Vector>& x) const {
  if (x.size() != rotation.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "point dimension does not match model");
  }
  return tree.evaluate(rotation.matrix() * x);
}

const char* to_string(EnsembleKind kind) noexcept {
  return kind == EnsembleKind::Grid ? "nhte" : "ahte";
}

EnsembleModel::EnsembleModel(std::vector<GridEstimator> members) {
  require_members(members.size());
  dim_ = members.front().dim();
  for (const auto& m : members) {
    if (m.dim() != dim_) throw Error(ErrorKind::DimensionMismatch, "members differ in dimension");
  }
  members_ = std::move(members);
}

EnsembleModel::EnsembleModel(std::vector<AdaptiveMember> members) {
  require_members(members.size());
  dim_ = members.front().rotation.dim();
  for (const auto& m : members) {
    if (m.rotation.dim() != dim_ || m.tree.dim() != dim_) {
      throw Error(ErrorKind::DimensionMismatch, "members differ in dimension");
    }
  }
  members_ = std::move(members);
}

EnsembleKind EnsembleModel::kind() const noexcept {
  return members_.index() == 0 ? EnsembleKind::Grid : EnsembleKind::Adaptive;
}

std::size_t EnsembleModel::size() const noexcept {
  return std::visit([](const auto& v) { return v.size(); }, members_);
}

const std::vector<GridEstimator>& EnsembleModel::grid_members() const {
  if (kind() != EnsembleKind::Grid) throw Error(ErrorKind::InvalidInput, "not a grid ensemble");
  return std::get<0>(members_);
}

const std::vector<AdaptiveMember>& EnsembleModel::adaptive_members() const {
  if (kind() != EnsembleKind::Adaptive) {
    throw Error(ErrorKind::InvalidInput, "not an adaptive ensemble");
  }
  return std::get<1>(members_);
}

double EnsembleModel::evaluate_member(std::size_t t, const Eigen::Ref<const Vector>& x) const {
  return std::visit([&](const auto& v) { return v.at(t).evaluate(x); }, members_);
}

double EnsembleModel::evaluate(const Eigen::Ref<const Vector>& x) const {
  if (x.size() != dim_) {
    throw Error(ErrorKind::DimensionMismatch,
                fmt::format("point has dimension {}, model has {}", x.size(), dim_));
  }
  double sum = 0.0;
  const std::size_t T = size();
  for (std::size_t t = 0; t < T; ++t) sum += evaluate_member(t, x);
  return sum / static_cast<double>(T);
}

Vector EnsembleModel::evaluate_rows(const Matrix& points,
                                    std::optional<std::size_t> members) const {
  if (points.cols() != dim_) {
    throw Error(ErrorKind::DimensionMismatch,
                fmt::format("points have {} columns, model has dimension {}", points.cols(),
                            dim_));
  }
  const std::size_t T = members.value_or(size());
  if (T < 1 || T > size()) {
    throw Error(ErrorKind::Config, fmt::format("cannot use {} of {} members", T, size()));
  }
  Vector sum = Vector::Zero(points.rows());
  if (kind() == EnsembleKind::Grid) {
    const auto& grid = std::get<0>(members_);
    for (std::size_t t = 0; t < T; ++t) {
      for (Eigen::Index i = 0; i < points.rows(); ++i) {
        sum[i] += grid[t].evaluate(points.row(i).transpose());
      }
    }
  } else {
    const auto& adaptive = std::get<1>(members_);
    for (std::size_t t = 0; t < T; ++t) {
      for (Eigen::Index i = 0; i < points.rows(); ++i) {
        sum[i] += adaptive[t].evaluate(points.row(i).transpose());
      }
    }
  }
  return sum / static_cast<double>(T);
}

EnsembleModel fit_nhte(const Matrix& data, const NhteOptions& options, const Rng& root) {
  require_members(options.members);
  if (data.rows() == 0) {
    throw Error(ErrorKind::InsufficientData, "cannot fit an ensemble to an empty data set");
  }
  StretchConfig cfg{options.s_min_exp, options.s_max_exp,
                    options.reference_scale ? *options.reference_scale : reference_scale(data)};
  cfg.validate();
  std::vector<std::optional<GridEstimator>> fitted(options.members);
  parallel_for(options.members, options.threads, [&](std::size_t t) {
    Rng rng = root.substream(t);
    fitted[t].emplace(fit_grid(data, sample_transform(data.cols(), cfg, rng)));
  });
  std::vector<GridEstimator> members;
  members.reserve(fitted.size());
  for (auto& f : fitted) members.push_back(std::move(*f));
  return EnsembleModel(std::move(members));
}

EnsembleModel fit_ahte(const Matrix& data, const AhteOptions& options, const Rng& root) {
  require_members(options.members);
  if (data.rows() == 0) {
    throw Error(ErrorKind::InsufficientData, "cannot fit an ensemble to an empty data set");
  }
  std::vector<std::optional<AdaptiveMember>> fitted(options.members);
  parallel_for(options.members, options.threads, [&](std::size_t t) {
    Rng rng = root.substream(t);
    RotationMatrix rotation = options.rotate ? sample_rotation(data.cols(), rng)
                                             : RotationMatrix::identity(data.cols());
    Matrix rotated(data.rows(), data.cols());
    for (Eigen::Index i = 0; i < data.rows(); ++i) {
      rotated.row(i) = (rotation.matrix() * data.row(i).transpose()).transpose();
    }
    fitted[t].emplace(AdaptiveMember{std::move(rotation),
                                     fit_adaptive(rotated, options.min_samples_split),
                                     rng.seed()});
  });
  std::vector<AdaptiveMember> members;
  members.reserve(fitted.size());
  for (auto& f : fitted) members.push_back(std::move(*f));
  return EnsembleModel(std::move(members));
}

}  // namespace hte
