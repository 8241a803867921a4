#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hte/rng.hpp"
#include "hte/types.hpp"

namespace hte::synth {

struct Uniform {
  double a;
  double b;
};
struct Beta {
  double alpha;
  double beta;
};
/// Location mu, scale b.
struct Laplace {
  double mu;
  double b;
};
/// Rate parameterization: mean 1/rate.
struct Exponential {
  double rate;
};

using Primitive = std::variant<Uniform, Beta, Laplace, Exponential>;

double pdf(const Primitive& p, double x);
double mean(const Primitive& p);
double sample(const Primitive& p, Rng& rng);

struct Component {
  double weight;
  Primitive primitive;
};

/// One-dimensional finite mixture.
class Mixture {
public:
  explicit Mixture(std::vector<Component> components);

  const std::vector<Component>& components() const noexcept { return components_; }
  double pdf(double x) const;
  double mean() const;
  double sample(Rng& rng) const;

private:
  std::vector<Component> components_;
};

enum class SpecKind { MarginalProduct, HeterogeneousProduct };

/// Product of independent one-dimensional mixtures.
class DensitySpec {
public:
  DensitySpec(std::string name, SpecKind kind, std::vector<Mixture> marginals);

  const std::string& name() const noexcept { return name_; }
  SpecKind kind() const noexcept { return kind_; }
  Eigen::Index dim() const noexcept { return static_cast<Eigen::Index>(marginals_.size()); }
  const Mixture& marginal(Eigen::Index i) const { return marginals_.at(static_cast<std::size_t>(i)); }

  double pdf(const Eigen::Ref<const Vector>& x) const;
  Vector pdf_rows(const Matrix& points) const;
  /// n×d iid draws; each coordinate picks a component, then samples it.
  Matrix sample(Eigen::Index n, Rng& rng) const;

private:
  std::string name_;
  SpecKind kind_;
  std::vector<Mixture> marginals_;
};

enum class SynthType { I, II, III, IV, BetaToy };

SynthType parse_type(std::string_view name);
std::string_view type_name(SynthType type) noexcept;

/// Type I–III: iid mixture marginals. Type IV: d−1 Exponential(rate 0.5)
/// dimensions times Uniform(0, 5) in the last one (needs d ≥ 2).
/// BetaToy: iid Beta(3, 10) marginals.
DensitySpec make_type(SynthType type, Eigen::Index dim);

nlohmann::json to_json(const DensitySpec& spec);
DensitySpec spec_from_json(const nlohmann::json& j);

}  // namespace hte::synth
