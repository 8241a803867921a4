#include "hte/synth.hpp"

#include <cmath>
#include <random>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "hte/error.hpp"

namespace hte::synth {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void validate(const Primitive& p) {
  const bool ok = std::visit(
      Overloaded{
          [](const Uniform& u) { return std::isfinite(u.a) && std::isfinite(u.b) && u.a < u.b; },
          [](const Beta& b) { return b.alpha > 0.0 && b.beta > 0.0; },
          [](const Laplace& l) { return std::isfinite(l.mu) && l.b > 0.0; },
          [](const Exponential& e) { return e.rate > 0.0 && std::isfinite(e.rate); },
      },
      p);
  if (!ok) throw Error(ErrorKind::Config, "invalid primitive distribution parameters");
}

}  // namespace

double pdf(const Primitive& p, double x) {
  return std::visit(
      Overloaded{
          [x](const Uniform& u) { return (x >= u.a && x <= u.b) ? 1.0 / (u.b - u.a) : 0.0; },
          [x](const Beta& b) {
            if (x < 0.0 || x > 1.0) return 0.0;
            if ((x == 0.0 && b.alpha > 1.0) || (x == 1.0 && b.beta > 1.0)) return 0.0;
            const double log_norm =
                std::lgamma(b.alpha + b.beta) - std::lgamma(b.alpha) - std::lgamma(b.beta);
            return std::exp(log_norm + (b.alpha - 1.0) * std::log(x) +
                            (b.beta - 1.0) * std::log1p(-x));
          },
          [x](const Laplace& l) { return std::exp(-std::abs(x - l.mu) / l.b) / (2.0 * l.b); },
          [x](const Exponential& e) { return x < 0.0 ? 0.0 : e.rate * std::exp(-e.rate * x); },
      },
      p);
}

double mean(const Primitive& p) {
  return std::visit(Overloaded{
                        [](const Uniform& u) { return 0.5 * (u.a + u.b); },
                        [](const Beta& b) { return b.alpha / (b.alpha + b.beta); },
                        [](const Laplace& l) { return l.mu; },
                        [](const Exponential& e) { return 1.0 / e.rate; },
                    },
                    p);
}

double sample(const Primitive& p, Rng& rng) {
  return std::visit(
      Overloaded{
          [&](const Uniform& u) { return u.a + (u.b - u.a) * rng.uniform(); },
          [&](const Beta& b) {
            std::gamma_distribution<double> ga(b.alpha, 1.0);
            std::gamma_distribution<double> gb(b.beta, 1.0);
            const double x = ga(rng.engine());
            const double y = gb(rng.engine());
            return x / (x + y);
          },
          [&](const Laplace& l) {
            const double u = rng.uniform() - 0.5;
            const double mag = -l.b * std::log1p(-2.0 * std::abs(u));
            return u < 0.0 ? l.mu - mag : l.mu + mag;
          },
          [&](const Exponential& e) { return -std::log1p(-rng.uniform()) / e.rate; },
      },
      p);
}

Mixture::Mixture(std::vector<Component> components) : components_(std::move(components)) {
  if (components_.empty()) throw Error(ErrorKind::Config, "mixture needs a component");
  double total = 0.0;
  for (const auto& c : components_) {
    if (!(c.weight > 0.0)) throw Error(ErrorKind::Config, "mixture weights must be positive");
    validate(c.primitive);
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorKind::Config, fmt::format("mixture weights sum to {}, not 1", total));
  }
}

double Mixture::pdf(double x) const {
  double v = 0.0;
  for (const auto& c : components_) v += c.weight * synth::pdf(c.primitive, x);
  return v;
}

double Mixture::mean() const {
  double v = 0.0;
  for (const auto& c : components_) v += c.weight * synth::mean(c.primitive);
  return v;
}

double Mixture::sample(Rng& rng) const {
  const double u = rng.uniform();
  double cumulative = 0.0;
  for (const auto& c : components_) {
    cumulative += c.weight;
    if (u < cumulative) return synth::sample(c.primitive, rng);
  }
  return synth::sample(components_.back().primitive, rng);
}

DensitySpec::DensitySpec(std::string name, SpecKind kind, std::vector<Mixture> marginals)
    : name_(std::move(name)), kind_(kind), marginals_(std::move(marginals)) {
  if (marginals_.empty()) throw Error(ErrorKind::InvalidDimension, "spec needs a dimension");
}

double DensitySpec::pdf(const Eigen::Ref<const Vector>& x) const {
  if (x.size() != dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                fmt::format("point has dimension {}, spec has {}", x.size(), dim()));
  }
  double v = 1.0;
  for (Eigen::Index i = 0; i < dim(); ++i) {
    v *= marginals_[static_cast<std::size_t>(i)].pdf(x[i]);
    if (v == 0.0) break;
  }
  return v;
}

Vector DensitySpec::pdf_rows(const Matrix& points) const {
  Vector out(points.rows());
  for (Eigen::Index i = 0; i < points.rows(); ++i) out[i] = pdf(points.row(i).transpose());
  return out;
}

Matrix DensitySpec::sample(Eigen::Index n, Rng& rng) const {
  if (n < 0) throw Error(ErrorKind::Config, "sample size must be non-negative");
  Matrix out(n, dim());
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < dim(); ++c) {
      out(r, c) = marginals_[static_cast<std::size_t>(c)].sample(rng);
    }
  }
  return out;
}

SynthType parse_type(std::string_view name) {
  if (name == "I" || name == "1") return SynthType::I;
  if (name == "II" || name == "2") return SynthType::II;
  if (name == "III" || name == "3") return SynthType::III;
  if (name == "IV" || name == "4") return SynthType::IV;
  if (name == "beta" || name == "BetaToy" || name == "beta-toy") return SynthType::BetaToy;
  throw Error(ErrorKind::Config, fmt::format("unknown synthetic type '{}'", name));
}

std::string_view type_name(SynthType type) noexcept {
  switch (type) {
    case SynthType::I: return "I";
    case SynthType::II: return "II";
    case SynthType::III: return "III";
    case SynthType::IV: return "IV";
    case SynthType::BetaToy: return "BetaToy";
  }
  return "?";
}

DensitySpec make_type(SynthType type, Eigen::Index dim) {
  if (dim < 1) {
    throw Error(ErrorKind::InvalidDimension, "synthetic densities need d >= 1");
  }
  const auto iid = [&](Mixture m) {
    return DensitySpec(std::string(type_name(type)), SpecKind::MarginalProduct,
                       std::vector<Mixture>(static_cast<std::size_t>(dim), m));
  };
  switch (type) {
    case SynthType::I:
      return iid(Mixture({{0.3, Uniform{0.7, 1.0}}, {0.7, Uniform{0.0, 0.4}}}));
    case SynthType::II:
      return iid(Mixture({{0.5, Beta{2.0, 10.0}}, {0.5, Uniform{0.5, 1.0}}}));
    case SynthType::III:
      return iid(Mixture({{0.5, Laplace{0.0, 0.5}}, {0.5, Uniform{2.0, 4.0}}}));
    case SynthType::BetaToy:
      return iid(Mixture({{1.0, Beta{3.0, 10.0}}}));
    case SynthType::IV: {
      if (dim < 2) {
        throw Error(ErrorKind::InvalidDimension,
                    "type IV needs d >= 2 (exponential dimensions plus a uniform one)");
      }
      std::vector<Mixture> marginals(static_cast<std::size_t>(dim - 1),
                                     Mixture({{1.0, Exponential{0.5}}}));
      marginals.emplace_back(std::vector<Component>{{1.0, Uniform{0.0, 5.0}}});
      return DensitySpec("IV", SpecKind::HeterogeneousProduct, std::move(marginals));
    }
  }
  throw Error(ErrorKind::Config, "unknown synthetic type");
}

nlohmann::json to_json(const DensitySpec& spec) {
  using nlohmann::json;
  json dims = json::array();
  for (Eigen::Index i = 0; i < spec.dim(); ++i) {
    json comps = json::array();
    for (const auto& c : spec.marginal(i).components()) {
      json p = std::visit(
          Overloaded{
              [](const Uniform& u) { return json{{"family", "uniform"}, {"a", u.a}, {"b", u.b}}; },
              [](const Beta& b) {
                return json{{"family", "beta"}, {"alpha", b.alpha}, {"beta", b.beta}};
              },
              [](const Laplace& l) {
                return json{{"family", "laplace"}, {"location", l.mu}, {"scale", l.b}};
              },
              [](const Exponential& e) {
                return json{{"family", "exponential"}, {"rate", e.rate}};
              },
          },
          c.primitive);
      p["weight"] = c.weight;
      comps.push_back(std::move(p));
    }
    dims.push_back(std::move(comps));
  }
  return json{{"name", spec.name()},
              {"kind", spec.kind() == SpecKind::MarginalProduct ? "mixture-of-1d-marginals-product"
                                                                : "heterogeneous-product"},
              {"exponential_parameterization", "rate"},
              {"laplace_parameterization", "location-scale"},
              {"dims", std::move(dims)}};
}

DensitySpec spec_from_json(const nlohmann::json& j) {
  try {
    std::vector<Mixture> marginals;
    for (const auto& comps : j.at("dims")) {
      std::vector<Component> components;
      for (const auto& c : comps) {
        const auto family = c.at("family").get<std::string>();
        Primitive p;
        if (family == "uniform") {
          p = Uniform{c.at("a").get<double>(), c.at("b").get<double>()};
        } else if (family == "beta") {
          p = Beta{c.at("alpha").get<double>(), c.at("beta").get<double>()};
        } else if (family == "laplace") {
          p = Laplace{c.at("location").get<double>(), c.at("scale").get<double>()};
        } else if (family == "exponential") {
          p = Exponential{c.at("rate").get<double>()};
        } else {
          throw Error(ErrorKind::Config, fmt::format("unknown family '{}'", family));
        }
        components.push_back({c.at("weight").get<double>(), p});
      }
      marginals.emplace_back(std::move(components));
    }
    const auto kind = j.at("kind").get<std::string>() == "heterogeneous-product"
                          ? SpecKind::HeterogeneousProduct
                          : SpecKind::MarginalProduct;
    return DensitySpec(j.at("name").get<std::string>(), kind, std::move(marginals));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Config, fmt::format("malformed density spec: {}", e.what()));
  }
}

}  // namespace hte::synth
