#include "hte/serialize.hpp"

#include <deque>
#include <fstream>
#include <memory>

#include <fmt/format.h>

#include "hte/error.hpp"

namespace hte {

Vector evaluate_rows(const DensityModel& model, const Matrix& points) {
  return std::visit([&](const auto& m) { return m.evaluate_rows(points); }, model);
}

Eigen::Index model_dim(const DensityModel& model) {
  return std::visit([](const auto& m) { return m.dim(); }, model);
}

std::string model_method(const DensityModel& model) {
  if (const auto* e = std::get_if<EnsembleModel>(&model)) return to_string(e->kind());
  return "kde";
}

}  // namespace hte

namespace hte::io {

using nlohmann::json;

namespace {

json matrix_rows(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const Vector& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

Vector vector_from(const json& j, Eigen::Index expected) {
  const auto values = j.get<std::vector<double>>();
  if (static_cast<Eigen::Index>(values.size()) != expected) {
    throw Error(ErrorKind::DimensionMismatch, "vector length does not match dimension");
  }
  return Eigen::Map<const Vector>(values.data(), expected);
}

/// Row-major flat list of d·d entries.
json rotation_json(const RotationMatrix& r) {
  json flat = json::array();
  for (Eigen::Index i = 0; i < r.dim(); ++i)
    for (Eigen::Index j = 0; j < r.dim(); ++j) flat.push_back(r.matrix()(i, j));
  return flat;
}

RotationMatrix rotation_from(const json& j, Eigen::Index d) {
  const auto flat = j.get<std::vector<double>>();
  if (static_cast<Eigen::Index>(flat.size()) != d * d) {
    throw Error(ErrorKind::DimensionMismatch, "rotation has the wrong number of entries");
  }
  Matrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j2 = 0; j2 < d; ++j2) m(i, j2) = flat[static_cast<std::size_t>(i * d + j2)];
  return RotationMatrix::from_matrix(std::move(m));
}

void require_version(const json& j, const char* version) {
  if (j.value("version", std::string{}) != version) {
    throw Error(ErrorKind::Parse, fmt::format("expected a '{}' record", version));
  }
}

template <typename Fn>
auto guarded(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, fmt::format("malformed model JSON: {}", e.what()));
  }
}

void emit_preorder(const AdaptiveTree& tree, std::size_t i, json& out) {
  const auto& node = tree.nodes()[i];
  if (node.is_leaf()) {
    out.push_back({{"count", node.count}, {"status", to_string(node.status)}});
    return;
  }
  out.push_back({{"dim", node.split_dim}, {"value", node.split_value}, {"count", node.count}});
  emit_preorder(tree, static_cast<std::size_t>(node.lower), out);
  emit_preorder(tree, static_cast<std::size_t>(node.upper), out);
}

LeafStatus status_from(const std::string& s) {
  if (s == "small") return LeafStatus::Small;
  if (s == "zero-range") return LeafStatus::ZeroRange;
  if (s == "empty-child") return LeafStatus::EmptyChild;
  throw Error(ErrorKind::Parse, fmt::format("unknown leaf status '{}'", s));
}

struct ParsedNode {
  AdaptiveTree::Node node;
  std::unique_ptr<ParsedNode> lower;
  std::unique_ptr<ParsedNode> upper;
};

std::unique_ptr<ParsedNode> parse_preorder(const json& list, std::size_t& pos, int depth) {
  if (pos >= list.size() || depth > 100000) {
    throw Error(ErrorKind::Parse, "truncated pre-order node list");
  }
  const json& j = list[pos++];
  auto out = std::make_unique<ParsedNode>();
  out->node.count = j.at("count").get<std::uint64_t>();
  if (j.contains("dim")) {
    out->node.split_dim = j.at("dim").get<int>();
    out->node.split_value = j.at("value").get<double>();
    out->node.status = LeafStatus::Internal;
    out->lower = parse_preorder(list, pos, depth + 1);
    out->upper = parse_preorder(list, pos, depth + 1);
  } else {
    out->node.status = status_from(j.at("status").get<std::string>());
  }
  return out;
}

}  // namespace

json to_json(const HistogramTransform& t) {
  json j{{"d", t.dim()},
         {"R", rotation_json(t.rotation())},
         {"s", vector_json(t.stretch().scale)},
         {"b", vector_json(t.translation())}};
  j["seed"] = t.seed() ? json(*t.seed()) : json(nullptr);
  return j;
}

HistogramTransform transform_from_json(const json& j) {
  return guarded([&] {
    const auto d = j.at("d").get<Eigen::Index>();
    std::optional<std::uint64_t> seed;
    if (j.contains("seed") && !j.at("seed").is_null()) seed = j.at("seed").get<std::uint64_t>();
    return HistogramTransform(rotation_from(j.at("R"), d),
                              StretchVector::from_scale(vector_from(j.at("s"), d)),
                              vector_from(j.at("b"), d), seed);
  });
}

json to_json(const GridEstimator& e) {
  json cells = json::array();
  for (const auto& [key, count] : e.sorted_cells()) cells.push_back(json::array({key, count}));
  return {{"version", kGridVersion},
          {"transform", to_json(e.transform())},
          {"n", e.sample_count()},
          {"cells", std::move(cells)}};
}

GridEstimator grid_from_json(const json& j) {
  return guarded([&] {
    require_version(j, kGridVersion);
    CellCounts counts;
    for (const auto& cell : j.at("cells")) {
      counts.emplace(cell.at(0).get<CellKey>(), cell.at(1).get<std::uint64_t>());
    }
    return GridEstimator(transform_from_json(j.at("transform")), std::move(counts),
                         j.at("n").get<std::uint64_t>());
  });
}

json to_json(const AdaptiveMember& m) {
  json nodes = json::array();
  emit_preorder(m.tree, 0, nodes);
  json j{{"version", kTreeVersion},
         {"d", m.tree.dim()},
         {"R", rotation_json(m.rotation)},
         {"n", m.tree.sample_count()},
         {"min_samples_split", m.tree.min_samples_split()},
         {"root_box", {{"lo", vector_json(m.tree.root_box().lo)},
                       {"hi", vector_json(m.tree.root_box().hi)}}},
         {"nodes", std::move(nodes)}};
  j["seed"] = m.seed ? json(*m.seed) : json(nullptr);
  return j;
}

AdaptiveMember adaptive_from_json(const json& j) {
  return guarded([&] {
    require_version(j, kTreeVersion);
    const auto d = j.at("d").get<Eigen::Index>();
    std::size_t pos = 0;
    const json& list = j.at("nodes");
    auto root = parse_preorder(list, pos, 0);
    if (pos != list.size()) throw Error(ErrorKind::Parse, "trailing nodes after the tree");

    // Renumber breadth-first, lower child first, matching fit_adaptive.
    std::vector<AdaptiveTree::Node> nodes;
    std::deque<ParsedNode*> queue{root.get()};
    while (!queue.empty()) {
      ParsedNode* p = queue.front();
      queue.pop_front();
      AdaptiveTree::Node node = p->node;
      if (p->lower) {
        const auto next = static_cast<std::int32_t>(nodes.size() + queue.size() + 1);
        node.lower = next;
        node.upper = next + 1;
        queue.push_back(p->lower.get());
        queue.push_back(p->upper.get());
      }
      nodes.push_back(node);
    }
    std::optional<std::uint64_t> seed;
    if (j.contains("seed") && !j.at("seed").is_null()) seed = j.at("seed").get<std::uint64_t>();
    Box box{vector_from(j.at("root_box").at("lo"), d), vector_from(j.at("root_box").at("hi"), d)};
    return AdaptiveMember{rotation_from(j.at("R"), d),
                          AdaptiveTree(std::move(box), std::move(nodes),
                                       j.at("n").get<std::uint64_t>(),
                                       j.at("min_samples_split").get<std::uint64_t>()),
                          seed};
  });
}

json to_json(const KdeModel& m) {
  return {{"version", kKdeVersion},
          {"d", m.dim()},
          {"bandwidth_rule", "scott"},
          {"points", matrix_rows(m.points())}};
}

KdeModel kde_from_json(const json& j) {
  return guarded([&] {
    require_version(j, kKdeVersion);
    const auto d = j.at("d").get<Eigen::Index>();
    const auto rows = j.at("points").get<std::vector<std::vector<double>>>();
    Matrix points(static_cast<Eigen::Index>(rows.size()), d);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      points.row(static_cast<Eigen::Index>(i)) = vector_from(json(rows[i]), d).transpose();
    }
    return fit_kde(points);
  });
}

json to_json(const DensityModel& m) {
  json j{{"format", kModelFormat}, {"method", model_method(m)}, {"d", model_dim(m)}};
  if (const auto* kde = std::get_if<KdeModel>(&m)) {
    j["members"] = json::array({to_json(*kde)});
    return j;
  }
  const auto& e = std::get<EnsembleModel>(m);
  json members = json::array();
  if (e.kind() == EnsembleKind::Grid) {
    for (const auto& g : e.grid_members()) members.push_back(to_json(g));
  } else {
    for (const auto& a : e.adaptive_members()) members.push_back(to_json(a));
  }
  j["members"] = std::move(members);
  return j;
}

DensityModel model_from_json(const json& j) {
  return guarded([&]() -> DensityModel {
    if (j.value("format", std::string{}) != kModelFormat) {
      throw Error(ErrorKind::Parse, "not an hte-model file");
    }
    const auto method = j.at("method").get<std::string>();
    const json& members = j.at("members");
    if (method == "kde") return kde_from_json(members.at(0));
    if (method == "nhte") {
      std::vector<GridEstimator> grid;
      for (const auto& m : members) grid.push_back(grid_from_json(m));
      return EnsembleModel(std::move(grid));
    }
    if (method == "ahte") {
      std::vector<AdaptiveMember> adaptive;
      for (const auto& m : members) adaptive.push_back(adaptive_from_json(m));
      return EnsembleModel(std::move(adaptive));
    }
    throw Error(ErrorKind::Parse, fmt::format("unknown model method '{}'", method));
  });
}

void save_model(const DensityModel& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, fmt::format("cannot write '{}'", path.string()));
  out << to_json(m).dump() << '\n';
}

DensityModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, fmt::format("cannot open '{}'", path.string()));
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, fmt::format("{}: {}", path.string(), e.what()));
  }
  return model_from_json(j);
}

}  // namespace hte::io
