#include "hte/datapipe.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "hte/error.hpp"
#include "hte/stats.hpp"

namespace hte::data {

namespace {

std::vector<std::string> split_line(const std::string& line, char delimiter) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, delimiter)) cells.push_back(cell);
  if (!line.empty() && line.back() == delimiter) cells.emplace_back();
  return cells;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\"");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\"");
  return s.substr(first, last - first + 1);
}

Dataset select_columns(const Dataset& ds, const std::vector<Eigen::Index>& keep) {
  Dataset out;
  out.rows.resize(ds.rows.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) {
    out.rows.col(static_cast<Eigen::Index>(j)) = ds.rows.col(keep[j]);
    out.column_names.push_back(ds.column_names.at(static_cast<std::size_t>(keep[j])));
  }
  out.provenance = ds.provenance;
  return out;
}

double pearson(const Matrix& m, Eigen::Index a, Eigen::Index b) {
  const auto ca = (m.col(a).array() - m.col(a).mean()).matrix();
  const auto cb = (m.col(b).array() - m.col(b).mean()).matrix();
  const double denom = std::sqrt(ca.squaredNorm() * cb.squaredNorm());
  return denom > 0.0 ? ca.dot(cb) / denom : 0.0;
}

}  // namespace

Dataset parse_csv(std::istream& in, const CsvOptions& options, const std::string& source) {
  std::string line;
  std::vector<std::string> names;
  std::size_t line_no = 0;
  if (options.header) {
    if (!std::getline(in, line)) throw Error(ErrorKind::Parse, source + ": empty file");
    ++line_no;
    for (const auto& c : split_line(line, options.delimiter)) names.push_back(trim(c));
  }
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_line(line, options.delimiter);
    if (names.empty() && rows.empty()) {
      for (std::size_t j = 0; j < cells.size(); ++j) names.push_back(fmt::format("x{}", j));
    }
    if (cells.size() != names.size()) {
      throw Error(ErrorKind::Parse, fmt::format("{}:{}: expected {} fields, found {}", source,
                                                line_no, names.size(), cells.size()));
    }
    std::vector<double> row(cells.size());
    for (std::size_t j = 0; j < cells.size(); ++j) {
      const std::string cell = trim(cells[j]);
      const char* end = cell.data() + cell.size();
      const auto [ptr, ec] = std::from_chars(cell.data(), end, row[j]);
      if (cell.empty() || ec != std::errc() || ptr != end || !std::isfinite(row[j])) {
        throw Error(ErrorKind::Parse,
                    fmt::format("{}: row {}, column {} ('{}'): not a finite number '{}'", source,
                                line_no, j + 1, names[j], cell));
      }
    }
    rows.push_back(std::move(row));
  }

  Dataset full;
  full.column_names = names;
  full.rows.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(names.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < names.size(); ++j) {
      full.rows(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }

  std::vector<Eigen::Index> keep;
  std::vector<std::string> dropped;
  for (std::size_t j = 0; j < names.size(); ++j) {
    const bool drop = std::any_of(options.drop_columns.begin(), options.drop_columns.end(),
                                  [&](const std::string& d) {
                                    return d == names[j] || d == std::to_string(j);
                                  });
    if (drop) {
      dropped.push_back(names[j]);
    } else {
      keep.push_back(static_cast<Eigen::Index>(j));
    }
  }
  for (const auto& d : options.drop_columns) {
    bool known = false;
    for (std::size_t j = 0; j < names.size(); ++j) {
      known = known || d == names[j] || d == std::to_string(j);
    }
    if (!known) throw Error(ErrorKind::Config, fmt::format("no column '{}' to drop", d));
  }
  Dataset out = select_columns(full, keep);
  out.provenance.push_back({{"step", "load_csv"},
                            {"source", source},
                            {"rows", out.rows.rows()},
                            {"columns", out.column_names},
                            {"dropped", dropped},
                            {"delimiter", std::string(1, options.delimiter)},
                            {"header", options.header}});
  return out;
}

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, fmt::format("cannot open '{}'", path.string()));
  return parse_csv(in, options, path.string());
}

void export_csv(const Dataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, fmt::format("cannot write '{}'", path.string()));
  for (std::size_t j = 0; j < ds.column_names.size(); ++j) {
    out << (j ? "," : "") << ds.column_names[j];
  }
  out << '\n';
  for (Eigen::Index i = 0; i < ds.rows.rows(); ++i) {
    for (Eigen::Index j = 0; j < ds.rows.cols(); ++j) {
      out << (j ? "," : "") << fmt::format("{:.17g}", ds.rows(i, j));
    }
    out << '\n';
  }
  std::ofstream side(path.string() + ".provenance.json");
  if (!side) throw Error(ErrorKind::Io, "cannot write provenance sidecar");
  side << ds.provenance.dump(2) << '\n';
}

Dataset prune_correlated(const Dataset& ds, double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw Error(ErrorKind::Config, "correlation threshold must lie in (0, 1]");
  }
  std::vector<Eigen::Index> keep(static_cast<std::size_t>(ds.dim()));
  std::iota(keep.begin(), keep.end(), Eigen::Index{0});
  nlohmann::json drops = nlohmann::json::array();
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < keep.size() && !changed; ++a) {
      for (std::size_t b = a + 1; b < keep.size(); ++b) {
        const double r = pearson(ds.rows, keep[a], keep[b]);
        if (std::abs(r) > threshold) {
          drops.push_back({{"dropped", ds.column_names[static_cast<std::size_t>(keep[b])]},
                           {"kept", ds.column_names[static_cast<std::size_t>(keep[a])]},
                           {"pearson", r}});
          keep.erase(keep.begin() + static_cast<std::ptrdiff_t>(b));
          changed = true;
          break;
        }
      }
    }
  }
  Dataset out = select_columns(ds, keep);
  out.provenance.push_back(
      {{"step", "prune_correlated"}, {"threshold", threshold}, {"drops", drops}});
  return out;
}

Dataset normalize_unit(const Dataset& ds) {
  Dataset out = ds;
  nlohmann::json columns = nlohmann::json::array();
  nlohmann::json warnings = nlohmann::json::array();
  for (Eigen::Index j = 0; j < out.dim(); ++j) {
    const double lo = out.rows.col(j).minCoeff();
    const double hi = out.rows.col(j).maxCoeff();
    if (hi > lo) {
      out.rows.col(j) = ((out.rows.col(j).array() - lo) / (hi - lo)).matrix();
    } else {
      out.rows.col(j).setZero();
      warnings.push_back(fmt::format("column '{}' is constant; set to 0",
                                     out.column_names[static_cast<std::size_t>(j)]));
    }
    columns.push_back({{"min", lo}, {"max", hi}});
  }
  out.provenance.push_back(
      {{"step", "normalize_unit"}, {"columns", columns}, {"warnings", warnings}});
  return out;
}

Dataset pca_reduce(const Dataset& ds, Eigen::Index k) {
  if (k < 1 || k > ds.dim()) {
    throw Error(ErrorKind::Config,
                fmt::format("PCA target dimension {} must lie in [1, {}]", k, ds.dim()));
  }
  const Matrix cov = sample_covariance(ds.rows);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(cov);
  // Eigenvalues ascend; take the last k in descending order.
  const Eigen::Index d = ds.dim();
  Matrix basis(d, k);
  std::vector<double> explained;
  const double total = eig.eigenvalues().sum();
  for (Eigen::Index c = 0; c < k; ++c) {
    Vector v = eig.eigenvectors().col(d - 1 - c);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v[arg] < 0.0) v = -v;
    basis.col(c) = v;
    explained.push_back(total > 0.0 ? std::max(eig.eigenvalues()[d - 1 - c], 0.0) / total : 0.0);
  }
  Dataset out;
  out.rows = (ds.rows.rowwise() - ds.rows.colwise().mean()) * basis;
  for (Eigen::Index c = 0; c < k; ++c) out.column_names.push_back(fmt::format("pc{}", c + 1));
  out.provenance = ds.provenance;
  out.provenance.push_back(
      {{"step", "pca_reduce"}, {"k", k}, {"explained_variance_ratio", explained}});
  return out;
}

Matrix take_rows(const Matrix& m, const std::vector<Eigen::Index>& indices) {
  Matrix out(static_cast<Eigen::Index>(indices.size()), m.cols());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = m.row(indices[i]);
  }
  return out;
}

std::vector<Dataset> split(const Dataset& ds, const std::vector<double>& fractions, Rng& rng) {
  if (fractions.size() < 2) throw Error(ErrorKind::Config, "split needs at least two parts");
  double total = 0.0;
  for (double f : fractions) {
    if (!(f >= 0.0)) throw Error(ErrorKind::Config, "split fractions must be non-negative");
    total += f;
  }
  if (std::abs(total - 1.0) > 1e-9) throw Error(ErrorKind::Config, "split fractions must sum to 1");

  const auto n = static_cast<std::size_t>(ds.size());
  std::vector<Eigen::Index> perm(n);
  std::iota(perm.begin(), perm.end(), Eigen::Index{0});
  // Fisher-Yates with the library's own uniform so the order is portable.
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform() * static_cast<double>(i));
    std::swap(perm[i - 1], perm[std::min(j, i - 1)]);
  }
  std::vector<std::size_t> sizes(fractions.size());
  std::size_t assigned = 0;
  for (std::size_t p = 1; p < fractions.size(); ++p) {
    sizes[p] = static_cast<std::size_t>(std::llround(fractions[p] * static_cast<double>(n)));
    assigned += sizes[p];
  }
  if (assigned > n) throw Error(ErrorKind::Config, "split fractions exceed the data size");
  sizes[0] = n - assigned;

  std::vector<Dataset> parts;
  std::size_t offset = 0;
  for (std::size_t p = 0; p < fractions.size(); ++p) {
    std::vector<Eigen::Index> idx(perm.begin() + static_cast<std::ptrdiff_t>(offset),
                                  perm.begin() + static_cast<std::ptrdiff_t>(offset + sizes[p]));
    offset += sizes[p];
    Dataset part;
    part.rows = take_rows(ds.rows, idx);
    part.column_names = ds.column_names;
    part.provenance = ds.provenance;
    part.provenance.push_back({{"step", "split"},
                               {"part", p},
                               {"fractions", fractions},
                               {"rows", idx.size()},
                               {"seed", rng.seed()}});
    parts.push_back(std::move(part));
  }
  return parts;
}

}  // namespace hte::data
