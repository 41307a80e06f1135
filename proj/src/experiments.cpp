#include "hsk/experiments.hpp"

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "hsk/errors.hpp"
#include "hsk/rng.hpp"
#include "hsk/svm.hpp"

namespace hsk {

LabeledDataset LabeledDataset::subset(const std::vector<std::size_t>& indices) const {
  LabeledDataset out;
  out.feature_names = feature_names;
  out.rows.reserve(indices.size());
  out.labels.reserve(indices.size());
  out.sample_ids.reserve(indices.size());
  for (std::size_t i : indices) {
    require(i < m(), Errc::InvalidArgument, "subset index out of range");
    out.rows.push_back(rows[i]);
    out.labels.push_back(labels[i]);
    out.sample_ids.push_back(sample_ids[i]);
  }
  return out;
}

std::vector<std::string> LabeledDataset::class_ids() const {
  std::set<std::string> uniq(labels.begin(), labels.end());
  return {uniq.begin(), uniq.end()};
}

namespace {

std::string read_whole_file(const std::string& path) {
  // gzopen reads both gzip and plain files transparently.
  gzFile f = gzopen(path.c_str(), "rb");
  require(f != nullptr, Errc::ParseError, "cannot open '" + path + "'");
  std::string content;
  char buf[1 << 16];
  int got;
  while ((got = gzread(f, buf, sizeof(buf))) > 0) content.append(buf, static_cast<std::size_t>(got));
  const bool ok = got == 0;
  gzclose(f);
  require(ok, Errc::ParseError, "read error on '" + path + "'");
  return content;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  cells.push_back(cur);
  return cells;
}

double parse_cell(const std::string& cell, std::size_t line_no, std::size_t col_no) {
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end > begin && (*(end - 1) == ' ' || *(end - 1) == '\t')) --end;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  require(ec == std::errc() && ptr == end && begin != end, Errc::ParseError,
          "non-numeric cell at line " + std::to_string(line_no) + ", column " +
              std::to_string(col_no));
  return value;
}

}  // namespace

LabeledDataset load_csv(const std::string& path, const std::string& label_column,
                        SphereMapKind map_hint) {
  const std::string content = read_whole_file(path);
  LabeledDataset data;

  std::size_t pos = 0, line_no = 0;
  std::size_t label_idx = std::numeric_limits<std::size_t>::max();
  std::size_t id_idx = std::numeric_limits<std::size_t>::max();
  std::vector<std::string> header;
  while (pos <= content.size()) {
    const std::size_t nl = content.find('\n', pos);
    const std::string line =
        content.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
    pos = nl == std::string::npos ? content.size() + 1 : nl + 1;
    if (line.empty() || line == "\r") {
      if (nl == std::string::npos) break;
      ++line_no;
      continue;
    }
    ++line_no;
    const std::vector<std::string> cells = split_csv_line(line);
    if (header.empty()) {
      header = cells;
      for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == label_column) label_idx = i;
        if (header[i] == "id") id_idx = i;
      }
      require(label_idx != std::numeric_limits<std::size_t>::max(), Errc::ParseError,
              "label column '" + label_column + "' not found in header");
      for (std::size_t i = 0; i < header.size(); ++i)
        if (i != label_idx && i != id_idx) data.feature_names.push_back(header[i]);
      continue;
    }
    require(cells.size() == header.size(), Errc::ParseError,
            "line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                " cells, header has " + std::to_string(header.size()));
    FeatureVector row;
    row.reserve(header.size() - 1);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i == label_idx) continue;
      if (i == id_idx) continue;
      const double v = parse_cell(cells[i], line_no, i + 1);
      if (map_hint == SphereMapKind::SqrtL1)
        require(v >= 0.0, Errc::NegativeValueForCountData,
                "negative value at line " + std::to_string(line_no) + ", column " +
                    std::to_string(i + 1) + " under a sqrt-L1 map hint");
      row.push_back(v);
    }
    data.rows.push_back(std::move(row));
    data.labels.push_back(cells[label_idx]);
    data.sample_ids.push_back(id_idx != std::numeric_limits<std::size_t>::max()
                                  ? cells[id_idx]
                                  : "r" + std::to_string(data.rows.size() - 1));
  }
  require(data.m() >= 1, Errc::ParseError, "no data rows in '" + path + "'");
  return data;
}

namespace {

double sq_dist(const FeatureVector& a, const FeatureVector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

// Lloyd iteration with k-means++ seeding; returns centroids.
std::vector<FeatureVector> kmeans(const std::vector<FeatureVector>& points, std::size_t k,
                                  std::mt19937_64& rng) {
  const std::size_t m = points.size();
  const std::size_t n = points[0].size();

  std::vector<FeatureVector> centroids;
  centroids.reserve(k);
  std::uniform_int_distribution<std::size_t> uniform(0, m - 1);
  centroids.push_back(points[uniform(rng)]);
  std::vector<double> best_d(m, std::numeric_limits<double>::infinity());
  while (centroids.size() < k) {
    for (std::size_t i = 0; i < m; ++i)
      best_d[i] = std::min(best_d[i], sq_dist(points[i], centroids.back()));
    std::discrete_distribution<std::size_t> pick(best_d.begin(), best_d.end());
    centroids.push_back(points[pick(rng)]);
  }

  std::vector<std::size_t> assign(m, k);
  for (int iter = 0; iter < 300; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < m; ++i) {
      std::size_t best = 0;
      double bd = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < k; ++c) {
        const double d = sq_dist(points[i], centroids[c]);
        if (d < bd) {
          bd = d;
          best = c;
        }
      }
      if (assign[i] != best) {
        assign[i] = best;
        changed = true;
      }
    }
    if (!changed) break;
    std::vector<std::size_t> counts(k, 0);
    for (auto& c : centroids) c.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      ++counts[assign[i]];
      for (std::size_t j = 0; j < n; ++j) centroids[assign[i]][j] += points[i][j];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) {
        // Re-seed an emptied cluster at the point farthest from its centroid.
        std::size_t far = 0;
        double fd = -1.0;
        for (std::size_t i = 0; i < m; ++i) {
          const double d = sq_dist(points[i], centroids[assign[i]]);
          if (d > fd) {
            fd = d;
            far = i;
          }
        }
        centroids[c] = points[far];
      } else {
        for (std::size_t j = 0; j < n; ++j) centroids[c][j] /= static_cast<double>(counts[c]);
      }
    }
  }
  return centroids;
}

}  // namespace

std::vector<std::string> select_representatives(const LabeledDataset& data,
                                                const std::string& class_id, std::size_t m_r,
                                                int runs, std::uint64_t seed) {
  require(m_r >= 1, Errc::InvalidArgument, "select_representatives: m_r must be >= 1");
  require(runs >= 1, Errc::InvalidArgument, "select_representatives: runs must be >= 1");
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < data.m(); ++i)
    if (data.labels[i] == class_id) members.push_back(i);
  require(members.size() >= m_r, Errc::ClassTooSmall,
          "class '" + class_id + "' has " + std::to_string(members.size()) + " samples, need " +
              std::to_string(m_r));

  std::vector<std::string> member_ids;
  member_ids.reserve(members.size());
  for (std::size_t i : members) member_ids.push_back(data.sample_ids[i]);
  if (members.size() == m_r) {
    std::sort(member_ids.begin(), member_ids.end());
    return member_ids;
  }

  std::vector<FeatureVector> points;
  points.reserve(members.size());
  for (std::size_t i : members) points.push_back(data.rows[i]);

  std::map<std::string, int> frequency;
  for (int run = 0; run < runs; ++run) {
    std::mt19937_64 rng = make_engine(seed, static_cast<std::uint64_t>(run));
    const std::vector<FeatureVector> centroids = kmeans(points, m_r, rng);
    for (const FeatureVector& c : centroids) {
      std::size_t nearest = 0;
      double bd = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < points.size(); ++i) {
        const double d = sq_dist(points[i], c);
        if (d < bd) {
          bd = d;
          nearest = i;
        }
      }
      ++frequency[member_ids[nearest]];
    }
  }

  // Top m_r by frequency; ties by sample id order.
  std::vector<std::pair<int, std::string>> ranked;
  ranked.reserve(frequency.size());
  for (const auto& [id, f] : frequency) ranked.emplace_back(-f, id);
  std::sort(ranked.begin(), ranked.end());
  std::vector<std::string> chosen;
  for (std::size_t i = 0; i < ranked.size() && chosen.size() < m_r; ++i)
    chosen.push_back(ranked[i].second);
  if (chosen.size() < m_r) {
    // Degenerate clustering can concentrate on fewer ids than m_r; pad from
    // the remaining class ids in id order.
    std::set<std::string> have(chosen.begin(), chosen.end());
    std::sort(member_ids.begin(), member_ids.end());
    for (const std::string& id : member_ids) {
      if (chosen.size() == m_r) break;
      if (!have.count(id)) chosen.push_back(id);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

std::vector<std::vector<std::size_t>> stratified_kfold(const std::vector<std::string>& labels,
                                                       int k, std::uint64_t seed) {
  require(k >= 2, Errc::InvalidArgument, "stratified_kfold: k must be >= 2");
  std::map<std::string, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);

  std::vector<std::vector<std::size_t>> folds(static_cast<std::size_t>(k));
  std::uint64_t class_stream = 0;
  for (auto& [cls, members] : by_class) {
    require(members.size() >= static_cast<std::size_t>(k), Errc::ClassSmallerThanK,
            "class '" + cls + "' has " + std::to_string(members.size()) + " < k = " +
                std::to_string(k) + " samples");
    std::mt19937_64 rng = make_engine(seed, class_stream++);
    std::shuffle(members.begin(), members.end(), rng);
    for (std::size_t j = 0; j < members.size(); ++j)
      folds[j % static_cast<std::size_t>(k)].push_back(members[j]);
  }
  for (auto& fold : folds) std::sort(fold.begin(), fold.end());
  return folds;
}

namespace {

std::vector<int> encode_labels(const LabeledDataset& data) {
  const std::vector<std::string> classes = data.class_ids();
  std::map<std::string, int> code;
  for (std::size_t i = 0; i < classes.size(); ++i) code[classes[i]] = static_cast<int>(i);
  std::vector<int> out;
  out.reserve(data.m());
  for (const std::string& l : data.labels) out.push_back(code[l]);
  return out;
}

double fold_accuracy(const GramMatrix& gram, const std::vector<int>& labels,
                     const std::vector<std::size_t>& test, double C) {
  std::vector<std::size_t> train_idx;
  std::vector<bool> in_test(gram.m, false);
  for (std::size_t i : test) in_test[i] = true;
  for (std::size_t i = 0; i < gram.m; ++i)
    if (!in_test[i]) train_idx.push_back(i);

  GramMatrix sub;
  sub.m = train_idx.size();
  sub.spec = gram.spec;
  sub.entries.resize(sub.m * sub.m);
  sub.sample_ids.reserve(sub.m);
  std::vector<int> sub_labels(sub.m);
  for (std::size_t r = 0; r < sub.m; ++r) {
    sub.sample_ids.push_back(gram.sample_ids[train_idx[r]]);
    sub_labels[r] = labels[train_idx[r]];
    for (std::size_t c = 0; c < sub.m; ++c)
      sub.at(r, c) = gram.at(train_idx[r], train_idx[c]);
  }

  const MulticlassModel model = train_multiclass(sub, sub_labels, C);
  std::size_t correct = 0;
  std::vector<double> k_row(sub.m);
  for (std::size_t t : test) {
    for (std::size_t r = 0; r < sub.m; ++r) k_row[r] = gram.at(t, train_idx[r]);
    if (predict_multiclass(model, k_row) == labels[t]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(test.size());
}

}  // namespace

CvReport grid_search_cv(const LabeledDataset& data, const std::vector<GridPoint>& grid, int folds,
                        std::uint64_t seed) {
  require(!grid.empty(), Errc::InvalidArgument, "grid_search_cv: empty grid");
  require(data.class_ids().size() >= 2, Errc::InvalidParams,
          "grid_search_cv needs at least two classes");
  const std::vector<std::vector<std::size_t>> test_folds =
      stratified_kfold(data.labels, folds, derive_seed(seed, 0xf01d5));
  const std::vector<int> labels = encode_labels(data);

  CvReport report;
  report.folds = folds;
  report.seed = seed;
  for (const GridPoint& point : grid) {
    const GramMatrix gram = gram_matrix(point.spec, data.rows, data.sample_ids);
    CvPointResult result;
    result.point = point;
    double sum = 0.0;
    for (const auto& test : test_folds) {
      const double acc = fold_accuracy(gram, labels, test, point.C);
      result.fold_accuracy.push_back(acc);
      sum += acc;
    }
    result.mean_accuracy = sum / static_cast<double>(folds);
    report.points.push_back(std::move(result));
  }
  for (std::size_t i = 1; i < report.points.size(); ++i)
    if (report.points[i].mean_accuracy > report.points[report.best_index].mean_accuracy)
      report.best_index = i;
  return report;
}

std::vector<double> default_t_star_grid() { return {0.25, 0.5, 1.0, 2.0, 4.0}; }

double median_heuristic_gamma(const LabeledDataset& data) {
  std::vector<double> dists;
  const std::size_t m = data.m();
  dists.reserve(m * (m - 1) / 2);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) dists.push_back(sq_dist(data.rows[i], data.rows[j]));
  if (dists.empty()) return 1.0;
  std::nth_element(dists.begin(), dists.begin() + dists.size() / 2, dists.end());
  const double med = dists[dists.size() / 2];
  return med > 0.0 ? 1.0 / med : 1.0;
}

std::vector<GridPoint> make_grid(KernelKind kind, SphereMapKind map, const LabeledDataset& data,
                                 const std::vector<double>& t_star_grid,
                                 const std::vector<double>& C_grid) {
  require(!C_grid.empty(), Errc::InvalidArgument, "make_grid: empty C grid");
  const int n = static_cast<int>(data.n());
  std::vector<GridPoint> grid;
  const auto push = [&](KernelSpec spec) {
    for (double C : C_grid) grid.push_back({spec, C});
  };
  switch (kind) {
    case KernelKind::Linear:
    case KernelKind::Cosine: {
      KernelSpec spec;
      spec.kind = kind;
      spec.map = is_hyperspherical(kind) ? map : SphereMapKind::None;
      push(spec);
      break;
    }
    case KernelKind::GaussianRbf: {
      require(!t_star_grid.empty(), Errc::InvalidArgument, "make_grid: empty scale grid");
      const double gamma0 = median_heuristic_gamma(data);
      for (double scale : t_star_grid) {
        KernelSpec spec;
        spec.kind = kind;
        spec.gamma = gamma0 * scale;
        push(spec);
      }
      break;
    }
    case KernelKind::Parametrix:
    case KernelKind::ExactHeat: {
      require(!t_star_grid.empty(), Errc::InvalidArgument, "make_grid: empty t* grid");
      for (double t_star : t_star_grid) {
        KernelSpec spec;
        spec.kind = kind;
        spec.map = map;
        spec.t = sweet_spot_time(n, t_star);
        if (kind == KernelKind::ExactHeat) spec.n = n;
        push(spec);
      }
      break;
    }
  }
  return grid;
}

BalancedRunResult balanced_cv_run(const LabeledDataset& data, KernelKind kind, SphereMapKind map,
                                  const std::vector<double>& t_star_grid,
                                  const std::vector<double>& C_grid, std::size_t m_r, int folds,
                                  int kmeans_runs, std::uint64_t seed) {
  BalancedRunResult out;
  const LabeledDataset* working = &data;
  LabeledDataset balanced;
  if (m_r > 0) {
    std::set<std::string> keep;
    const std::vector<std::string> classes = data.class_ids();
    for (std::size_t c = 0; c < classes.size(); ++c) {
      const auto ids =
          select_representatives(data, classes[c], m_r, kmeans_runs, derive_seed(seed, c + 1));
      keep.insert(ids.begin(), ids.end());
    }
    std::vector<std::size_t> indices;
    for (std::size_t i = 0; i < data.m(); ++i)
      if (keep.count(data.sample_ids[i])) indices.push_back(i);
    balanced = data.subset(indices);
    working = &balanced;
    out.kept_ids.assign(keep.begin(), keep.end());
  } else {
    out.kept_ids = data.sample_ids;
  }
  const std::vector<GridPoint> grid = make_grid(kind, map, *working, t_star_grid, C_grid);
  out.report = grid_search_cv(*working, grid, folds, derive_seed(seed, 0xcf));
  return out;
}

}  // namespace hsk
