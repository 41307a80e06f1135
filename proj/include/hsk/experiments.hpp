#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hsk/kernel.hpp"

namespace hsk {

struct LabeledDataset {
  std::vector<FeatureVector> rows;  // m x n, sample major
  std::vector<std::string> labels;
  std::vector<std::string> feature_names;
  std::vector<std::string> sample_ids;

  std::size_t m() const noexcept { return rows.size(); }
  std::size_t n() const noexcept { return rows.empty() ? 0 : rows[0].size(); }

  LabeledDataset subset(const std::vector<std::size_t>& indices) const;
  std::vector<std::string> class_ids() const;  // sorted unique labels
};

// CSV with a header row; the label column is removed from the features, an
// "id" column (if present) provides sample ids. Transparent gzip via zlib.
// map_hint = SqrtL1 additionally rejects negative feature values.
LabeledDataset load_csv(const std::string& path, const std::string& label_column,
                        SphereMapKind map_hint = SphereMapKind::None);

// KMeans-based class balancing: run KMeans (k-means++ seeding, Lloyd with a
// 300-iteration cap) `runs` times with distinct sub-seeds; each run
// contributes the sample nearest each centroid; the m_r most frequently
// chosen ids win, frequency ties broken by id order.
std::vector<std::string> select_representatives(const LabeledDataset& data,
                                                const std::string& class_id, std::size_t m_r,
                                                int runs, std::uint64_t seed);

// Per-class shuffled round-robin assignment; returns k disjoint test index
// sets partitioning all samples, per-class counts differing by <= 1.
std::vector<std::vector<std::size_t>> stratified_kfold(const std::vector<std::string>& labels,
                                                       int k, std::uint64_t seed);

struct GridPoint {
  KernelSpec spec;
  double C = 1.0;
};

struct CvPointResult {
  GridPoint point;
  std::vector<double> fold_accuracy;
  double mean_accuracy = 0.0;
};

struct CvReport {
  std::vector<CvPointResult> points;
  std::size_t best_index = 0;
  int folds = 5;
  std::uint64_t seed = 0;
};

// Grid search with one Gram build per grid point and fold evaluation by
// Gram sub-indexing. The same seeded folds are shared across grid points.
CvReport grid_search_cv(const LabeledDataset& data, const std::vector<GridPoint>& grid,
                        int folds = 5, std::uint64_t seed = 0);

// The t grids for prx/ext are t_star * log(n)/n over this default multiplier
// grid; the optimum is searched around the sweet spot.
std::vector<double> default_t_star_grid();

// Expand a kernel family into grid points over (t-or-gamma grid) x C grid.
// For rbf the gamma grid entries scale the median-heuristic gamma of the
// data; for lin/cos only the C grid matters.
std::vector<GridPoint> make_grid(KernelKind kind, SphereMapKind map, const LabeledDataset& data,
                                 const std::vector<double>& t_star_grid,
                                 const std::vector<double>& C_grid);

// Median pairwise squared distance heuristic for the rbf scale.
double median_heuristic_gamma(const LabeledDataset& data);

// One balanced run of the protocol: representative selection per class
// (m_r == 0 keeps all samples), then grid-search CV.
struct BalancedRunResult {
  CvReport report;
  std::vector<std::string> kept_ids;
};
BalancedRunResult balanced_cv_run(const LabeledDataset& data, KernelKind kind, SphereMapKind map,
                                  const std::vector<double>& t_star_grid,
                                  const std::vector<double>& C_grid, std::size_t m_r, int folds,
                                  int kmeans_runs, std::uint64_t seed);

}  // namespace hsk
