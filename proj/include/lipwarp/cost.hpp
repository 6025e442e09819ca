#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lipwarp/types.hpp"

namespace lipwarp {

enum class CostMetric { euclidean, neg_cosine, neg_dot };

CostMetric parse_metric(const std::string& name);

/// Pairwise matching costs between unaligned frames (rows) and reference
/// frames (columns); lower is better. Optionally banded: cell (i, j) is
/// present iff |j - i*(M-1)/max(N-1, 1)| <= band_radius, a strip around the
/// stretched corner-to-corner diagonal. Cells outside the band are absent.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(std::size_t rows, std::size_t cols,
             std::optional<int> band_radius, double row_step, double col_step);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::optional<int> band_radius() const { return band_radius_; }
  double row_step() const { return row_step_; }
  double col_step() const { return col_step_; }

  bool present(std::size_t i, std::size_t j) const {
    const auto jj = static_cast<long>(j);
    return jj >= col_begin_[i] && jj < col_begin_[i] + col_count_[i];
  }
  // First present column and the number of present columns in row i.
  long col_begin(std::size_t i) const { return col_begin_[i]; }
  long col_count(std::size_t i) const { return col_count_[i]; }

  double at(std::size_t i, std::size_t j) const {
    return values_[offset_[i] + (static_cast<long>(j) - col_begin_[i])];
  }
  double& at(std::size_t i, std::size_t j) {
    return values_[offset_[i] + (static_cast<long>(j) - col_begin_[i])];
  }

  std::size_t present_count() const { return values_.size(); }
  const std::vector<double>& raw_values() const { return values_; }
  std::vector<double>& raw_values() { return values_; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::optional<int> band_radius_;
  double row_step_ = 0.0, col_step_ = 0.0;
  std::vector<long> col_begin_;     // per row
  std::vector<long> col_count_;     // per row
  std::vector<std::size_t> offset_; // per row, into values_
  std::vector<double> values_;
};

/// Default band radius for an N x M alignment problem:
/// max(25 frames, ceil(0.15 * max(N, M))).
int default_band_radius(std::size_t rows, std::size_t cols);

/// C[i][j] = metric(unaligned[i], reference[j]) for all in-band cells.
/// Throws InputError on dimension mismatch and AlignmentError when the band
/// cannot connect (0,0) to (N-1,M-1).
CostMatrix pairwise_cost(const EmbeddingSequence& unaligned,
                         const EmbeddingSequence& reference,
                         CostMetric metric = CostMetric::euclidean,
                         std::optional<int> band_radius = std::nullopt);

/// Z-score over the present cells; a degenerate (constant) matrix maps to
/// all zeros. Requires at least two present cells.
CostMatrix normalize(const CostMatrix& c);

/// Elementwise minimum of the z-normalized inputs (1 to 4 matrices sharing
/// shape and band).
CostMatrix combine_min(const std::vector<CostMatrix>& matrices);

/// Writes the matrix as a binary (P5) PGM image, rows = unaligned frames,
/// columns = reference frames, min-max scaled so lower cost is darker.
/// Cells on `path_pairs` are set to 255; absent (out-of-band) cells to 254.
void dump_pgm(const CostMatrix& c, const std::string& path,
              const std::vector<std::pair<std::size_t, std::size_t>>&
                  path_pairs = {});

}  // namespace lipwarp
