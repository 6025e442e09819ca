#include "lipwarp/cost.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace lipwarp {

CostMetric parse_metric(const std::string& name) {
  if (name == "euclidean") return CostMetric::euclidean;
  if (name == "neg_cosine") return CostMetric::neg_cosine;
  if (name == "neg_dot") return CostMetric::neg_dot;
  throw InputError("unknown metric: " + name +
                   " (want euclidean, neg_cosine or neg_dot)");
}

CostMatrix::CostMatrix(std::size_t rows, std::size_t cols,
                       std::optional<int> band_radius, double row_step,
                       double col_step)
    : rows_(rows),
      cols_(cols),
      band_radius_(band_radius),
      row_step_(row_step),
      col_step_(col_step) {
  if (rows == 0 || cols == 0)
    throw InputError("cost matrix must have at least one row and column");
  if (band_radius && *band_radius < 0)
    throw InputError("band radius must be non-negative");

  col_begin_.resize(rows);
  col_count_.resize(rows);
  offset_.resize(rows);
  const double slope =
      static_cast<double>(cols - 1) / std::max<std::size_t>(rows - 1, 1);
  std::size_t total = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    long lo = 0, hi = static_cast<long>(cols) - 1;
    if (band_radius) {
      const double center = slope * static_cast<double>(i);
      lo = std::max<long>(0, static_cast<long>(std::ceil(center - *band_radius)));
      hi = std::min<long>(static_cast<long>(cols) - 1,
                          static_cast<long>(std::floor(center + *band_radius)));
    }
    col_begin_[i] = lo;
    col_count_[i] = std::max<long>(0, hi - lo + 1);
    offset_[i] = total;
    total += static_cast<std::size_t>(col_count_[i]);
  }
  values_.assign(total, 0.0);

  if (band_radius) {
    // The strip must admit a monotone path from (0,0) to (N-1,M-1): every
    // consecutive row pair needs adjacent or overlapping column intervals.
    if (!present(0, 0) || !present(rows - 1, cols - 1))
      throw AlignmentError("band does not cover the matrix corners");
    for (std::size_t i = 0; i + 1 < rows; ++i) {
      if (col_count_[i] == 0 || col_count_[i + 1] == 0 ||
          col_begin_[i] + col_count_[i] < col_begin_[i + 1])
        throw AlignmentError("band too narrow to connect corners");
    }
  }
}

int default_band_radius(std::size_t rows, std::size_t cols) {
  const auto frac = static_cast<int>(
      std::ceil(0.15 * static_cast<double>(std::max(rows, cols))));
  return std::max(25, frac);
}

namespace {

double cell_cost(std::span<const float> a, std::span<const float> b,
                 CostMetric metric) {
  switch (metric) {
    case CostMetric::euclidean: {
      double acc = 0.0;
      for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = static_cast<double>(a[k]) - b[k];
        acc += d * d;
      }
      return std::sqrt(acc);
    }
    case CostMetric::neg_dot: {
      double acc = 0.0;
      for (std::size_t k = 0; k < a.size(); ++k)
        acc += static_cast<double>(a[k]) * b[k];
      return -acc;
    }
    case CostMetric::neg_cosine: {
      double dot = 0.0, na = 0.0, nb = 0.0;
      for (std::size_t k = 0; k < a.size(); ++k) {
        dot += static_cast<double>(a[k]) * b[k];
        na += static_cast<double>(a[k]) * a[k];
        nb += static_cast<double>(b[k]) * b[k];
      }
      const double denom = std::sqrt(na) * std::sqrt(nb);
      return denom > 1e-30 ? -dot / denom : 0.0;
    }
  }
  return 0.0;
}

}  // namespace

CostMatrix pairwise_cost(const EmbeddingSequence& unaligned,
                         const EmbeddingSequence& reference, CostMetric metric,
                         std::optional<int> band_radius) {
  validate(unaligned, "pairwise_cost: unaligned");
  validate(reference, "pairwise_cost: reference");
  if (unaligned.dim != reference.dim)
    throw InputError("pairwise_cost: dimension mismatch (" +
                     std::to_string(unaligned.dim) + " vs " +
                     std::to_string(reference.dim) + ")");

  CostMatrix c(unaligned.frames(), reference.frames(), band_radius,
               unaligned.frame_step, reference.frame_step);
  for (std::size_t i = 0; i < c.rows(); ++i) {
    const auto a = unaligned.row(i);
    const long lo = c.col_begin(i);
    const long hi = lo + c.col_count(i);
    for (long j = lo; j < hi; ++j)
      c.at(i, static_cast<std::size_t>(j)) =
          cell_cost(a, reference.row(static_cast<std::size_t>(j)), metric);
  }
  return c;
}

CostMatrix normalize(const CostMatrix& c) {
  const auto& v = c.raw_values();
  if (v.size() < 2)
    throw AlignmentError("normalize: need at least two present cells");
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  var /= static_cast<double>(v.size());
  const double std_dev = std::sqrt(var);

  CostMatrix out = c;
  if (std_dev < 1e-300) {
    std::fill(out.raw_values().begin(), out.raw_values().end(), 0.0);
  } else {
    for (double& x : out.raw_values()) x = (x - mean) / std_dev;
  }
  return out;
}

CostMatrix combine_min(const std::vector<CostMatrix>& matrices) {
  if (matrices.empty()) throw InputError("combine_min: empty matrix list");
  if (matrices.size() > 4)
    throw InputError("combine_min: at most four matrices expected");

  CostMatrix out = normalize(matrices.front());
  for (std::size_t m = 1; m < matrices.size(); ++m) {
    const CostMatrix& c = matrices[m];
    if (c.rows() != out.rows() || c.cols() != out.cols() ||
        c.band_radius() != out.band_radius())
      throw InputError("combine_min: matrices must share shape and band");
    const CostMatrix n = normalize(c);
    auto& dst = out.raw_values();
    const auto& src = n.raw_values();
    for (std::size_t k = 0; k < dst.size(); ++k)
      dst[k] = std::min(dst[k], src[k]);
  }
  return out;
}

void dump_pgm(const CostMatrix& c, const std::string& path,
              const std::vector<std::pair<std::size_t, std::size_t>>&
                  path_pairs) {
  double lo = 0.0, hi = 0.0;
  if (!c.raw_values().empty()) {
    const auto [mn, mx] =
        std::minmax_element(c.raw_values().begin(), c.raw_values().end());
    lo = *mn;
    hi = *mx;
  }
  const double range = hi - lo;

  std::vector<std::uint8_t> pixels(c.rows() * c.cols(), 254);
  for (std::size_t i = 0; i < c.rows(); ++i) {
    const long b = c.col_begin(i);
    const long e = b + c.col_count(i);
    for (long j = b; j < e; ++j) {
      const double v = c.at(i, static_cast<std::size_t>(j));
      const double g = range > 0.0 ? (v - lo) / range * 253.0 : 0.0;
      pixels[i * c.cols() + static_cast<std::size_t>(j)] =
          static_cast<std::uint8_t>(std::lround(g));
    }
  }
  for (const auto& [i, j] : path_pairs)
    if (i < c.rows() && j < c.cols()) pixels[i * c.cols() + j] = 255;

  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open PGM file for writing: " + path);
  f << "P5\n" << c.cols() << " " << c.rows() << "\n255\n";
  f.write(reinterpret_cast<const char*>(pixels.data()),
          static_cast<std::streamsize>(pixels.size()));
  if (!f) throw InputError("failed writing PGM file: " + path);
}

}  // namespace lipwarp
