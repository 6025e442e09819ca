#include "lipwarp/align.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lipwarp {

double node_weight(const CostMatrix& c, std::size_t i, std::size_t j,
                   bool delay_bias) {
  if (!delay_bias) return c.at(i, j);
  static constexpr double kCoeffs[3] = {0.5, 0.25, 0.25};
  double acc = 0.0, coeff_sum = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    if (i < k) break;
    const std::size_t row = i - k;
    if (!c.present(row, j)) break;
    acc += kCoeffs[k] * c.at(row, j);
    coeff_sum += kCoeffs[k];
  }
  return acc / coeff_sum;
}

namespace {

// Moves are ranked by backtracking preference; lower is preferred.
enum Move : std::uint8_t { kDiag = 0, kHoriz = 1, kVert = 2, kStart = 3 };

struct Dp {
  // Packed like the cost matrix: one slot per present cell.
  std::vector<double> best;
  std::vector<std::uint8_t> from;
};

std::size_t slot(const CostMatrix& c, const std::vector<std::size_t>& offsets,
                 std::size_t i, long j) {
  return offsets[i] + static_cast<std::size_t>(j - c.col_begin(i));
}

Dp run_dp(const CostMatrix& c, bool delay_bias) {
  const std::size_t n = c.rows();
  std::vector<std::size_t> offsets(n);
  std::size_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    offsets[i] = total;
    total += static_cast<std::size_t>(c.col_count(i));
  }

  Dp dp;
  dp.best.assign(total, std::numeric_limits<double>::infinity());
  dp.from.assign(total, kStart);

  // Negative costs are normal here (z-normalized matrices), so relax in
  // topological (row-major) order over the DAG rather than with a
  // priority queue.
  for (std::size_t i = 0; i < n; ++i) {
    const long lo = c.col_begin(i);
    const long hi = lo + c.col_count(i);
    for (long j = lo; j < hi; ++j) {
      const std::size_t jj = static_cast<std::size_t>(j);
      const double w = node_weight(c, i, jj, delay_bias);
      const std::size_t s = slot(c, offsets, i, j);
      if (i == 0 && j == 0) {
        dp.best[s] = w;
        dp.from[s] = kStart;
        continue;
      }
      double best = std::numeric_limits<double>::infinity();
      std::uint8_t from = kStart;
      // Predecessor preference on ties: diagonal, then horizontal, then
      // vertical.
      if (i > 0 && j > 0 && c.present(i - 1, jj - 1)) {
        const double cand = dp.best[slot(c, offsets, i - 1, j - 1)] + w;
        if (cand < best) { best = cand; from = kDiag; }
      }
      if (j > lo) {
        const double cand = dp.best[slot(c, offsets, i, j - 1)] + w;
        if (cand < best) { best = cand; from = kHoriz; }
      }
      if (i > 0 && c.present(i - 1, jj)) {
        const double cand = dp.best[slot(c, offsets, i - 1, j)] + w;
        if (cand < best) { best = cand; from = kVert; }
      }
      dp.best[s] = best;
      dp.from[s] = from;
    }
  }
  return dp;
}

}  // namespace

AlignResult dijkstra_align_full(const CostMatrix& c, bool delay_bias) {
  const std::size_t n = c.rows(), m = c.cols();
  std::vector<std::size_t> offsets(n);
  std::size_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    offsets[i] = total;
    total += static_cast<std::size_t>(c.col_count(i));
  }
  const Dp dp = run_dp(c, delay_bias);

  AlignResult result;
  result.path.total_cost = dp.best[slot(c, offsets, n - 1, static_cast<long>(m) - 1)];
  if (!std::isfinite(result.path.total_cost))
    throw AlignmentError("dijkstra_align: band is disconnected");

  std::size_t i = n - 1, j = m - 1;
  while (true) {
    result.path.pairs.emplace_back(i, j);
    const std::uint8_t move = dp.from[slot(c, offsets, i, static_cast<long>(j))];
    if (move == kStart) break;
    if (move == kDiag) { --i; --j; }
    else if (move == kHoriz) { --j; }
    else { --i; }
  }
  std::reverse(result.path.pairs.begin(), result.path.pairs.end());

  result.cumulative =
      CostMatrix(n, m, c.band_radius(), c.row_step(), c.col_step());
  for (std::size_t r = 0; r < n; ++r) {
    const long lo = c.col_begin(r);
    const long hi = lo + c.col_count(r);
    for (long col = lo; col < hi; ++col)
      result.cumulative.at(r, static_cast<std::size_t>(col)) =
          dp.best[slot(c, offsets, r, col)];
  }
  return result;
}

AlignmentPath dijkstra_align(const CostMatrix& c, bool delay_bias) {
  return dijkstra_align_full(c, delay_bias).path;
}

namespace {

struct Enumerator {
  const CostMatrix& c;
  bool delay_bias;
  std::size_t end_i, end_j;

  std::vector<std::uint8_t> moves;
  std::vector<std::uint8_t> best_moves;
  double best_cost = std::numeric_limits<double>::infinity();
  bool found = false;

  // Smaller rank wins on cost ties, compared from the path's end backwards,
  // matching the DP backtracking preference exactly.
  bool reversed_less(const std::vector<std::uint8_t>& a,
                     const std::vector<std::uint8_t>& b) const {
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(),
                                        b.rend());
  }

  void visit(std::size_t i, std::size_t j, double cost) {
    cost += node_weight(c, i, j, delay_bias);
    if (i == end_i && j == end_j) {
      if (!found || cost < best_cost ||
          (cost == best_cost && reversed_less(moves, best_moves))) {
        best_cost = cost;
        best_moves = moves;
        found = true;
      }
      return;
    }
    if (i < end_i && j < end_j && c.present(i + 1, j + 1)) {
      moves.push_back(kDiag);
      visit(i + 1, j + 1, cost);
      moves.pop_back();
    }
    if (j < end_j && c.present(i, j + 1)) {
      moves.push_back(kHoriz);
      visit(i, j + 1, cost);
      moves.pop_back();
    }
    if (i < end_i && c.present(i + 1, j)) {
      moves.push_back(kVert);
      visit(i + 1, j, cost);
      moves.pop_back();
    }
  }
};

}  // namespace

AlignmentPath brute_force_align(const CostMatrix& c, bool delay_bias) {
  if (c.rows() + c.cols() > 24)
    throw InputError("brute_force_align: instance too large (N + M > 24)");

  Enumerator e{c, delay_bias, c.rows() - 1, c.cols() - 1, {}, {}};
  e.visit(0, 0, 0.0);
  if (!e.found) throw AlignmentError("brute_force_align: band is disconnected");

  AlignmentPath path;
  path.total_cost = e.best_cost;
  std::size_t i = 0, j = 0;
  path.pairs.emplace_back(i, j);
  for (std::uint8_t move : e.best_moves) {
    if (move == kDiag) { ++i; ++j; }
    else if (move == kHoriz) { ++j; }
    else { ++i; }
    path.pairs.emplace_back(i, j);
  }
  return path;
}

long global_offset(const CostMatrix& c) {
  const long n = static_cast<long>(c.rows());
  const long m = static_cast<long>(c.cols());
  long k_lo = -(n - 1), k_hi = m - 1;
  if (c.band_radius()) {
    k_lo = -*c.band_radius();
    k_hi = *c.band_radius();
  }

  bool found = false;
  long best_k = 0;
  double best_mean = std::numeric_limits<double>::infinity();
  for (long k = k_lo; k <= k_hi; ++k) {
    double sum = 0.0;
    long count = 0;
    for (long i = std::max<long>(0, -k); i < n && i + k < m; ++i) {
      if (!c.present(static_cast<std::size_t>(i),
                     static_cast<std::size_t>(i + k)))
        continue;
      sum += c.at(static_cast<std::size_t>(i), static_cast<std::size_t>(i + k));
      ++count;
    }
    if (count == 0) continue;
    const double mean = sum / static_cast<double>(count);
    const bool better =
        !found || mean < best_mean ||
        (mean == best_mean && (std::abs(k) < std::abs(best_k) ||
                               (std::abs(k) == std::abs(best_k) && k < best_k)));
    if (better) {
      best_mean = mean;
      best_k = k;
      found = true;
    }
  }
  if (!found) throw AlignmentError("global_offset: no valid diagonal in range");
  return best_k;
}

WarpFunction path_to_warp(const AlignmentPath& path, double row_step,
                          double col_step) {
  if (path.pairs.empty()) throw AlignmentError("path_to_warp: empty path");
  const std::size_t n_cols = path.pairs.back().second + 1;
  std::vector<double> row_sum(n_cols, 0.0);
  std::vector<std::size_t> row_count(n_cols, 0);
  for (const auto& [i, j] : path.pairs) {
    row_sum[j] += static_cast<double>(i);
    row_count[j] += 1;
  }
  WarpFunction warp;
  warp.ref_step = col_step;
  warp.source_times.resize(n_cols);
  for (std::size_t j = 0; j < n_cols; ++j)
    warp.source_times[j] =
        row_sum[j] / static_cast<double>(row_count[j]) * row_step;
  return warp;
}

}  // namespace lipwarp
