#pragma once

#include <utility>
#include <vector>

#include "lipwarp/cost.hpp"

namespace lipwarp {

/// Monotone lattice path from (0,0) to (N-1,M-1). Consecutive pairs differ
/// by (1,0), (0,1) or (1,1). total_cost is the sum of node weights along the
/// path (delay-biased weights when requested).
struct AlignmentPath {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  double total_cost = 0.0;
};

/// Mapping from the reference timeline to source time: source_times[j] is
/// the source instant playing at reference frame j, one entry every
/// ref_step seconds. Non-decreasing.
struct WarpFunction {
  std::vector<double> source_times;
  double ref_step = 0.040;

  std::size_t size() const { return source_times.size(); }
  double duration() const {
    return source_times.empty()
               ? 0.0
               : static_cast<double>(source_times.size() - 1) * ref_step;
  }
};

/// Weight of node (i,j). Without delay bias this is C[i][j]; with it,
/// 0.5*C[i][j] + 0.25*C[i-1][j] + 0.25*C[i-2][j] over the unaligned-frame
/// axis, dropping absent cells and renormalizing the coefficients to sum 1.
double node_weight(const CostMatrix& c, std::size_t i, std::size_t j,
                   bool delay_bias);

/// Minimum-cost monotone path over the in-band cells, including the start
/// node's weight. Ties are broken deterministically by preferring the move
/// (1,1) over (0,1) over (1,0) when backtracking.
AlignmentPath dijkstra_align(const CostMatrix& c, bool delay_bias = false);

/// Like dijkstra_align but also returns the cumulative best-cost-to-node
/// matrix (for inspection dumps).
struct AlignResult {
  AlignmentPath path;
  CostMatrix cumulative;
};
AlignResult dijkstra_align_full(const CostMatrix& c, bool delay_bias = false);

/// Exhaustive-enumeration oracle with the same weight and tie-break rules.
/// Requires N + M <= 24.
AlignmentPath brute_force_align(const CostMatrix& c, bool delay_bias = false);

/// Best single diagonal: the offset k minimizing the mean of C[i][i+k] over
/// the present cells. Searched over [-band_radius, band_radius] for banded
/// matrices and over every non-empty diagonal otherwise.
long global_offset(const CostMatrix& c);

/// Converts a lattice path to a warp function: source_times[j] is the mean
/// matched row index of column j times row_step.
WarpFunction path_to_warp(const AlignmentPath& path, double row_step,
                          double col_step);

}  // namespace lipwarp
