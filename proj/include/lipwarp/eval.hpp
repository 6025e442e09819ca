#pragma once

#include "lipwarp/align.hpp"
#include "lipwarp/features.hpp"

namespace lipwarp {

/// Per-frame asynchrony against a ground-truth warp, scored against the
/// broadcast tolerance window: audio may lag up to lag_max (125 ms) and
/// lead up to lead_max (45 ms). Positive offsets mean the audio leads.
struct AsynchronyReport {
  std::vector<double> offsets;  // estimated - ground truth, seconds
  double pct_outside = 0.0;     // outside the window, percent
  double lead_pct = 0.0;        // offset > lead_max
  double lag_pct = 0.0;         // offset < -lag_max
  double lead_max = 0.045;
  double lag_max = 0.125;
  std::size_t n_frames = 0;
};

/// Reference alignment between two recordings of the same speech, from
/// MFCC features and an unbiased full-band shortest-path search.
WarpFunction ground_truth_warp(const AudioClip& ref_audio,
                               const AudioClip& unaligned_audio,
                               const MfccConfig& cfg = {});

/// Compares two warps on a common grid (grid_step, or the coarser of the
/// two steps when grid_step <= 0) and reports the percentage of frames
/// whose offset falls outside the acceptance window.
AsynchronyReport asynchrony_error(const WarpFunction& estimated,
                                  const WarpFunction& ground_truth,
                                  double lead_max = 0.045,
                                  double lag_max = 0.125,
                                  double grid_step = 0.0);

}  // namespace lipwarp
