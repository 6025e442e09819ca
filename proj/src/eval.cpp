#include "lipwarp/eval.hpp"

#include <algorithm>
#include <cmath>

#include "lipwarp/smooth.hpp"

namespace lipwarp {

WarpFunction ground_truth_warp(const AudioClip& ref_audio,
                               const AudioClip& unaligned_audio,
                               const MfccConfig& cfg) {
  if (ref_audio.sample_rate != kWorkingRate ||
      unaligned_audio.sample_rate != kWorkingRate)
    throw InputError("ground_truth_warp: clips must be at the working rate");
  const EmbeddingSequence src = mfcc(unaligned_audio, cfg);
  const EmbeddingSequence ref = mfcc(ref_audio, cfg);
  const CostMatrix c = pairwise_cost(src, ref, CostMetric::euclidean);
  const AlignmentPath path = dijkstra_align(c, /*delay_bias=*/false);
  return path_to_warp(path, src.frame_step, ref.frame_step);
}

AsynchronyReport asynchrony_error(const WarpFunction& estimated,
                                  const WarpFunction& ground_truth,
                                  double lead_max, double lag_max,
                                  double grid_step) {
  if (!(lead_max > 0.0) || !(lag_max > 0.0))
    throw InputError("asynchrony_error: window bounds must be positive");
  const double step =
      std::max({grid_step, estimated.ref_step, ground_truth.ref_step});
  const WarpFunction est = resample_warp(estimated, step);
  const WarpFunction gt = resample_warp(ground_truth, step);
  const std::size_t n = std::min(est.size(), gt.size());
  if (n == 0)
    throw InputError("asynchrony_error: warps have no overlapping domain");

  AsynchronyReport report;
  report.lead_max = lead_max;
  report.lag_max = lag_max;
  report.n_frames = n;
  report.offsets.resize(n);
  std::size_t lead = 0, lag = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double off = est.source_times[k] - gt.source_times[k];
    report.offsets[k] = off;
    if (off > lead_max) ++lead;
    else if (off < -lag_max) ++lag;
  }
  report.lead_pct = 100.0 * static_cast<double>(lead) / static_cast<double>(n);
  report.lag_pct = 100.0 * static_cast<double>(lag) / static_cast<double>(n);
  report.pct_outside =
      100.0 * static_cast<double>(lead + lag) / static_cast<double>(n);
  return report;
}

}  // namespace lipwarp
