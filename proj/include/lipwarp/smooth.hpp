#pragma once

#include <vector>

#include "lipwarp/align.hpp"

namespace lipwarp {

struct SmoothingConfig {
  double lambda_max = 0.1;      // max deviation from the raw warp, seconds
  double laplacian_alpha = 0.5;  // in (0, 1]
  int laplacian_iters = 2;
  std::vector<double> sigma_grid;  // Gaussian widths in frames

  SmoothingConfig();
};

/// Iterative Laplacian relaxation on the interior samples:
/// x[k] += alpha * (x[k-1] - 2 x[k] + x[k+1]) / 2, endpoints fixed.
/// Updates are simultaneous within an iteration.
WarpFunction laplacian_smooth(const WarpFunction& w, double alpha, int iters);

/// Convolution with a normalized truncated Gaussian (radius 3*sigma, in
/// frames). The signal is extended by reflecting values through the
/// endpoints (so straight lines stay straight), and the endpoints are
/// re-pinned afterwards. sigma = 0 is the identity.
WarpFunction gaussian_smooth(const WarpFunction& w, double sigma);

/// Laplacian then Gaussian smoothing, with the Gaussian width chosen as the
/// largest grid value keeping every sample within lambda_max of the input,
/// followed by an isotonic (running-maximum) projection. The result never
/// deviates more than lambda_max from the input, is non-decreasing, and
/// keeps the endpoints.
WarpFunction adaptive_smooth(const WarpFunction& w,
                             const SmoothingConfig& cfg = {});

/// Linear interpolation of the warp onto a grid of the given step spanning
/// the same duration, samples clamped to the original domain.
WarpFunction resample_warp(const WarpFunction& w, double target_step);

}  // namespace lipwarp
