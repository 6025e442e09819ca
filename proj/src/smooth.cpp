#include "lipwarp/smooth.hpp"

#include <algorithm>
#include <cmath>

namespace lipwarp {

SmoothingConfig::SmoothingConfig() {
  sigma_grid.reserve(13);
  for (int k = 0; k <= 12; ++k) sigma_grid.push_back(0.5 * std::pow(1.5, k));
}

WarpFunction laplacian_smooth(const WarpFunction& w, double alpha, int iters) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw InputError("laplacian_smooth: alpha must be in (0, 1]");
  WarpFunction out = w;
  if (out.size() < 3) return out;
  std::vector<double> prev(out.source_times);
  for (int it = 0; it < iters; ++it) {
    for (std::size_t k = 1; k + 1 < prev.size(); ++k)
      out.source_times[k] =
          prev[k] + alpha * (prev[k - 1] - 2.0 * prev[k] + prev[k + 1]) / 2.0;
    prev = out.source_times;
  }
  return out;
}

WarpFunction gaussian_smooth(const WarpFunction& w, double sigma) {
  if (sigma < 0.0) throw InputError("gaussian_smooth: sigma must be >= 0");
  WarpFunction out = w;
  if (sigma == 0.0 || out.size() < 3) return out;

  const long radius = static_cast<long>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  double sum = 0.0;
  for (long d = -radius; d <= radius; ++d) {
    kernel[d + radius] = std::exp(-0.5 * (d / sigma) * (d / sigma));
    sum += kernel[d + radius];
  }
  for (double& g : kernel) g /= sum;

  // Antisymmetric extension about the endpoints: index -d maps to
  // 2*x[0] - x[d], folding repeatedly for kernels wider than the signal.
  // This keeps straight-line warps exactly straight, which replicate
  // padding would not.
  const auto& x = w.source_times;
  const long n = static_cast<long>(x.size());
  auto sample = [&](auto&& self, long idx) -> double {
    if (idx >= 0 && idx < n) return x[idx];
    if (idx < 0) return 2.0 * x[0] - self(self, -idx);
    return 2.0 * x[n - 1] - self(self, 2 * (n - 1) - idx);
  };
  for (long k = 0; k < n; ++k) {
    double acc = 0.0;
    for (long d = -radius; d <= radius; ++d)
      acc += kernel[d + radius] * sample(sample, k + d);
    out.source_times[k] = acc;
  }
  out.source_times.front() = x.front();
  out.source_times.back() = x.back();
  return out;
}

namespace {

double max_deviation(const WarpFunction& a, const WarpFunction& b) {
  double dev = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    dev = std::max(dev, std::abs(a.source_times[k] - b.source_times[k]));
  return dev;
}

}  // namespace

WarpFunction adaptive_smooth(const WarpFunction& w, const SmoothingConfig& cfg) {
  if (!(cfg.lambda_max > 0.0))
    throw InputError("adaptive_smooth: lambda_max must be positive");
  if (w.size() < 3) return w;

  WarpFunction base =
      laplacian_smooth(w, cfg.laplacian_alpha, cfg.laplacian_iters);
  if (max_deviation(base, w) > cfg.lambda_max) base = w;

  // Largest grid sigma whose result stays within lambda of the raw warp;
  // falls back to the Laplacian result alone.
  WarpFunction smoothed = base;
  std::vector<double> grid(cfg.sigma_grid);
  std::sort(grid.begin(), grid.end());
  for (auto it = grid.rbegin(); it != grid.rend(); ++it) {
    WarpFunction cand = gaussian_smooth(base, *it);
    if (max_deviation(cand, w) <= cfg.lambda_max) {
      smoothed = std::move(cand);
      break;
    }
  }

  // Isotonic projection: running maximum, capped at the final endpoint so
  // the ends stay exact.
  const double last = w.source_times.back();
  double running = smoothed.source_times.front();
  for (std::size_t k = 0; k < smoothed.size(); ++k) {
    running = std::max(running, smoothed.source_times[k]);
    smoothed.source_times[k] = std::min(running, last);
  }
  return smoothed;
}

WarpFunction resample_warp(const WarpFunction& w, double target_step) {
  if (!(target_step > 0.0))
    throw InputError("resample_warp: step must be positive");
  if (w.source_times.empty()) throw InputError("resample_warp: empty warp");

  WarpFunction out;
  out.ref_step = target_step;
  if (w.size() == 1) {
    out.source_times = w.source_times;
    return out;
  }
  const double duration = w.duration();
  const auto n_out =
      static_cast<std::size_t>(std::floor(duration / target_step + 1e-9)) + 1;
  out.source_times.resize(n_out);
  const std::size_t last = w.size() - 1;
  for (std::size_t m = 0; m < n_out; ++m) {
    const double pos =
        std::clamp(static_cast<double>(m) * target_step / w.ref_step, 0.0,
                   static_cast<double>(last));
    const auto i0 = std::min(static_cast<std::size_t>(pos), last - 1);
    const double frac = std::clamp(pos - static_cast<double>(i0), 0.0, 1.0);
    const double lo = w.source_times[i0], hi = w.source_times[i0 + 1];
    // Interpolate as lo + frac * (hi - lo), clamped into the segment, so a
    // monotone input stays monotone to the last bit.
    out.source_times[m] =
        std::clamp(lo + frac * (hi - lo), std::min(lo, hi), std::max(lo, hi));
  }
  return out;
}

}  // namespace lipwarp
