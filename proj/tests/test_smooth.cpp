#include <doctest.h>

#include "lipwarp/smooth.hpp"
#include "testutil.hpp"

using namespace lipwarp;

namespace {

WarpFunction make_warp(std::vector<double> times, double step = 0.040) {
  WarpFunction w;
  w.source_times = std::move(times);
  w.ref_step = step;
  return w;
}

WarpFunction identity_warp(std::size_t n, double step = 0.040) {
  WarpFunction w;
  w.ref_step = step;
  for (std::size_t k = 0; k < n; ++k)
    w.source_times.push_back(static_cast<double>(k) * step);
  return w;
}

// Non-decreasing staircase: per-frame source jumps of 0 or 2 frames.
WarpFunction staircase_warp(std::size_t n, std::uint64_t seed,
                            double step = 0.040) {
  SplitMix64 rng(seed);
  WarpFunction w;
  w.ref_step = step;
  double t = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    w.source_times.push_back(t);
    t += step * (rng.next_below(2) == 0 ? 0.0 : 2.0);
  }
  return w;
}

double max_abs_diff(const WarpFunction& a, const WarpFunction& b) {
  double dev = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    dev = std::max(dev, std::abs(a.source_times[k] - b.source_times[k]));
  return dev;
}

}  // namespace

TEST_CASE("laplacian_smooth: linear warps are fixed points") {
  const WarpFunction w = identity_warp(20);
  const WarpFunction out = laplacian_smooth(w, 0.5, 3);
  CHECK(max_abs_diff(out, w) < 1e-12);
}

TEST_CASE("laplacian_smooth: single-spike example") {
  const WarpFunction w = make_warp({0.0, 1.0, 0.0});
  const WarpFunction out = laplacian_smooth(w, 1.0, 1);
  CHECK(out.source_times[0] == 0.0);
  CHECK(out.source_times[1] == 0.0);  // 1 + (0 - 2 + 0)/2
  CHECK(out.source_times[2] == 0.0);
}

TEST_CASE("laplacian_smooth: endpoints never move") {
  const WarpFunction w = staircase_warp(30, 5);
  for (int iters : {1, 2, 10}) {
    const WarpFunction out = laplacian_smooth(w, 0.5, iters);
    CHECK(out.source_times.front() == w.source_times.front());
    CHECK(out.source_times.back() == w.source_times.back());
  }
}

TEST_CASE("gaussian_smooth: sigma 0 is the identity") {
  const WarpFunction w = staircase_warp(25, 6);
  CHECK(gaussian_smooth(w, 0.0).source_times == w.source_times);
}

TEST_CASE("gaussian_smooth: linear stays linear, even with wide kernels") {
  const WarpFunction w = identity_warp(40);
  for (double sigma : {1.0, 4.0, 20.0}) {
    const WarpFunction out = gaussian_smooth(w, sigma);
    for (std::size_t k = 0; k < w.size(); ++k)
      CHECK(std::abs(out.source_times[k] - w.source_times[k]) < 1e-9);
  }
}

TEST_CASE("gaussian_smooth: step sequence against a direct convolution") {
  const WarpFunction w = make_warp({0, 0, 0, 1, 1, 1});
  const double sigma = 1.0;
  const WarpFunction out = gaussian_smooth(w, sigma);

  // Direct reimplementation: truncated normalized kernel, values reflected
  // antisymmetrically through the endpoints, ends re-pinned.
  const long radius = 3;
  const auto& x = w.source_times;
  const long n = static_cast<long>(x.size());
  std::vector<double> kernel(2 * radius + 1);
  double ksum = 0.0;
  for (long d = -radius; d <= radius; ++d)
    ksum += kernel[d + radius] = std::exp(-0.5 * d * d / (sigma * sigma));
  for (double& g : kernel) g /= ksum;
  auto value_at = [&](auto&& self, long idx) -> double {
    if (idx >= 0 && idx < n) return x[idx];
    if (idx < 0) return 2.0 * x[0] - self(self, -idx);
    return 2.0 * x[n - 1] - self(self, 2 * (n - 1) - idx);
  };
  for (long k = 1; k + 1 < n; ++k) {
    double want = 0.0;
    for (long d = -radius; d <= radius; ++d)
      want += kernel[d + radius] * value_at(value_at, k + d);
    CHECK(out.source_times[k] == doctest::Approx(want).epsilon(1e-12));
    CHECK(out.source_times[k] > 0.0);
    CHECK(out.source_times[k] < 1.0);
  }
  CHECK(out.source_times.front() == 0.0);
  CHECK(out.source_times.back() == 1.0);
}

TEST_CASE("gaussian_smooth: curvature energy never grows on staircases") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const WarpFunction w = staircase_warp(60, 100 + seed);
    const WarpFunction out = gaussian_smooth(w, 1.5);
    auto curvature = [](const WarpFunction& f) {
      double acc = 0.0;
      for (std::size_t k = 1; k + 1 < f.size(); ++k) {
        const double d2 = f.source_times[k - 1] - 2.0 * f.source_times[k] +
                          f.source_times[k + 1];
        acc += d2 * d2;
      }
      return acc;
    };
    CHECK(curvature(out) <= curvature(w) + 1e-15);
  }
}

TEST_CASE("adaptive_smooth: identity input is returned unchanged") {
  const WarpFunction w = identity_warp(50);
  const WarpFunction out = adaptive_smooth(w);
  CHECK(max_abs_diff(out, w) < 1e-9);
}

TEST_CASE("adaptive_smooth: bounded deviation and monotone output") {
  SmoothingConfig cfg;
  cfg.lambda_max = 0.1;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const WarpFunction w = staircase_warp(80, 200 + seed);
    const WarpFunction out = adaptive_smooth(w, cfg);
    REQUIRE(out.size() == w.size());
    CHECK(max_abs_diff(out, w) <= cfg.lambda_max + 1e-12);
    for (std::size_t k = 1; k < out.size(); ++k)
      CHECK(out.source_times[k] >= out.source_times[k - 1]);
    CHECK(out.source_times.front() == w.source_times.front());
    CHECK(out.source_times.back() == w.source_times.back());
  }
}

TEST_CASE("adaptive_smooth: tiny lambda forces a no-op") {
  SmoothingConfig cfg;
  cfg.lambda_max = 1e-9;
  const WarpFunction w = staircase_warp(40, 300);
  const WarpFunction out = adaptive_smooth(w, cfg);
  CHECK(max_abs_diff(out, w) <= 1e-9);
}

TEST_CASE("resample_warp: identity warp from 40 ms to 16 ms") {
  const WarpFunction w = identity_warp(26);  // spans one second
  const WarpFunction out = resample_warp(w, 0.016);
  REQUIRE(out.size() == 63);  // floor(1.0 / 0.016) + 1
  for (std::size_t k = 0; k < out.size(); ++k)
    CHECK(out.source_times[k] ==
          doctest::Approx(0.016 * static_cast<double>(k)).epsilon(1e-9));
}

TEST_CASE("resample_warp: worked three-sample example") {
  const WarpFunction w = make_warp({0.0, 0.04, 0.08});
  const WarpFunction out = resample_warp(w, 0.016);
  const std::vector<double> want = {0.0, 0.016, 0.032, 0.048, 0.064, 0.08};
  REQUIRE(out.size() == want.size());
  for (std::size_t k = 0; k < want.size(); ++k)
    CHECK(out.source_times[k] == doctest::Approx(want[k]).epsilon(1e-12));
}

TEST_CASE("resample_warp: resampling at the original step is the identity") {
  const WarpFunction w = staircase_warp(31, 9);
  const WarpFunction out = resample_warp(w, w.ref_step);
  REQUIRE(out.size() == w.size());
  for (std::size_t k = 0; k < w.size(); ++k)
    CHECK(std::abs(out.source_times[k] - w.source_times[k]) < 1e-12);
}

TEST_CASE("resample_warp: monotone in, monotone out") {
  const WarpFunction w = staircase_warp(31, 10);
  const WarpFunction out = resample_warp(w, 0.007);
  for (std::size_t k = 1; k < out.size(); ++k)
    CHECK(out.source_times[k] >= out.source_times[k - 1]);
}
