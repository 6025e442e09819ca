#include <doctest.h>

#include "lipwarp/eval.hpp"
#include "lipwarp/vocoder.hpp"
#include "testutil.hpp"

using namespace lipwarp;

namespace {

WarpFunction identity_warp(std::size_t n, double step = 0.040) {
  WarpFunction w;
  w.ref_step = step;
  for (std::size_t k = 0; k < n; ++k)
    w.source_times.push_back(static_cast<double>(k) * step);
  return w;
}

WarpFunction shifted(const WarpFunction& w, double delta) {
  WarpFunction out = w;
  for (double& t : out.source_times) t += delta;
  return out;
}

}  // namespace

TEST_CASE("ground_truth_warp: a clip aligned to itself is the identity") {
  const AudioClip x = testutil::speech_like(4.0, 40);
  const WarpFunction w = ground_truth_warp(x, x);
  for (std::size_t k = 0; k < w.size(); ++k)
    CHECK(std::abs(w.source_times[k] - static_cast<double>(k) * w.ref_step) <=
          0.010);
}

TEST_CASE("ground_truth_warp: uniform 1.25x speed-up shows as slope 1.25") {
  const AudioClip x = testutil::speech_like(6.0, 41);
  const AudioClip fast = speed(x, 1.25);
  // Reference is the sped-up clip, so each reference second consumes 1.25
  // seconds of the unaligned original.
  const WarpFunction w = ground_truth_warp(fast, x);
  const std::size_t lo = w.size() / 5, hi = w.size() * 4 / 5;
  const double slope = (w.source_times[hi] - w.source_times[lo]) /
                       (static_cast<double>(hi - lo) * w.ref_step);
  CHECK(slope == doctest::Approx(1.25).epsilon(0.08));
}

TEST_CASE("ground_truth_warp: 200 ms of prepended silence shows as offset") {
  const AudioClip x = testutil::speech_like(4.0, 42);
  AudioClip delayed;
  delayed.samples.assign(3200, 0.0);
  delayed.samples.insert(delayed.samples.end(), x.samples.begin(),
                         x.samples.end());
  const WarpFunction w = ground_truth_warp(x, delayed);
  const std::size_t lo = w.size() / 5, hi = w.size() * 4 / 5;
  for (std::size_t k = lo; k < hi; ++k) {
    const double offset =
        w.source_times[k] - static_cast<double>(k) * w.ref_step;
    CHECK(offset == doctest::Approx(0.2).epsilon(0.1));
  }
}

TEST_CASE("asynchrony_error: identical warps give 0%") {
  const WarpFunction w = identity_warp(100);
  const AsynchronyReport r = asynchrony_error(w, w);
  CHECK(r.pct_outside == 0.0);
  CHECK(r.n_frames == 100);
}

TEST_CASE("asynchrony_error: the window is asymmetric") {
  const WarpFunction gt = identity_warp(100);
  // +0.2 s everywhere: a lead far outside the 45 ms allowance.
  CHECK(asynchrony_error(shifted(gt, 0.2), gt).pct_outside == 100.0);
  // -0.1 s everywhere: within the 125 ms lag allowance.
  CHECK(asynchrony_error(shifted(gt, -0.1), gt).pct_outside == 0.0);
  // +0.1 s everywhere: outside as a lead.
  const AsynchronyReport lead = asynchrony_error(shifted(gt, 0.1), gt);
  CHECK(lead.pct_outside == 100.0);
  CHECK(lead.lead_pct == 100.0);
  CHECK(lead.lag_pct == 0.0);
}

TEST_CASE("asynchrony_error: half the frames offset gives exactly 50%") {
  const WarpFunction gt = identity_warp(100);
  WarpFunction est = gt;
  for (std::size_t k = 50; k < 100; ++k) est.source_times[k] += 0.1;
  const AsynchronyReport r = asynchrony_error(est, gt);
  CHECK(r.pct_outside == 50.0);
  CHECK(r.lead_pct == 50.0);
}

TEST_CASE("asynchrony_error: invariant to a common shift") {
  const WarpFunction gt = identity_warp(80);
  WarpFunction est = gt;
  SplitMix64 rng(43);
  for (double& t : est.source_times) t += 0.12 * (2.0 * rng.next_double() - 1.0);
  std::sort(est.source_times.begin(), est.source_times.end());
  const double base = asynchrony_error(est, gt).pct_outside;
  CHECK(asynchrony_error(shifted(est, 0.7), shifted(gt, 0.7)).pct_outside ==
        base);
}

TEST_CASE("asynchrony_error: enlarging the window never adds errors") {
  const WarpFunction gt = identity_warp(80);
  WarpFunction est = gt;
  SplitMix64 rng(44);
  for (double& t : est.source_times) t += 0.15 * (2.0 * rng.next_double() - 1.0);
  std::sort(est.source_times.begin(), est.source_times.end());
  const double tight = asynchrony_error(est, gt, 0.045, 0.125).pct_outside;
  const double loose = asynchrony_error(est, gt, 0.090, 0.250).pct_outside;
  CHECK(loose <= tight);
}

TEST_CASE("asynchrony_error: mixed-step warps land on the coarser grid") {
  const WarpFunction fine = identity_warp(401, 0.010);  // 4 s at 10 ms
  const WarpFunction coarse = identity_warp(101, 0.040);
  const AsynchronyReport r = asynchrony_error(fine, coarse);
  CHECK(r.n_frames == 101);
  CHECK(r.pct_outside == 0.0);
}
