#include <doctest.h>

#include "lipwarp/vocoder.hpp"
#include "testutil.hpp"

using namespace lipwarp;

namespace {

constexpr double kHop = 0.016;

WarpFunction linear_warp(double rate, double source_duration) {
  WarpFunction w;
  w.ref_step = kHop;
  const auto n =
      static_cast<std::size_t>(std::floor(source_duration / (rate * kHop) + 1e-9)) +
      1;
  for (std::size_t k = 0; k < n; ++k)
    w.source_times.push_back(std::min(rate * k * kHop, source_duration));
  return w;
}

}  // namespace

TEST_CASE("phase_vocoder: identity warp reconstructs the input") {
  const AudioClip x = testutil::speech_like(2.0, 21);
  const AudioClip y = phase_vocoder(x, linear_warp(1.0, x.duration()));
  REQUIRE(y.size() <= x.size());
  CHECK(testutil::snr_db(x.samples, y.samples, 512, y.size() - 512) >= 30.0);
}

TEST_CASE("phase_vocoder: double-speed warp halves the duration") {
  const AudioClip x = testutil::speech_like(2.0, 22);
  const AudioClip y = phase_vocoder(x, linear_warp(2.0, x.duration()));
  CHECK(std::abs(y.duration() - 1.0) <= kHop);
}

TEST_CASE("phase_vocoder: 1.5x stretch keeps the 440 Hz peak at bin 14") {
  const AudioClip x = testutil::sine_clip(440.0, 2.0);
  CHECK(testutil::dominant_bin(x) == 14);  // 440 * 512 / 16000 = 14.08
  const AudioClip y = phase_vocoder(x, linear_warp(1.0 / 1.5, x.duration()));
  CHECK(std::abs(y.duration() - 3.0) <= kHop);
  CHECK(testutil::dominant_bin(y) == 14);
}

TEST_CASE("phase_vocoder: silence in, silence out") {
  AudioClip x;
  x.samples.assign(16000, 0.0);
  const AudioClip y = phase_vocoder(x, linear_warp(1.0, x.duration()));
  for (double s : y.samples) CHECK(s == 0.0);
}

TEST_CASE("phase_vocoder: error paths") {
  AudioClip wrong_rate = testutil::sine_clip(440.0, 1.0, 0.5, 8000);
  CHECK_THROWS_AS(phase_vocoder(wrong_rate, linear_warp(1.0, 1.0)),
                  SynthesisError);

  const AudioClip x = testutil::sine_clip(440.0, 1.0);
  WarpFunction beyond = linear_warp(1.0, x.duration());
  beyond.source_times.back() = x.duration() + 0.5;
  CHECK_THROWS_AS(phase_vocoder(x, beyond), SynthesisError);

  WarpFunction coarse = linear_warp(1.0, x.duration());
  coarse.ref_step = 0.040;
  CHECK_THROWS_AS(phase_vocoder(x, coarse), SynthesisError);

  WarpFunction single;
  single.ref_step = kHop;
  single.source_times = {0.0};
  CHECK_THROWS_AS(phase_vocoder(x, single), SynthesisError);
}

TEST_CASE("speed: rate 1 behaves like the identity warp") {
  const AudioClip x = testutil::speech_like(1.0, 23);
  const AudioClip y = speed(x, 1.0);
  CHECK(testutil::snr_db(x.samples, y.samples, 512, y.size() - 512) >= 30.0);
}

TEST_CASE("speed: rate 2 halves and rate 0.5 doubles the duration") {
  const AudioClip x = testutil::speech_like(2.0, 24);
  CHECK(std::abs(speed(x, 2.0).duration() - 1.0) <= kHop);
  CHECK(std::abs(speed(x, 0.5).duration() - 4.0) <= kHop);
}

TEST_CASE("speed: pitch is preserved across tones and rates") {
  for (double freq : {200.0, 440.0, 1000.0, 3000.0}) {
    const AudioClip x = testutil::sine_clip(freq, 1.0);
    const std::size_t want = testutil::dominant_bin(x);
    for (double rate : {0.5, 0.8, 1.25, 2.0}) {
      const AudioClip y = speed(x, rate);
      CHECK(testutil::dominant_bin(y) == want);
    }
  }
}

TEST_CASE("speed: output RMS within 3 dB of input for stationary signals") {
  auto rms = [](const AudioClip& c, std::size_t from, std::size_t to) {
    double acc = 0.0;
    for (std::size_t i = from; i < to; ++i) acc += c.samples[i] * c.samples[i];
    return std::sqrt(acc / static_cast<double>(to - from));
  };
  AudioClip noise = white_noise(32000, 31);
  for (auto& s : noise.samples) s *= 0.25;
  const AudioClip tone = testutil::sine_clip(700.0, 2.0);
  for (const AudioClip* x : std::initializer_list<const AudioClip*>{&noise, &tone}) {
    const double in_rms = rms(*x, 512, x->size() - 512);
    for (double rate : {0.5, 1.0, 2.0}) {
      const AudioClip y = speed(*x, rate);
      const double out_rms = rms(y, 512, y.size() - 512);
      const double db = 20.0 * std::log10(out_rms / in_rms);
      CHECK(std::abs(db) <= 3.0);
    }
  }
}
