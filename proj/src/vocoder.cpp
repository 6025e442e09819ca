#include "lipwarp/vocoder.hpp"

#include <algorithm>
#include <cmath>

namespace lipwarp {

namespace {

double principal_angle(double x) {
  x = std::fmod(x + M_PI, 2.0 * M_PI);
  if (x < 0.0) x += 2.0 * M_PI;
  return x - M_PI;
}

}  // namespace

AudioClip phase_vocoder(const AudioClip& clip, const WarpFunction& warp,
                        std::size_t n_fft, std::size_t hop) {
  if (clip.sample_rate != kWorkingRate)
    throw SynthesisError("phase_vocoder: clip not at the 16 kHz working rate");
  if (warp.size() < 2)
    throw SynthesisError("phase_vocoder: warp needs at least two samples");
  const double hop_seconds =
      static_cast<double>(hop) / static_cast<double>(clip.sample_rate);
  if (std::abs(warp.ref_step - hop_seconds) > 1e-12)
    throw SynthesisError("phase_vocoder: warp step must equal the STFT hop");
  if (clip.size() < n_fft)
    throw SynthesisError("phase_vocoder: clip shorter than one STFT window");
  for (double s : warp.source_times)
    if (s < -1e-9 || s > clip.duration() + 1e-9)
      throw SynthesisError("phase_vocoder: warp exceeds the clip duration");

  const Spectrogram source = stft(clip, n_fft, hop);
  const std::size_t bins = source.bins();
  const std::size_t t_src = source.frames();
  const std::size_t t_out = warp.size();

  // Expected per-hop phase advance of each bin.
  std::vector<double> omega(bins);
  for (std::size_t k = 0; k < bins; ++k)
    omega[k] = 2.0 * M_PI * static_cast<double>(k) *
               static_cast<double>(hop) / static_cast<double>(n_fft);

  Spectrogram out;
  out.n_fft = n_fft;
  out.hop = hop;
  out.sample_rate = clip.sample_rate;
  out.values.resize(t_out * bins);

  // Fractional source frame for each output frame.
  const double frames_per_second =
      static_cast<double>(clip.sample_rate) / static_cast<double>(hop);
  std::vector<double> phase(bins);

  for (std::size_t t = 0; t < t_out; ++t) {
    double pos = std::clamp(warp.source_times[t] * frames_per_second, 0.0,
                            static_cast<double>(t_src - 1));
    // Snap positions within a microframe of the grid. Otherwise rounding
    // noise flips floor() between consecutive frames, the phase advance is
    // measured between inconsistent frame pairs, and the accumulated phase
    // drifts audibly on non-stationary signals.
    if (std::abs(pos - std::round(pos)) < 1e-6) pos = std::round(pos);
    const auto f0 = std::min(static_cast<std::size_t>(std::floor(pos)),
                             t_src - 1);
    const std::size_t f1 = std::min(f0 + 1, t_src - 1);
    const double frac = pos - static_cast<double>(f0);

    // The first output frame copies the source phase outright; later frames
    // accumulate measured advances from it.
    if (t == 0)
      for (std::size_t k = 0; k < bins; ++k)
        phase[k] = std::arg(source.at(f0, k));

    for (std::size_t k = 0; k < bins; ++k) {
      const auto& a = source.at(f0, k);
      const auto& b = source.at(f1, k);
      const double mag = (1.0 - frac) * std::abs(a) + frac * std::abs(b);
      out.at(t, k) = std::polar(mag, phase[k]);
      // Instantaneous advance measured between the source frames bracketing
      // this position, accumulated into the running output phase.
      const double measured =
          f1 > f0 ? principal_angle(std::arg(b) - std::arg(a) - omega[k]) +
                        omega[k]
                  : omega[k];
      phase[k] += measured;
    }
  }

  AudioClip audio = istft(out);
  audio.samples.resize(hop * (t_out - 1));
  return audio;
}

AudioClip speed(const AudioClip& clip, double rate) {
  if (!(rate > 0.0)) throw SynthesisError("speed: rate must be positive");
  constexpr double kHopSeconds = 256.0 / kWorkingRate;
  const double duration = clip.duration();
  const auto n = static_cast<std::size_t>(
                     std::floor(duration / (rate * kHopSeconds) + 1e-9)) +
                 1;
  WarpFunction warp;
  warp.ref_step = kHopSeconds;
  warp.source_times.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    warp.source_times[k] =
        std::min(rate * static_cast<double>(k) * kHopSeconds, duration);
  return phase_vocoder(clip, warp);
}

}  // namespace lipwarp
