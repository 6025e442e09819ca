#include "lipwarp/degrade.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "lipwarp/smooth.hpp"
#include "lipwarp/vocoder.hpp"

namespace lipwarp {

AudioClip white_noise(std::size_t n_samples, std::uint64_t seed,
                      int sample_rate) {
  SplitMix64 rng(seed);
  AudioClip clip;
  clip.sample_rate = sample_rate;
  clip.samples.resize(n_samples);
  for (auto& s : clip.samples) s = 2.0 * rng.next_double() - 1.0;
  return clip;
}

AudioClip pink_noise(std::size_t n_samples, std::uint64_t seed,
                     int sample_rate) {
  constexpr int kRows = 16;
  SplitMix64 rng(seed);
  double rows[kRows];
  for (auto& r : rows) r = 2.0 * rng.next_double() - 1.0;

  AudioClip clip;
  clip.sample_rate = sample_rate;
  clip.samples.resize(n_samples);
  for (std::size_t n = 0; n < n_samples; ++n) {
    // Update the row selected by the count of trailing zeros of the sample
    // counter; row k changes every 2^k samples.
    const int row = std::min(
        kRows - 1, static_cast<int>(std::countr_zero(n + 1)));
    rows[row] = 2.0 * rng.next_double() - 1.0;
    double sum = 0.0;
    for (double r : rows) sum += r;
    clip.samples[n] = sum / kRows;
  }
  return clip;
}

namespace {

double mean_power(const std::vector<double>& samples) {
  double acc = 0.0;
  for (double s : samples) acc += s * s;
  return acc / static_cast<double>(samples.size());
}

}  // namespace

AudioClip mix_noise(const AudioClip& clip, const AudioClip& noise,
                    double snr_db) {
  if (clip.samples.empty() || noise.samples.empty())
    throw InputError("mix_noise: empty clip or noise");
  if (clip.sample_rate != noise.sample_rate)
    throw InputError("mix_noise: sample rates differ");

  // Tile the noise to the clip length if needed.
  std::vector<double> used(clip.size());
  for (std::size_t i = 0; i < used.size(); ++i)
    used[i] = noise.samples[i % noise.size()];

  const double p_clip = mean_power(clip.samples);
  const double p_noise = mean_power(used);
  if (p_clip <= 0.0 || p_noise <= 0.0)
    throw InputError("mix_noise: silent clip or noise (undefined power ratio)");

  const double gain =
      std::sqrt(p_clip / (p_noise * std::pow(10.0, snr_db / 10.0)));
  AudioClip out = clip;
  for (std::size_t i = 0; i < out.size(); ++i)
    out.samples[i] = clip.samples[i] + gain * used[i];
  return out;
}

AudioClip random_silence(const AudioClip& clip, double duration,
                         std::uint64_t seed) {
  const auto n = static_cast<std::size_t>(
      std::llround(duration * clip.sample_rate));
  if (n > clip.size())
    throw InputError("random_silence: duration exceeds the clip");
  SplitMix64 rng(seed);
  const std::size_t start = rng.next_below(clip.size() - n + 1);
  AudioClip out = clip;
  std::fill(out.samples.begin() + static_cast<long>(start),
            out.samples.begin() + static_cast<long>(start + n), 0.0);
  return out;
}

EmbeddingSequence occlude_embeddings(const EmbeddingSequence& seq,
                                     double duration, std::uint64_t seed) {
  validate(seq, "occlude_embeddings");
  const auto n = static_cast<std::size_t>(
      std::llround(duration / seq.frame_step));
  if (n > seq.frames())
    throw InputError("occlude_embeddings: duration exceeds the sequence");

  std::vector<float> mean(seq.dim, 0.0f);
  for (std::size_t i = 0; i < seq.frames(); ++i)
    for (std::size_t d = 0; d < seq.dim; ++d) mean[d] += seq.row(i)[d];
  for (auto& v : mean) v /= static_cast<float>(seq.frames());

  SplitMix64 rng(seed);
  const std::size_t start = rng.next_below(seq.frames() - n + 1);
  EmbeddingSequence out = seq;
  for (std::size_t i = start; i < start + n; ++i)
    std::copy(mean.begin(), mean.end(), out.row(i).begin());
  return out;
}

AudioClip apply_warp_audio(const AudioClip& clip, const WarpFunction& warp) {
  constexpr double kHopSeconds = 256.0 / kWorkingRate;
  const WarpFunction fine = std::abs(warp.ref_step - kHopSeconds) <= 1e-12
                                ? warp
                                : resample_warp(warp, kHopSeconds);
  return phase_vocoder(clip, fine);
}

EmbeddingSequence apply_warp_embeddings(const EmbeddingSequence& seq,
                                        const WarpFunction& warp) {
  validate(seq, "apply_warp_embeddings");
  const WarpFunction on_grid =
      std::abs(warp.ref_step - seq.frame_step) <= 1e-12
          ? warp
          : resample_warp(warp, seq.frame_step);

  EmbeddingSequence out;
  out.dim = seq.dim;
  out.frame_step = seq.frame_step;
  out.modality = seq.modality;
  out.values.reserve(on_grid.size() * seq.dim);
  const auto last = static_cast<long>(seq.frames()) - 1;
  for (double t : on_grid.source_times) {
    const long idx = std::llround(t / seq.frame_step);
    if (idx < 0 || idx > last)
      throw InputError("apply_warp_embeddings: warp outside the sequence");
    const auto row = seq.row(static_cast<std::size_t>(idx));
    out.values.insert(out.values.end(), row.begin(), row.end());
  }
  return out;
}

}  // namespace lipwarp
