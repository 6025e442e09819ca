#pragma once

#include <cstdint>

#include "lipwarp/align.hpp"
#include "lipwarp/types.hpp"

namespace lipwarp {

/// Deterministic 64-bit generator (splitmix64). Every random degradation is
/// a pure function of its inputs and a seed, so experiments replay exactly.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform in [0, bound), by modulo reduction.
  std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }
  // Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

/// Seeded white noise, uniform amplitudes in [-1, 1).
AudioClip white_noise(std::size_t n_samples, std::uint64_t seed,
                      int sample_rate = kWorkingRate);

/// Seeded pink (1/f) noise via the Voss-McCartney octave-row scheme,
/// normalized to [-1, 1].
AudioClip pink_noise(std::size_t n_samples, std::uint64_t seed,
                     int sample_rate = kWorkingRate);

/// clip + g * noise with g chosen so the mix hits the requested SNR:
/// g = sqrt(P_clip / (P_noise * 10^(snr_db/10))). Shorter noise is tiled.
/// The output is not renormalized and may exceed [-1, 1].
AudioClip mix_noise(const AudioClip& clip, const AudioClip& noise,
                    double snr_db);

/// Zeroes one contiguous segment of the given duration, placed uniformly at
/// random by the seed.
AudioClip random_silence(const AudioClip& clip, double duration,
                         std::uint64_t seed);

/// Replaces one contiguous run of frames with the sequence's mean vector,
/// as an embedding-level stand-in for occluding the video.
EmbeddingSequence occlude_embeddings(const EmbeddingSequence& seq,
                                     double duration, std::uint64_t seed);

/// Warps audio along the given warp function (phase vocoder); used to
/// manufacture unaligned inputs with a known ground truth.
AudioClip apply_warp_audio(const AudioClip& clip, const WarpFunction& warp);

/// Frame-level warp: output frame k is the source frame nearest to
/// warp(k * frame_step). No interpolation between rows.
EmbeddingSequence apply_warp_embeddings(const EmbeddingSequence& seq,
                                        const WarpFunction& warp);

}  // namespace lipwarp
