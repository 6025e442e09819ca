#pragma once

#include "lipwarp/align.hpp"
#include "lipwarp/features.hpp"

namespace lipwarp {

/// Time-scale modification along a warp function without pitch change.
/// The clip must be at the 16 kHz working rate and the warp sampled at the
/// STFT hop (16 ms for the default 512/256 analysis); warp values index
/// source time and may not exceed the clip duration. Output duration is
/// (warp samples - 1) * hop exactly.
AudioClip phase_vocoder(const AudioClip& clip, const WarpFunction& warp,
                        std::size_t n_fft = 512, std::size_t hop = 256);

/// Constant-rate time-scale change: speed(clip, 2) halves the duration.
/// Equivalent to phase_vocoder with the warp s(t) = rate * t.
AudioClip speed(const AudioClip& clip, double rate);

}  // namespace lipwarp
