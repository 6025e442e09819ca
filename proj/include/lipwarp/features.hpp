#pragma once

#include <complex>
#include <vector>

#include "lipwarp/types.hpp"

namespace lipwarp {

/// One-sided STFT frames: frames() x (n_fft/2 + 1) complex bins.
/// Frame t covers samples [t*hop, t*hop + n_fft) under a Hann window.
struct Spectrogram {
  std::vector<std::complex<double>> values;  // row-major
  std::size_t n_fft = 512;
  std::size_t hop = 256;
  int sample_rate = kWorkingRate;

  std::size_t bins() const { return n_fft / 2 + 1; }
  std::size_t frames() const { return bins() == 0 ? 0 : values.size() / bins(); }
  std::complex<double>& at(std::size_t t, std::size_t k) {
    return values[t * bins() + k];
  }
  const std::complex<double>& at(std::size_t t, std::size_t k) const {
    return values[t * bins() + k];
  }
};

struct MfccConfig {
  int n_coeffs = 13;
  int n_mels = 40;
  double win_length = 0.025;   // seconds
  double hop = 0.010;          // seconds
  double pre_emphasis = 0.97;
};

/// Number of analysis frames for a signal of `len` samples:
/// floor((len - win) / hop) + 1, or 0 when the signal is shorter than one
/// window.
std::size_t frame_count(std::size_t len, std::size_t win, std::size_t hop);

/// Hann-windowed short-time Fourier transform. n_fft must be a power of two
/// and the clip at least one window long.
Spectrogram stft(const AudioClip& clip, std::size_t n_fft = 512,
                 std::size_t hop = 256);

/// Weighted overlap-add inverse with squared-window normalization.
/// istft(stft(x)) reproduces x exactly away from the first/last window.
AudioClip istft(const Spectrogram& spec);

/// Mel-frequency cepstral coefficients: pre-emphasis, Hann window, power
/// spectrum, triangular mel filterbank (HTK formula, 0..Nyquist), log with a
/// 1e-10 floor, orthonormal DCT-II. One row per frame, D = n_coeffs.
EmbeddingSequence mfcc(const AudioClip& clip, const MfccConfig& config = {});

}  // namespace lipwarp
