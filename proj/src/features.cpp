#include "lipwarp/features.hpp"

#include <algorithm>
#include <cmath>

#include "fft.hpp"

namespace lipwarp {

namespace {

// Periodic Hann, the variant whose squared overlap at 50% is exactly
// invertible with per-sample normalization.
std::vector<double> hann_window(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i)
    w[i] = 0.5 * (1.0 - std::cos(2.0 * M_PI * static_cast<double>(i) /
                                 static_cast<double>(n)));
  return w;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

}  // namespace

std::size_t frame_count(std::size_t len, std::size_t win, std::size_t hop) {
  if (len < win) return 0;
  return (len - win) / hop + 1;
}

Spectrogram stft(const AudioClip& clip, std::size_t n_fft, std::size_t hop) {
  if (n_fft == 0 || (n_fft & (n_fft - 1)) != 0)
    throw InputError("stft: n_fft must be a power of two");
  if (hop == 0) throw InputError("stft: hop must be positive");
  const std::size_t t_frames = frame_count(clip.size(), n_fft, hop);
  if (t_frames == 0)
    throw InputError("stft: clip shorter than one analysis window");

  const auto window = hann_window(n_fft);
  Spectrogram spec;
  spec.n_fft = n_fft;
  spec.hop = hop;
  spec.sample_rate = clip.sample_rate;
  spec.values.resize(t_frames * spec.bins());

  std::vector<std::complex<double>> buf(n_fft);
  for (std::size_t t = 0; t < t_frames; ++t) {
    for (std::size_t i = 0; i < n_fft; ++i)
      buf[i] = clip.samples[t * hop + i] * window[i];
    detail::fft(buf, false);
    for (std::size_t k = 0; k < spec.bins(); ++k) spec.at(t, k) = buf[k];
  }
  return spec;
}

AudioClip istft(const Spectrogram& spec) {
  const std::size_t n_fft = spec.n_fft;
  const std::size_t hop = spec.hop;
  const std::size_t t_frames = spec.frames();
  AudioClip out;
  out.sample_rate = spec.sample_rate;
  if (t_frames == 0) return out;

  const auto window = hann_window(n_fft);
  const std::size_t out_len = hop * (t_frames - 1) + n_fft;
  std::vector<double> acc(out_len, 0.0);
  std::vector<double> norm(out_len, 0.0);

  std::vector<std::complex<double>> buf(n_fft);
  for (std::size_t t = 0; t < t_frames; ++t) {
    for (std::size_t k = 0; k < spec.bins(); ++k) buf[k] = spec.at(t, k);
    for (std::size_t k = spec.bins(); k < n_fft; ++k)
      buf[k] = std::conj(spec.at(t, n_fft - k));
    detail::fft(buf, true);
    const std::size_t base = t * hop;
    for (std::size_t i = 0; i < n_fft; ++i) {
      acc[base + i] += buf[i].real() * window[i];
      norm[base + i] += window[i] * window[i];
    }
  }
  out.samples.resize(out_len);
  for (std::size_t i = 0; i < out_len; ++i)
    out.samples[i] = norm[i] > 1e-10 ? acc[i] / norm[i] : 0.0;
  return out;
}

EmbeddingSequence mfcc(const AudioClip& clip, const MfccConfig& config) {
  if (config.n_coeffs <= 0 || config.n_mels < config.n_coeffs)
    throw InputError("mfcc: need 0 < n_coeffs <= n_mels");
  if (!(config.hop > 0.0) || config.hop > config.win_length)
    throw InputError("mfcc: need 0 < hop <= win_length");

  const auto win =
      static_cast<std::size_t>(std::llround(config.win_length * clip.sample_rate));
  const auto hop =
      static_cast<std::size_t>(std::llround(config.hop * clip.sample_rate));
  const std::size_t n_frames = frame_count(clip.size(), win, hop);
  if (n_frames == 0) throw InputError("mfcc: clip shorter than one window");

  const std::size_t n_fft = next_pow2(win);
  const std::size_t n_bins = n_fft / 2 + 1;
  const auto window = hann_window(win);
  const double nyquist = clip.sample_rate / 2.0;

  // Triangular mel filterbank over the power-spectrum bins.
  const int n_mels = config.n_mels;
  std::vector<double> mel_points(n_mels + 2);
  const double mel_max = hz_to_mel(nyquist);
  for (int m = 0; m < n_mels + 2; ++m)
    mel_points[m] = mel_to_hz(mel_max * m / (n_mels + 1));
  std::vector<std::vector<double>> filters(n_mels,
                                           std::vector<double>(n_bins, 0.0));
  for (int m = 0; m < n_mels; ++m) {
    const double lo = mel_points[m], mid = mel_points[m + 1],
                 hi = mel_points[m + 2];
    for (std::size_t k = 0; k < n_bins; ++k) {
      const double f = static_cast<double>(k) * clip.sample_rate /
                       static_cast<double>(n_fft);
      if (f > lo && f < mid)
        filters[m][k] = (f - lo) / (mid - lo);
      else if (f >= mid && f < hi)
        filters[m][k] = (hi - f) / (hi - mid);
    }
  }

  // Pre-emphasis over the whole signal, then frame it.
  std::vector<double> emphasized(clip.size());
  emphasized[0] = clip.samples[0];
  for (std::size_t i = 1; i < clip.size(); ++i)
    emphasized[i] = clip.samples[i] - config.pre_emphasis * clip.samples[i - 1];

  EmbeddingSequence seq;
  seq.dim = static_cast<std::size_t>(config.n_coeffs);
  seq.frame_step = config.hop;
  seq.modality = Modality::audio;
  seq.values.resize(n_frames * seq.dim);

  const double dct_scale0 = std::sqrt(1.0 / n_mels);
  const double dct_scale = std::sqrt(2.0 / n_mels);
  std::vector<std::complex<double>> buf(n_fft);
  std::vector<double> power(n_bins);
  std::vector<double> log_mel(n_mels);
  for (std::size_t t = 0; t < n_frames; ++t) {
    std::fill(buf.begin(), buf.end(), std::complex<double>(0.0, 0.0));
    for (std::size_t i = 0; i < win; ++i)
      buf[i] = emphasized[t * hop + i] * window[i];
    detail::fft(buf, false);
    for (std::size_t k = 0; k < n_bins; ++k) power[k] = std::norm(buf[k]);

    for (int m = 0; m < n_mels; ++m) {
      double e = 0.0;
      for (std::size_t k = 0; k < n_bins; ++k) e += filters[m][k] * power[k];
      log_mel[m] = std::log(std::max(e, 1e-10));
    }
    for (int c = 0; c < config.n_coeffs; ++c) {
      double v = 0.0;
      for (int m = 0; m < n_mels; ++m)
        v += log_mel[m] * std::cos(M_PI * c * (m + 0.5) / n_mels);
      seq.values[t * seq.dim + c] =
          static_cast<float>(v * (c == 0 ? dct_scale0 : dct_scale));
    }
  }
  return seq;
}

}  // namespace lipwarp
