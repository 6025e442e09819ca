#include "lipwarp/signal_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

namespace lipwarp {

void validate(const EmbeddingSequence& seq, const std::string& what) {
  if (seq.dim == 0) throw InputError(what + ": embedding dimension is zero");
  if (seq.values.empty()) throw InputError(what + ": no embedding frames");
  if (seq.values.size() % seq.dim != 0)
    throw InputError(what + ": value count is not a multiple of the dimension");
  if (!(seq.frame_step > 0.0))
    throw InputError(what + ": frame_step must be positive");
  for (float v : seq.values)
    if (!std::isfinite(v))
      throw InputError(what + ": non-finite embedding value");
}

namespace {

// ---------------------------------------------------------------- WAV I/O

template <typename T>
T read_le(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  return v;
}

template <typename T>
void write_le(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

struct WavFormat {
  std::uint16_t codec = 0;  // 1 = PCM, 3 = IEEE float
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits_per_sample = 0;
};

}  // namespace

AudioClip read_wav(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open WAV file: " + path);

  char riff[4], wave[4];
  f.read(riff, 4);
  read_le<std::uint32_t>(f);
  f.read(wave, 4);
  if (!f || std::memcmp(riff, "RIFF", 4) != 0 || std::memcmp(wave, "WAVE", 4) != 0)
    throw InputError("malformed WAV header: " + path);

  WavFormat fmt;
  std::vector<char> data;
  bool have_fmt = false, have_data = false;
  while (f) {
    char chunk_id[4];
    f.read(chunk_id, 4);
    auto chunk_size = read_le<std::uint32_t>(f);
    if (!f) break;
    if (std::memcmp(chunk_id, "fmt ", 4) == 0) {
      fmt.codec = read_le<std::uint16_t>(f);
      fmt.channels = read_le<std::uint16_t>(f);
      fmt.sample_rate = read_le<std::uint32_t>(f);
      read_le<std::uint32_t>(f);  // byte rate
      read_le<std::uint16_t>(f);  // block align
      fmt.bits_per_sample = read_le<std::uint16_t>(f);
      if (chunk_size > 16)
        f.seekg(chunk_size - 16 + (chunk_size & 1), std::ios::cur);
      have_fmt = true;
    } else if (std::memcmp(chunk_id, "data", 4) == 0) {
      data.resize(chunk_size);
      f.read(data.data(), chunk_size);
      if (static_cast<std::uint32_t>(f.gcount()) != chunk_size)
        throw InputError("truncated WAV data chunk: " + path);
      if (chunk_size & 1) f.seekg(1, std::ios::cur);
      have_data = true;
    } else {
      f.seekg(chunk_size + (chunk_size & 1), std::ios::cur);
    }
  }
  if (!have_fmt || !have_data)
    throw InputError("malformed WAV file (missing fmt or data chunk): " + path);
  if (fmt.channels == 0 || fmt.sample_rate == 0)
    throw InputError("malformed WAV fmt chunk: " + path);

  const bool pcm16 = fmt.codec == 1 && fmt.bits_per_sample == 16;
  const bool f32 = fmt.codec == 3 && fmt.bits_per_sample == 32;
  if (!pcm16 && !f32)
    throw InputError("unsupported WAV encoding (want PCM16 or float32): " + path);

  const std::size_t bytes_per = fmt.bits_per_sample / 8;
  const std::size_t n_frames = data.size() / (bytes_per * fmt.channels);
  if (n_frames == 0) throw InputError("zero-length audio: " + path);

  AudioClip clip;
  clip.sample_rate = static_cast<int>(fmt.sample_rate);
  clip.samples.resize(n_frames);
  for (std::size_t i = 0; i < n_frames; ++i) {
    double acc = 0.0;
    for (std::uint16_t ch = 0; ch < fmt.channels; ++ch) {
      const char* p = data.data() + (i * fmt.channels + ch) * bytes_per;
      if (pcm16) {
        std::int16_t v;
        std::memcpy(&v, p, 2);
        acc += v / 32768.0;
      } else {
        float v;
        std::memcpy(&v, p, 4);
        acc += std::clamp(static_cast<double>(v), -1.0, 1.0);
      }
    }
    clip.samples[i] = acc / fmt.channels;
  }
  return resample(clip, kWorkingRate);
}

void write_wav(const AudioClip& clip, const std::string& path) {
  if (clip.sample_rate <= 0) throw InputError("write_wav: invalid sample rate");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open WAV file for writing: " + path);

  const std::uint32_t data_bytes = static_cast<std::uint32_t>(clip.size() * 2);
  f.write("RIFF", 4);
  write_le<std::uint32_t>(f, 36 + data_bytes);
  f.write("WAVE", 4);
  f.write("fmt ", 4);
  write_le<std::uint32_t>(f, 16);
  write_le<std::uint16_t>(f, 1);  // PCM
  write_le<std::uint16_t>(f, 1);  // mono
  write_le<std::uint32_t>(f, static_cast<std::uint32_t>(clip.sample_rate));
  write_le<std::uint32_t>(f, static_cast<std::uint32_t>(clip.sample_rate * 2));
  write_le<std::uint16_t>(f, 2);
  write_le<std::uint16_t>(f, 16);
  f.write("data", 4);
  write_le<std::uint32_t>(f, data_bytes);
  for (double s : clip.samples) {
    const long q = std::lround(s * 32768.0);
    const auto v = static_cast<std::int16_t>(std::clamp(q, -32768L, 32767L));
    write_le<std::int16_t>(f, v);
  }
  if (!f) throw InputError("failed writing WAV file: " + path);
}

// ------------------------------------------------------------- AVEM files
//
// Layout (little-endian): "AVEM", u32 version=1, u32 N, u32 D,
// f64 frame_step_seconds, u8 modality (0=audio, 1=video),
// then N*D float32 values row-major.

EmbeddingSequence read_embeddings(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open embedding file: " + path);

  char magic[4];
  f.read(magic, 4);
  if (!f || std::memcmp(magic, "AVEM", 4) != 0)
    throw InputError("bad magic in embedding file: " + path);
  const auto version = read_le<std::uint32_t>(f);
  if (version != 1)
    throw InputError("unsupported embedding file version: " + path);
  const auto n = read_le<std::uint32_t>(f);
  const auto d = read_le<std::uint32_t>(f);
  const auto step = read_le<double>(f);
  const auto modality = read_le<std::uint8_t>(f);
  if (!f) throw InputError("truncated embedding header: " + path);
  if (n == 0 || d == 0)
    throw InputError("embedding file declares empty sequence: " + path);
  if (modality > 1)
    throw InputError("unknown modality tag in embedding file: " + path);

  EmbeddingSequence seq;
  seq.dim = d;
  seq.frame_step = step;
  seq.modality = static_cast<Modality>(modality);
  seq.values.resize(static_cast<std::size_t>(n) * d);
  f.read(reinterpret_cast<char*>(seq.values.data()),
         static_cast<std::streamsize>(seq.values.size() * sizeof(float)));
  if (static_cast<std::size_t>(f.gcount()) != seq.values.size() * sizeof(float))
    throw InputError("truncated embedding payload: " + path);
  validate(seq, path);
  return seq;
}

void write_embeddings(const EmbeddingSequence& seq, const std::string& path) {
  validate(seq, "write_embeddings");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open embedding file for writing: " + path);
  f.write("AVEM", 4);
  write_le<std::uint32_t>(f, 1);
  write_le<std::uint32_t>(f, static_cast<std::uint32_t>(seq.frames()));
  write_le<std::uint32_t>(f, static_cast<std::uint32_t>(seq.dim));
  write_le<double>(f, seq.frame_step);
  write_le<std::uint8_t>(f, static_cast<std::uint8_t>(seq.modality));
  f.write(reinterpret_cast<const char*>(seq.values.data()),
          static_cast<std::streamsize>(seq.values.size() * sizeof(float)));
  if (!f) throw InputError("failed writing embedding file: " + path);
}

// ------------------------------------------------------------- resampling

namespace {

// Zeroth-order modified Bessel function, for the Kaiser window.
double bessel_i0(double x) {
  double sum = 1.0, term = 1.0;
  const double half = x / 2.0;
  for (int k = 1; k < 32; ++k) {
    term *= (half / k) * (half / k);
    sum += term;
    if (term < 1e-16 * sum) break;
  }
  return sum;
}

double sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  const double px = M_PI * x;
  return std::sin(px) / px;
}

}  // namespace

AudioClip resample(const AudioClip& clip, int target_rate) {
  if (target_rate <= 0) throw InputError("resample: target rate must be positive");
  if (clip.sample_rate == target_rate || clip.samples.empty()) {
    AudioClip out = clip;
    out.sample_rate = target_rate;
    return out;
  }

  const double ratio = static_cast<double>(target_rate) / clip.sample_rate;
  const auto out_len = static_cast<std::size_t>(
      std::llround(static_cast<double>(clip.size()) * ratio));

  // 16-tap Kaiser-windowed sinc; cutoff at the narrower Nyquist.
  constexpr int kHalfTaps = 8;
  constexpr double kBeta = 8.6;
  const double cutoff = std::min(1.0, ratio);
  const double i0_beta = bessel_i0(kBeta);

  AudioClip out;
  out.sample_rate = target_rate;
  out.samples.resize(out_len);
  const auto n_in = static_cast<long>(clip.size());
  for (std::size_t n = 0; n < out_len; ++n) {
    const double t = static_cast<double>(n) / ratio;
    const long j0 = static_cast<long>(std::floor(t)) - (kHalfTaps - 1);
    double acc = 0.0;
    for (long j = j0; j < j0 + 2 * kHalfTaps; ++j) {
      if (j < 0 || j >= n_in) continue;
      const double x = t - static_cast<double>(j);
      const double u = x / kHalfTaps;
      if (u <= -1.0 || u >= 1.0) continue;
      const double window = bessel_i0(kBeta * std::sqrt(1.0 - u * u)) / i0_beta;
      acc += clip.samples[static_cast<std::size_t>(j)] *
             cutoff * sinc(cutoff * x) * window;
    }
    out.samples[n] = acc;
  }
  return out;
}

}  // namespace lipwarp
