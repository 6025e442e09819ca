#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lipwarp {

// All audio entering the pipeline is converted to this rate on ingestion.
inline constexpr int kWorkingRate = 16000;

// Input/format problems (bad files, missing inputs, shape mismatches).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Failures while searching for an alignment (disconnected band, degenerate
// matrices).
class AlignmentError : public std::runtime_error {
 public:
  explicit AlignmentError(const std::string& msg) : std::runtime_error(msg) {}
};

// Failures while synthesizing warped audio.
class SynthesisError : public std::runtime_error {
 public:
  explicit SynthesisError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Mono audio signal. Samples are nominally in [-1, 1]; intermediate
/// processing (e.g. noise mixing) may exceed that range, and values are
/// clamped when written as PCM16.
struct AudioClip {
  std::vector<double> samples;
  int sample_rate = kWorkingRate;

  std::size_t size() const { return samples.size(); }
  double duration() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

enum class Modality : std::uint8_t { audio = 0, video = 1 };

/// Time-ordered feature vectors: N frames of dimension D, one frame every
/// frame_step seconds. Values are stored as float32 to match the on-disk
/// embedding format exactly.
struct EmbeddingSequence {
  std::vector<float> values;  // row-major, frames() x dim
  std::size_t dim = 0;
  double frame_step = 0.040;
  Modality modality = Modality::audio;

  std::size_t frames() const { return dim == 0 ? 0 : values.size() / dim; }
  double duration() const { return static_cast<double>(frames()) * frame_step; }

  std::span<const float> row(std::size_t i) const {
    return {values.data() + i * dim, dim};
  }
  std::span<float> row(std::size_t i) {
    return {values.data() + i * dim, dim};
  }
};

// Throws InputError if the sequence breaks its shape/finiteness invariants.
void validate(const EmbeddingSequence& seq, const std::string& what);

}  // namespace lipwarp
