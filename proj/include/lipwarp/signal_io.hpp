#pragma once

#include <string>

#include "lipwarp/types.hpp"

namespace lipwarp {

/// Reads a RIFF/WAVE file (PCM16 or 32-bit float). Multi-channel input is
/// averaged to mono and the result is resampled to the 16 kHz working rate.
/// PCM16 value v maps to v/32768.
AudioClip read_wav(const std::string& path);

/// Writes a mono PCM16 WAV file. Samples are clamped to [-1, 1) range of
/// the encoding; round trip error per sample is below 1/32768.
void write_wav(const AudioClip& clip, const std::string& path);

/// Reads an AVEM embedding file (see README for the byte layout).
EmbeddingSequence read_embeddings(const std::string& path);

/// Writes an AVEM embedding file; read_embeddings inverts it bit-exactly.
void write_embeddings(const EmbeddingSequence& seq, const std::string& path);

/// Band-limited resampling with a Kaiser-windowed sinc kernel (16 taps).
/// Output length is round(len * target / source) and the identity when the
/// rates already match.
AudioClip resample(const AudioClip& clip, int target_rate);

}  // namespace lipwarp
