#pragma once
#include <string>

#include "mssl/waveform.hpp"

namespace mssl {

/// Reads a canonical mono RIFF/WAVE file: PCM 16-bit or IEEE float 32-bit,
/// little-endian. Unknown chunks are skipped. Throws IoError when the file
/// cannot be read and ParseError on malformed or unsupported content
/// (including non-mono files).
Waveform read_wav_mono(const std::string& path);

enum class WavFormat { kPcm16, kFloat32 };

/// Writes a mono WAV. kPcm16 clips samples to [-1, 1] before quantizing.
void write_wav_mono(const std::string& path, const Waveform& w,
                    WavFormat format = WavFormat::kPcm16);

}  // namespace mssl
