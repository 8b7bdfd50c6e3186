#include "mssl/wav_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace mssl {

namespace {

std::uint16_t rd_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t rd_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void wr_u16(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
}

void wr_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 16) & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 24) & 0xff));
}

void wr_tag(std::vector<unsigned char>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

float bits_to_float(std::uint32_t bits) {
  float f;
  std::memcpy(&f, &bits, sizeof f);
  return f;
}

std::uint32_t float_to_bits(float f) {
  std::uint32_t bits;
  std::memcpy(&bits, &f, sizeof bits);
  return bits;
}

}  // namespace

Waveform read_wav_mono(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed for " + path);

  if (buf.size() < 12 || std::memcmp(buf.data(), "RIFF", 4) != 0 ||
      std::memcmp(buf.data() + 8, "WAVE", 4) != 0)
    throw ParseError(path + ": not a RIFF/WAVE file");

  bool have_fmt = false;
  std::uint16_t audio_format = 0, channels = 0, bits = 0;
  std::uint32_t sample_rate = 0;
  const unsigned char* data = nullptr;
  std::uint32_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= buf.size()) {
    const unsigned char* hdr = buf.data() + pos;
    const std::uint32_t size = rd_u32(hdr + 4);
    const std::size_t body = pos + 8;
    if (body + size > buf.size()) throw ParseError(path + ": truncated chunk");

    if (std::memcmp(hdr, "fmt ", 4) == 0) {
      if (size < 16) throw ParseError(path + ": fmt chunk too small");
      audio_format = rd_u16(buf.data() + body);
      channels = rd_u16(buf.data() + body + 2);
      sample_rate = rd_u32(buf.data() + body + 4);
      bits = rd_u16(buf.data() + body + 14);
      have_fmt = true;
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      data = buf.data() + body;
      data_size = size;
    }
    pos = body + size + (size & 1);  // chunks are word-aligned
  }

  if (!have_fmt || data == nullptr) throw ParseError(path + ": missing fmt or data chunk");
  if (channels != 1) throw ParseError(path + ": only mono files are supported");
  if (sample_rate == 0) throw ParseError(path + ": bad sample rate");

  Waveform w;
  w.fs_hz = static_cast<double>(sample_rate);
  if (audio_format == 1 && bits == 16) {
    const std::uint32_t n = data_size / 2;
    w.samples.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      const std::int16_t v = static_cast<std::int16_t>(rd_u16(data + 2 * i));
      w.samples[i] = static_cast<double>(v) / 32768.0;
    }
  } else if (audio_format == 3 && bits == 32) {
    const std::uint32_t n = data_size / 4;
    w.samples.resize(n);
    for (std::uint32_t i = 0; i < n; ++i)
      w.samples[i] = static_cast<double>(bits_to_float(rd_u32(data + 4 * i)));
  } else {
    throw ParseError(path + ": unsupported format (need PCM16 or float32)");
  }
  return w;
}

void write_wav_mono(const std::string& path, const Waveform& w, WavFormat format) {
  validate(w);
  const std::uint32_t n = static_cast<std::uint32_t>(w.samples.size());
  const bool f32 = format == WavFormat::kFloat32;
  const std::uint32_t bytes_per = f32 ? 4 : 2;
  const std::uint32_t data_size = n * bytes_per;

  std::vector<unsigned char> out;
  out.reserve(44 + data_size);
  wr_tag(out, "RIFF");
  wr_u32(out, 36 + data_size);
  wr_tag(out, "WAVE");
  wr_tag(out, "fmt ");
  wr_u32(out, 16);
  wr_u16(out, f32 ? 3 : 1);
  wr_u16(out, 1);
  wr_u32(out, static_cast<std::uint32_t>(w.fs_hz));
  wr_u32(out, static_cast<std::uint32_t>(w.fs_hz) * bytes_per);
  wr_u16(out, static_cast<std::uint16_t>(bytes_per));
  wr_u16(out, f32 ? 32 : 16);
  wr_tag(out, "data");
  wr_u32(out, data_size);

  for (double s : w.samples) {
    if (f32) {
      wr_u32(out, float_to_bits(static_cast<float>(s)));
    } else {
      const double clipped = std::clamp(s, -1.0, 1.0);
      const int q = static_cast<int>(std::lround(clipped * 32767.0));
      wr_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
    }
  }

  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
  if (!f) throw IoError("write failed for " + path);
}

}  // namespace mssl
