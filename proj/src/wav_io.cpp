// Copyright 2026 The audiozoom authors
// RIFF/WAVE parsing and serialization.
//
// Licensed under the Apache License, Version 2.0

#include "azoom/wav_io.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>

#include "binary_io.hpp"

namespace azoom {

namespace {

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatFloat = 3;
constexpr uint16_t kFormatExtensible = 0xFFFE;

struct FmtChunk {
  uint16_t format_tag = 0;
  uint16_t channels = 0;
  uint32_t sample_rate = 0;
  uint16_t bits_per_sample = 0;
};

uint32_t fourcc(const char* s) {
  uint32_t v;
  std::memcpy(&v, s, 4);
  return v;
}

}  // namespace

MultichannelWave read_wav(const std::string& path) {
  detail::check_little_endian();
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open wav file: " + path);

  if (detail::read_le<uint32_t>(is) != fourcc("RIFF"))
    throw std::runtime_error("not a RIFF file: " + path);
  detail::read_le<uint32_t>(is);  // riff size, unused
  if (detail::read_le<uint32_t>(is) != fourcc("WAVE"))
    throw std::runtime_error("not a WAVE file: " + path);

  FmtChunk fmt;
  bool have_fmt = false;
  std::vector<char> payload;

  while (is.peek() != EOF) {
    uint32_t id = detail::read_le<uint32_t>(is);
    uint32_t size = detail::read_le<uint32_t>(is);
    if (id == fourcc("fmt ")) {
      if (size < 16) throw std::runtime_error("malformed fmt chunk: " + path);
      fmt.format_tag = detail::read_le<uint16_t>(is);
      fmt.channels = detail::read_le<uint16_t>(is);
      fmt.sample_rate = detail::read_le<uint32_t>(is);
      detail::read_le<uint32_t>(is);  // byte rate
      detail::read_le<uint16_t>(is);  // block align
      fmt.bits_per_sample = detail::read_le<uint16_t>(is);
      uint32_t consumed = 16;
      if (fmt.format_tag == kFormatExtensible) {
        if (size < 40) throw std::runtime_error("malformed extensible fmt chunk: " + path);
        detail::read_le<uint16_t>(is);  // cbSize
        detail::read_le<uint16_t>(is);  // valid bits
        detail::read_le<uint32_t>(is);  // channel mask
        fmt.format_tag = detail::read_le<uint16_t>(is);  // subformat GUID, first two bytes
        char guid_rest[14];
        detail::read_bytes(is, guid_rest, sizeof(guid_rest));
        consumed = 40;
      }
      is.seekg(std::streamoff(size - consumed), std::ios::cur);
      have_fmt = true;
    } else if (id == fourcc("data")) {
      if (!have_fmt) throw std::runtime_error("data chunk before fmt chunk: " + path);
      payload.resize(size);
      if (size > 0) detail::read_bytes(is, payload.data(), size);
    } else {
      is.seekg(std::streamoff(size), std::ios::cur);
      if (!is) throw std::runtime_error("truncated chunk in wav file: " + path);
    }
    if (size & 1) is.seekg(1, std::ios::cur);  // chunks are word-aligned
  }

  if (!have_fmt) throw std::runtime_error("missing fmt chunk: " + path);
  if (fmt.channels == 0 || fmt.sample_rate == 0)
    throw std::runtime_error("malformed wav header: " + path);

  const bool is_pcm16 = fmt.format_tag == kFormatPcm && fmt.bits_per_sample == 16;
  const bool is_f32 = fmt.format_tag == kFormatFloat && fmt.bits_per_sample == 32;
  if (!is_pcm16 && !is_f32)
    throw std::runtime_error("unsupported wav encoding (need PCM16 or float32): " + path);

  const size_t bytes_per_sample = fmt.bits_per_sample / 8;
  const size_t frame_bytes = bytes_per_sample * fmt.channels;
  const size_t num_frames = payload.size() / frame_bytes;

  MultichannelWave wave;
  wave.sample_rate = int(fmt.sample_rate);
  wave.channels.assign(fmt.channels, std::vector<double>(num_frames));

  const char* p = payload.data();
  for (size_t n = 0; n < num_frames; ++n) {
    for (uint16_t c = 0; c < fmt.channels; ++c) {
      if (is_pcm16) {
        int16_t v;
        std::memcpy(&v, p, 2);
        wave.channels[c][n] = double(v) / 32768.0;
        p += 2;
      } else {
        float v;
        std::memcpy(&v, p, 4);
        wave.channels[c][n] = double(v);
        p += 4;
      }
    }
  }
  return wave;
}

void write_wav(const std::string& path, const MultichannelWave& wave, WavEncoding encoding) {
  wave.validate();
  const uint16_t channels = uint16_t(wave.num_channels());
  const size_t num_frames = wave.num_samples();
  const uint16_t bits = encoding == WavEncoding::pcm16 ? 16 : 32;
  const uint16_t block_align = uint16_t(channels * bits / 8);
  const uint32_t data_bytes = uint32_t(num_frames * block_align);
  const bool is_float = encoding == WavEncoding::float32;
  // Non-PCM formats carry a fact chunk.
  const uint32_t riff_size = 4 + (8 + 16) + (is_float ? 8 + 4 : 0) + (8 + data_bytes);

  detail::atomic_write(path, [&](std::ostream& os) {
    detail::write_le(os, fourcc("RIFF"));
    detail::write_le(os, riff_size);
    detail::write_le(os, fourcc("WAVE"));

    detail::write_le(os, fourcc("fmt "));
    detail::write_le<uint32_t>(os, 16);
    detail::write_le<uint16_t>(os, is_float ? kFormatFloat : kFormatPcm);
    detail::write_le(os, channels);
    detail::write_le<uint32_t>(os, uint32_t(wave.sample_rate));
    detail::write_le<uint32_t>(os, uint32_t(wave.sample_rate) * block_align);
    detail::write_le(os, block_align);
    detail::write_le(os, bits);

    if (is_float) {
      detail::write_le(os, fourcc("fact"));
      detail::write_le<uint32_t>(os, 4);
      detail::write_le<uint32_t>(os, uint32_t(num_frames));
    }

    detail::write_le(os, fourcc("data"));
    detail::write_le(os, data_bytes);
    for (size_t n = 0; n < num_frames; ++n) {
      for (uint16_t c = 0; c < channels; ++c) {
        const double x = wave.channels[c][n];
        if (is_float) {
          detail::write_le(os, float(x));
        } else {
          double scaled = std::round(x * 32768.0);
          scaled = std::clamp(scaled, -32768.0, 32767.0);
          detail::write_le<int16_t>(os, int16_t(scaled));
        }
      }
    }
  });
}

}  // namespace azoom
