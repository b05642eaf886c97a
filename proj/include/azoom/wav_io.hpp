// Copyright 2026 The audiozoom authors
// RIFF/WAVE reader and writer (PCM16 and IEEE float32).
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <string>

#include "azoom/wave.hpp"

namespace azoom {

enum class WavEncoding { pcm16, float32 };

/// Reads a RIFF/WAVE file with any channel count. Supported encodings:
/// 16-bit PCM and 32-bit IEEE float (plain or WAVE_FORMAT_EXTENSIBLE).
/// Malformed headers and unsupported encodings throw std::runtime_error.
MultichannelWave read_wav(const std::string& path);

/// Writes the wave with the exact sample count. float32 round-trips
/// bit-identically for values representable in single precision; PCM16
/// quantizes with rounding and clamps to [-1, 1].
void write_wav(const std::string& path, const MultichannelWave& wave,
               WavEncoding encoding = WavEncoding::float32);

}  // namespace azoom
