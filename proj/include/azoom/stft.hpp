// Copyright 2026 The audiozoom authors
// Short-time Fourier analysis/synthesis and the log power spectrum.
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <complex>
#include <vector>

#include "azoom/feature_map.hpp"
#include "azoom/wave.hpp"

namespace azoom {

enum class Window { hann, sqrt_hann };

Window window_from_string(const std::string& s);
std::string to_string(Window w);

struct StftConfig {
  int fft_size = 512;
  int hop = 256;
  Window window = Window::sqrt_hann;
};

/// Periodic window of length n (periodic so overlap-add sums stay flat).
std::vector<double> make_window(Window w, int n);

/// One-sided complex spectrogram of a single channel.
struct Spectrogram {
  int frames = 0;       // T
  int bins = 0;         // F = fft_size/2 + 1
  int frame_hop = 0;
  int fft_size = 0;
  int sample_rate = 0;
  std::vector<std::complex<double>> data;  // row-major T x F

  std::complex<double>& at(int t, int f) { return data[size_t(t) * bins + f]; }
  const std::complex<double>& at(int t, int f) const { return data[size_t(t) * bins + f]; }

  double bin_hz(int f) const { return double(f) * sample_rate / fft_size; }
};

/// STFT of one channel. T = 1 + floor((len - fft_size) / hop).
/// Throws if the signal is shorter than one analysis frame.
Spectrogram stft(const std::vector<double>& channel, const StftConfig& cfg, int sample_rate);

/// Weighted overlap-add synthesis with per-sample window normalization.
/// Output length is (T-1)*hop + fft_size.
std::vector<double> istft(const Spectrogram& spec, const StftConfig& cfg);

/// log(|Y|^2 + 1e-12), natural log.
FeatureMap lps(const Spectrogram& spec);

std::vector<Spectrogram> stft_all(const MultichannelWave& wave, const StftConfig& cfg);

namespace serial {
/// Reference implementation without OpenMP, kept for tests and benchmarks.
Spectrogram stft(const std::vector<double>& channel, const StftConfig& cfg, int sample_rate);
}  // namespace serial

}  // namespace azoom
