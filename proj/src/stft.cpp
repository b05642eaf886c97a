// Copyright 2026 The audiozoom authors
// STFT / iSTFT on top of FFTW, parallel across frames.
//
// Licensed under the Apache License, Version 2.0

#include "azoom/stft.hpp"

#include <fftw3.h>
#include <omp.h>

#include <algorithm>
#include <map>
#include <mutex>

namespace azoom {

namespace {

// FFTW planning is not thread-safe; plan once per fft size and reuse.
// Execution through the new-array API is thread-safe as long as buffers
// come from fftw_malloc (same alignment as the planning buffers).
struct FftPlans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

std::mutex g_plan_mutex;
std::map<int, FftPlans>& plan_cache() {
  static std::map<int, FftPlans> cache;
  return cache;
}

FftPlans plans_for(int n) {
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto& cache = plan_cache();
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  double* re = fftw_alloc_real(n);
  fftw_complex* co = fftw_alloc_complex(n / 2 + 1);
  FftPlans p;
  p.r2c = fftw_plan_dft_r2c_1d(n, re, co, FFTW_ESTIMATE);
  p.c2r = fftw_plan_dft_c2r_1d(n, co, re, FFTW_ESTIMATE);
  fftw_free(re);
  fftw_free(co);
  if (!p.r2c || !p.c2r) throw std::runtime_error("fftw planning failed");
  cache[n] = p;
  return p;
}

void validate_config(const StftConfig& cfg) {
  require(cfg.fft_size > 0 && cfg.fft_size % 2 == 0, "fft_size must be even and positive");
  require(cfg.hop > 0, "hop must be positive");
  require(cfg.fft_size >= 2 * cfg.hop, "fft_size must be at least twice the hop");
  // Reconstructability: the analysis*synthesis overlap-add sum must stay
  // bounded away from zero in steady state.
  std::vector<double> w = make_window(cfg.window, cfg.fft_size);
  for (int n = 0; n < cfg.hop; ++n) {
    double s = 0.0;
    for (int k = n; k < cfg.fft_size; k += cfg.hop) s += w[k] * w[k];
    require(s > 0.1, "window/hop combination has a degenerate overlap-add sum");
  }
}

Spectrogram stft_impl(const std::vector<double>& x, const StftConfig& cfg,
                      int sample_rate, bool parallel) {
  validate_config(cfg);
  require(sample_rate > 0, "sample rate must be positive");
  const int n = cfg.fft_size;
  require(int(x.size()) >= n, "signal shorter than one analysis frame");

  const int hop = cfg.hop;
  const int frames = 1 + int((x.size() - size_t(n)) / size_t(hop));
  const int bins = n / 2 + 1;
  const std::vector<double> win = make_window(cfg.window, n);

  Spectrogram spec;
  spec.frames = frames;
  spec.bins = bins;
  spec.frame_hop = hop;
  spec.fft_size = n;
  spec.sample_rate = sample_rate;
  spec.data.resize(size_t(frames) * size_t(bins));

  FftPlans plans = plans_for(n);

#pragma omp parallel if (parallel)
  {
    double* in = fftw_alloc_real(n);
    fftw_complex* out = fftw_alloc_complex(bins);
#pragma omp for schedule(static)
    for (int t = 0; t < frames; ++t) {
      const size_t offset = size_t(t) * size_t(hop);
      for (int i = 0; i < n; ++i) in[i] = x[offset + i] * win[i];
      fftw_execute_dft_r2c(plans.r2c, in, out);
      std::complex<double>* row = &spec.data[size_t(t) * size_t(bins)];
      for (int f = 0; f < bins; ++f) row[f] = {out[f][0], out[f][1]};
    }
    fftw_free(in);
    fftw_free(out);
  }
  return spec;
}

}  // namespace

std::vector<double> make_window(Window w, int n) {
  std::vector<double> win(n);
  for (int i = 0; i < n; ++i) {
    double hann = 0.5 - 0.5 * std::cos(kTwoPi * i / n);
    win[i] = (w == Window::hann) ? hann : std::sqrt(hann);
  }
  return win;
}

Window window_from_string(const std::string& s) {
  if (s == "hann") return Window::hann;
  if (s == "sqrt_hann") return Window::sqrt_hann;
  throw std::invalid_argument("unknown window: " + s);
}

std::string to_string(Window w) {
  return w == Window::hann ? "hann" : "sqrt_hann";
}

Spectrogram stft(const std::vector<double>& channel, const StftConfig& cfg, int sample_rate) {
  return stft_impl(channel, cfg, sample_rate, true);
}

namespace serial {
Spectrogram stft(const std::vector<double>& channel, const StftConfig& cfg, int sample_rate) {
  return stft_impl(channel, cfg, sample_rate, false);
}
}  // namespace serial

std::vector<double> istft(const Spectrogram& spec, const StftConfig& cfg) {
  require(spec.fft_size == cfg.fft_size && spec.frame_hop == cfg.hop,
          "spectrogram was produced with a different fft_size/hop");
  require(spec.bins == spec.fft_size / 2 + 1, "spectrogram bins do not match fft_size");
  validate_config(cfg);

  const int n = cfg.fft_size;
  const int hop = cfg.hop;
  const int frames = spec.frames;
  const std::vector<double> win = make_window(cfg.window, n);

  const size_t out_len = size_t(frames - 1) * size_t(hop) + size_t(n);
  std::vector<double> acc(out_len, 0.0);
  std::vector<double> den(out_len, 0.0);

  FftPlans plans = plans_for(n);
  double* time = fftw_alloc_real(n);
  fftw_complex* freq = fftw_alloc_complex(spec.bins);

  for (int t = 0; t < frames; ++t) {
    const std::complex<double>* row = &spec.data[size_t(t) * size_t(spec.bins)];
    for (int f = 0; f < spec.bins; ++f) {
      freq[f][0] = row[f].real();
      freq[f][1] = row[f].imag();
    }
    fftw_execute_dft_c2r(plans.c2r, freq, time);
    const size_t offset = size_t(t) * size_t(hop);
    for (int i = 0; i < n; ++i) {
      acc[offset + i] += win[i] * time[i] / n;  // FFTW c2r is unnormalized
      den[offset + i] += win[i] * win[i];
    }
  }
  fftw_free(time);
  fftw_free(freq);

  for (size_t i = 0; i < out_len; ++i)
    acc[i] = den[i] > 1e-8 ? acc[i] / den[i] : 0.0;
  return acc;
}

FeatureMap lps(const Spectrogram& spec) {
  FeatureMap m = FeatureMap::zeros(spec.frames, spec.bins, FeatureKind::lps);
  const double eps = 1e-12;
  for (size_t i = 0; i < spec.data.size(); ++i) {
    const std::complex<double>& z = spec.data[i];
    m.data[i] = std::log(z.real() * z.real() + z.imag() * z.imag() + eps);
  }
  return m;
}

std::vector<Spectrogram> stft_all(const MultichannelWave& wave, const StftConfig& cfg) {
  wave.validate();
  std::vector<Spectrogram> specs;
  specs.reserve(wave.channels.size());
  for (const auto& ch : wave.channels) specs.push_back(stft(ch, cfg, wave.sample_rate));
  return specs;
}

}  // namespace azoom
