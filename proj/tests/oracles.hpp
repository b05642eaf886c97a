// Copyright 2026 The audiozoom authors
// Brute-force reference computations used as independent test oracles.
// Everything here is deliberately naive (O(n^2) DFTs, dense angular
// sampling, direct correlation) and must stay independent of the library
// implementations it checks.
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "azoom/common.hpp"
#include "azoom/fov.hpp"
#include "azoom/geometry.hpp"
#include "azoom/stft.hpp"

namespace oracle {

/// O(n^2) one-sided DFT of a real frame, X_k = sum_n x_n e^{-j 2 pi k n / n}.
inline std::vector<std::complex<double>> naive_dft(const std::vector<double>& x) {
  const int n = int(x.size());
  std::vector<std::complex<double>> out(n / 2 + 1);
  for (int k = 0; k <= n / 2; ++k) {
    std::complex<double> acc{0.0, 0.0};
    for (int i = 0; i < n; ++i) acc += x[i] * std::polar(1.0, -azoom::kTwoPi * k * i / n);
    out[k] = acc;
  }
  return out;
}

/// Windowed frame starting at `offset`, for feeding naive_dft.
inline std::vector<double> windowed_frame(const std::vector<double>& x, size_t offset,
                                          const std::vector<double>& window) {
  std::vector<double> frame(window.size());
  for (size_t i = 0; i < window.size(); ++i) frame[i] = x[offset + i] * window[i];
  return frame;
}

/// Sector-in-FOV membership decided by dense sampling of the open sector
/// interior against the (half-open) FOV box.
inline bool sector_in_fov_sampled(const azoom::Sector& s, const azoom::FieldOfView& fov) {
  const double fov_lo = azoom::wrap_deg(fov.theta_low_deg);
  double fov_w = azoom::wrap_deg(fov.theta_high_deg - fov.theta_low_deg);
  if (fov_w == 0.0) fov_w = 360.0;

  bool az_hit = false;
  const int steps = 4096;
  for (int i = 0; i < steps && !az_hit; ++i) {
    const double a = s.az_lo_deg + s.az_width_deg * (i + 0.5) / steps;
    const double off = azoom::wrap_deg(a - fov_lo);
    if (off < fov_w) az_hit = true;
  }
  if (!az_hit) return false;

  if (s.el_hi_deg == s.el_lo_deg || fov.alpha_up_deg == fov.alpha_down_deg)
    return s.el_lo_deg <= fov.alpha_up_deg && fov.alpha_down_deg <= s.el_hi_deg;
  for (int i = 0; i < steps; ++i) {
    const double e = s.el_lo_deg + (s.el_hi_deg - s.el_lo_deg) * (i + 0.5) / steps;
    if (e > fov.alpha_down_deg && e < fov.alpha_up_deg) return true;
  }
  return false;
}

/// Delay of b relative to a in samples (positive: b lags a), found by a
/// direct cross-correlation scan with parabolic sub-sample refinement.
inline double delay_of(const std::vector<double>& a, const std::vector<double>& b,
                       int max_lag) {
  const int n = int(std::min(a.size(), b.size()));
  double best = -1.0;
  int best_lag = 0;
  std::vector<double> r(2 * max_lag + 1, 0.0);
  for (int lag = -max_lag; lag <= max_lag; ++lag) {
    double acc = 0.0;
    for (int i = std::max(0, -lag); i < n - std::max(0, lag); ++i) acc += a[i] * b[i + lag];
    r[lag + max_lag] = acc;
    if (acc > best) {
      best = acc;
      best_lag = lag;
    }
  }
  double refined = best_lag;
  const int c = best_lag + max_lag;
  if (c > 0 && c < 2 * max_lag) {
    const double denom = r[c - 1] - 2.0 * r[c] + r[c + 1];
    if (std::abs(denom) > 1e-30) refined += 0.5 * (r[c - 1] - r[c + 1]) / denom;
  }
  return refined;
}

/// Ideal far-field plane-wave spectrograms for a source from `direction`:
/// Y_m(t,f) = S(t,f) * exp(+j 2 pi f_hz dot(u, pos_m) / c) with random S.
/// Exact by construction, so feature algebra can be checked to 1e-12.
inline std::vector<azoom::Spectrogram> plane_wave_specs(const azoom::ArrayGeometry& g,
                                                        const azoom::Direction& direction,
                                                        int frames, int fft_size,
                                                        int sample_rate, azoom::Rng& rng) {
  const int bins = fft_size / 2 + 1;
  const auto u = direction.unit();
  std::vector<azoom::Spectrogram> specs(g.num_mics());

  azoom::Spectrogram base;
  base.frames = frames;
  base.bins = bins;
  base.frame_hop = fft_size / 2;
  base.fft_size = fft_size;
  base.sample_rate = sample_rate;
  base.data.resize(size_t(frames) * bins);
  for (auto& z : base.data)
    z = std::polar(0.1 + rng.uniform(), azoom::kTwoPi * rng.uniform() - azoom::kPi);

  for (int m = 0; m < g.num_mics(); ++m) {
    specs[m] = base;
    const auto& p = g.mic_positions[m];
    const double proj = u[0] * p[0] + u[1] * p[1] + u[2] * p[2];
    for (int f = 0; f < bins; ++f) {
      const double f_hz = double(f) * sample_rate / fft_size;
      const std::complex<double> rot =
          std::polar(1.0, azoom::kTwoPi * f_hz * proj / g.sound_speed);
      for (int t = 0; t < frames; ++t) specs[m].at(t, f) = base.at(t, f) * rot;
    }
  }
  return specs;
}

inline std::vector<double> white_noise(azoom::Rng& rng, size_t n, double amp = 0.1) {
  std::vector<double> x(n);
  for (auto& v : x) v = amp * rng.gaussian();
  return x;
}

inline std::vector<double> sine(double freq_hz, int sample_rate, size_t n, double amp = 0.5) {
  std::vector<double> x(n);
  for (size_t i = 0; i < n; ++i)
    x[i] = amp * std::sin(azoom::kTwoPi * freq_hz * double(i) / sample_rate);
  return x;
}

inline double rel_l2_error(const std::vector<double>& got, const std::vector<double>& want,
                           size_t begin, size_t end) {
  double err = 0.0, ref = 0.0;
  for (size_t i = begin; i < end; ++i) {
    const double d = got[i] - want[i];
    err += d * d;
    ref += want[i] * want[i];
  }
  return ref > 0.0 ? std::sqrt(err / ref) : std::sqrt(err);
}

}  // namespace oracle
