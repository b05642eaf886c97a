// Copyright 2026 The audiozoom authors
// Time-frequency masks: feature-driven rule masks and the oracle ratio mask.
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <vector>

#include "azoom/feature_map.hpp"
#include "azoom/stft.hpp"

namespace azoom {

/// Real multiplicative T-F gain in [0, 1].
struct TfMask {
  int frames = 0;
  int bins = 0;
  std::vector<double> gain;

  static TfMask ones(int frames, int bins) {
    TfMask m;
    m.frames = frames;
    m.bins = bins;
    m.gain.assign(size_t(frames) * size_t(bins), 1.0);
    return m;
  }

  double& at(int t, int f) { return gain[size_t(t) * bins + f]; }
  double at(int t, int f) const { return gain[size_t(t) * bins + f]; }
};

enum class MaskMode { hard, soft };

struct MaskParams {
  double g_min = 0.01;  // -40 dB floor
  double gamma = 5.0;   // soft-mask slope
};

/// Rule-based zoom mask from the FOV / counter-FOV features.
/// hard: 1 where d_in > d_out, else g_min (ties suppressed).
/// soft: sigmoid(gamma * (d_in - d_out)), floored at g_min.
TfMask feature_mask(const FeatureMap& d_in, const FeatureMap& d_out, MaskMode mode,
                    const MaskParams& params = {});

/// Elementwise product.
Spectrogram apply_mask(const Spectrogram& spec, const TfMask& mask);

/// |S| / (|S| + |V|) with V = mixture - target, clipped to [0, 1].
/// Bins where |S| + |V| < 1e-12 yield 0.
TfMask ideal_ratio_mask(const Spectrogram& target_spec, const Spectrogram& mixture_spec);

}  // namespace azoom
