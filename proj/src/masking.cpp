// Copyright 2026 The audiozoom authors
//
// Licensed under the Apache License, Version 2.0

#include "azoom/masking.hpp"

#include <algorithm>
#include <cmath>

namespace azoom {

TfMask feature_mask(const FeatureMap& d_in, const FeatureMap& d_out, MaskMode mode,
                    const MaskParams& params) {
  require(d_in.frames == d_out.frames && d_in.bins == d_out.bins,
          "feature map shapes must match");
  require(params.gamma > 0.0, "soft-mask slope gamma must be positive");
  require(params.g_min >= 0.0 && params.g_min <= 1.0, "g_min must be in [0, 1]");

  TfMask mask = TfMask::ones(d_in.frames, d_in.bins);
  for (size_t i = 0; i < mask.gain.size(); ++i) {
    const double delta = d_in.data[i] - d_out.data[i];
    if (mode == MaskMode::hard) {
      mask.gain[i] = delta > 0.0 ? 1.0 : params.g_min;
    } else {
      const double g = 1.0 / (1.0 + std::exp(-params.gamma * delta));
      mask.gain[i] = std::max(g, params.g_min);
    }
  }
  return mask;
}

Spectrogram apply_mask(const Spectrogram& spec, const TfMask& mask) {
  require(spec.frames == mask.frames && spec.bins == mask.bins,
          "mask shape must match the spectrogram");
  Spectrogram out = spec;
  for (size_t i = 0; i < out.data.size(); ++i) out.data[i] *= mask.gain[i];
  return out;
}

TfMask ideal_ratio_mask(const Spectrogram& target_spec, const Spectrogram& mixture_spec) {
  require(target_spec.frames == mixture_spec.frames && target_spec.bins == mixture_spec.bins,
          "spectrogram shapes must match");
  TfMask mask = TfMask::ones(target_spec.frames, target_spec.bins);
  for (size_t i = 0; i < mask.gain.size(); ++i) {
    const double s = std::abs(target_spec.data[i]);
    const double v = std::abs(mixture_spec.data[i] - target_spec.data[i]);
    mask.gain[i] = s + v < 1e-12 ? 0.0 : std::clamp(s / (s + v), 0.0, 1.0);
  }
  return mask;
}

}  // namespace azoom
