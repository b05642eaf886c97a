// Copyright 2026 The audiozoom authors
// Multichannel time-domain audio container.
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstddef>
#include <vector>

#include "azoom/common.hpp"

namespace azoom {

/// Time-domain samples for M channels at a common sample rate.
/// Samples are nominally in [-1, 1]; all channels have equal length.
struct MultichannelWave {
  std::vector<std::vector<double>> channels;
  int sample_rate = 16000;

  int num_channels() const { return int(channels.size()); }
  size_t num_samples() const { return channels.empty() ? 0 : channels[0].size(); }

  void validate() const {
    require(!channels.empty(), "wave must have at least one channel");
    require(sample_rate > 0, "sample rate must be positive");
    for (const auto& ch : channels)
      require(ch.size() == channels[0].size(), "all channels must have identical length");
  }
};

}  // namespace azoom
