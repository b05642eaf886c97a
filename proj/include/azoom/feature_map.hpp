// Copyright 2026 The audiozoom authors
// Real-valued time-frequency feature maps and their binary file format.
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <string>
#include <vector>

#include "azoom/common.hpp"

namespace azoom {

enum class FeatureKind { ipd, lps, d_theta, fov_in, fov_out, fused };

std::string to_string(FeatureKind kind);
FeatureKind feature_kind_from_string(const std::string& s);

/// T x F real map, row-major.
struct FeatureMap {
  int frames = 0;
  int bins = 0;
  FeatureKind kind = FeatureKind::d_theta;
  std::vector<double> data;

  static FeatureMap zeros(int frames, int bins, FeatureKind kind) {
    FeatureMap m;
    m.frames = frames;
    m.bins = bins;
    m.kind = kind;
    m.data.assign(size_t(frames) * size_t(bins), 0.0);
    return m;
  }

  double& at(int t, int f) { return data[size_t(t) * bins + f]; }
  double at(int t, int f) const { return data[size_t(t) * bins + f]; }
};

// Binary feature-map file: "AZFM" magic, u32 version, u32 frames, u32 bins,
// u32 label length, label bytes, then frames*bins float32 row-major.
// All integers and floats little-endian. Writes are atomic (temp + rename).
void write_feature_map(const std::string& path, const FeatureMap& map);
FeatureMap read_feature_map(const std::string& path);

}  // namespace azoom
