// Copyright 2026 The audiozoom authors
// Global run configuration: one JSON file, overridable by CLI flags.
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <string>

#include "azoom/geometry.hpp"
#include "azoom/zoom.hpp"

namespace azoom {

struct RunConfig {
  std::string geometry_path;  // empty -> built-in 8-mic circular default
  StftConfig stft;
  double h_res_deg = 20.0;
  double v_res_deg = 10.0;
  double grid_elevation_lo_deg = -40.0;
  double grid_elevation_hi_deg = 40.0;
  MaskParams mask;
  int reference_channel = 0;
  int sample_rate = 16000;
  uint64_t seed = 0;
  std::string out_dir = "out";
};

RunConfig load_run_config(const std::string& path);

ZoomConfig to_zoom_config(const RunConfig& cfg);

/// Loads cfg.geometry_path, or the built-in default array when unset.
ArrayGeometry resolve_geometry(const RunConfig& cfg);

}  // namespace azoom
