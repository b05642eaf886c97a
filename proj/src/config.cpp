// Copyright 2026 The audiozoom authors
//
// Licensed under the Apache License, Version 2.0

#include "azoom/config.hpp"

#include <fstream>

#include <json.hpp>

namespace azoom {

using json = nlohmann::json;

RunConfig load_run_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config file: " + path);
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("malformed config file " + path + ": " + e.what());
  }

  RunConfig cfg;
  cfg.geometry_path = j.value("geometry", cfg.geometry_path);
  if (j.contains("stft")) {
    const json& s = j["stft"];
    cfg.stft.fft_size = s.value("fft_size", cfg.stft.fft_size);
    cfg.stft.hop = s.value("hop", cfg.stft.hop);
    if (s.contains("window")) cfg.stft.window = window_from_string(s["window"]);
  }
  if (j.contains("grid")) {
    const json& g = j["grid"];
    cfg.h_res_deg = g.value("h_res_deg", cfg.h_res_deg);
    cfg.v_res_deg = g.value("v_res_deg", cfg.v_res_deg);
    cfg.grid_elevation_lo_deg = g.value("elevation_lo_deg", cfg.grid_elevation_lo_deg);
    cfg.grid_elevation_hi_deg = g.value("elevation_hi_deg", cfg.grid_elevation_hi_deg);
  }
  if (j.contains("mask")) {
    const json& m = j["mask"];
    cfg.mask.g_min = m.value("g_min", cfg.mask.g_min);
    cfg.mask.gamma = m.value("gamma", cfg.mask.gamma);
  }
  cfg.reference_channel = j.value("reference_channel", cfg.reference_channel);
  cfg.sample_rate = j.value("sample_rate", cfg.sample_rate);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.out_dir = j.value("out_dir", cfg.out_dir);
  return cfg;
}

ZoomConfig to_zoom_config(const RunConfig& cfg) {
  ZoomConfig z;
  z.stft = cfg.stft;
  z.h_res_deg = cfg.h_res_deg;
  z.v_res_deg = cfg.v_res_deg;
  z.grid_elevation_lo_deg = cfg.grid_elevation_lo_deg;
  z.grid_elevation_hi_deg = cfg.grid_elevation_hi_deg;
  z.mask = cfg.mask;
  z.reference_channel = cfg.reference_channel;
  return z;
}

ArrayGeometry resolve_geometry(const RunConfig& cfg) {
  if (cfg.geometry_path.empty()) return default_array();
  return load_geometry(cfg.geometry_path);
}

}  // namespace azoom
