// Copyright 2026 The audiozoom authors
// Deterministic desk-scale scene simulator: point sources rendered with
// fractional delays and 1/r decay, optional first-order wall reflections,
// white noise at an exact SNR.
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "azoom/fov.hpp"
#include "azoom/geometry.hpp"
#include "azoom/wave.hpp"

namespace azoom {

struct SceneSource {
  Direction direction;
  double distance_m = 1.5;
  std::vector<double> wave;
  double gain_db = 0.0;
};

/// Axis-aligned shoebox with a single first-order reflection coefficient.
/// The array centroid sits at `array_origin` in room coordinates.
struct ShoeboxRoom {
  std::array<double, 3> size_m = {6.0, 5.0, 3.0};
  double beta = 0.3;  // reflection coefficient in [0, 1)
  std::array<double, 3> array_origin = {3.0, 2.5, 1.5};
};

struct NoiseSpec {
  enum class Kind { white, wave };
  Kind kind = Kind::white;
  std::vector<double> wave;  // used when kind == wave
  double snr_db = 20.0;
  uint64_t seed = 1;
};

struct SceneSpec {
  std::vector<SceneSource> sources;
  NoiseSpec noise;
  ArrayGeometry geometry;
  std::optional<ShoeboxRoom> room;
  int sample_rate = 16000;
  int reference_channel = 0;

  void validate() const;
};

/// Ground truth: mixture = sum of source images + noise image, exactly.
/// Carries the geometry and seed so scene directories are self-contained.
struct SceneTruth {
  std::vector<MultichannelWave> source_images;
  std::vector<Direction> source_directions;
  MultichannelWave noise_image;
  MultichannelWave mixture;
  ArrayGeometry geometry;
  int reference_channel = 0;
  uint64_t seed = 0;
};

/// Renders every source to every microphone with a 64-tap Hann-windowed
/// sinc fractional delay at ||src - mic||/c and 1/r amplitude; adds the six
/// first-order image sources when a room is configured; scales the noise so
/// the SNR against the summed source images at the reference mic is exact.
SceneTruth render(const SceneSpec& spec);

/// Sum of reference-channel images of sources inside the (closed) FOV box.
std::vector<double> fov_reference(const SceneTruth& truth, const FieldOfView& fov);

struct SceneConstraints {
  int min_sources = 1;
  int max_sources = 5;
  double min_separation_deg = 40.0;
  double snr_db_lo = 10.0;
  double snr_db_hi = 40.0;
  double elevation_lo_deg = 0.0;
  double elevation_hi_deg = 0.0;
  double distance_lo_m = 1.2;
  double distance_hi_m = 2.5;
  double duration_s = 1.0;
  int sample_rate = 16000;
  int max_retries = 1000;
};

/// Deterministic scene sampling: uniform azimuths (rejection-sampled to
/// honour the minimum separation), elevations and distances in their
/// configured ranges, SNR uniform in [snr_db_lo, snr_db_hi]. Source signals
/// come from speech_like_burst.
SceneSpec sample_scene(uint64_t seed, const SceneConstraints& constraints,
                       const ArrayGeometry& geometry);

/// Speech-like "talker" signal: tilted noise with a wandering resonance,
/// gated by a syllable-rate on/off envelope. Sparse in time and frequency,
/// which is what time-frequency masking needs to separate sources.
std::vector<double> speech_like_burst(Rng& rng, int num_samples, int sample_rate);

/// Scene config file (JSON). Two modes:
///   {"sample": {...SceneConstraints fields...}}             seeded sampling
///   {"sources": [{azimuth_deg, elevation_deg, distance_m,   explicit scene
///                 gain_db, wav?}], "noise": {...}, "room": {...}}
/// Explicit sources without a "wav" path get seeded noise bursts.
SceneSpec load_scene_spec(const std::string& path, uint64_t seed,
                          const ArrayGeometry& geometry);

/// Scene directory I/O (mixture.wav, src_<k>.wav, noise.wav, truth.json).
void write_scene(const std::string& dir, const SceneSpec& spec, const SceneTruth& truth,
                 uint64_t seed);
SceneTruth read_scene(const std::string& dir);
/// Source directions and seed recorded in the truth manifest.
std::vector<Direction> read_scene_directions(const std::string& dir);

namespace serial {
SceneTruth render(const SceneSpec& spec);
}

}  // namespace azoom
