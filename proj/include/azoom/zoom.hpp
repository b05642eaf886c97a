// Copyright 2026 The audiozoom authors
// End-to-end zoom pipelines: STFT -> FOV features -> mask / beamformer /
// subband model -> synthesis.
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "azoom/features.hpp"
#include "azoom/masking.hpp"
#include "azoom/mvdr.hpp"
#include "azoom/subband_model.hpp"

namespace azoom {

enum class Pipeline {
  identity,           // reference-channel pass-through
  feature_mask_hard,  // rule mask: 1 where d_in > d_out, else g_min
  feature_mask_soft,  // sigmoid(gamma * (d_in - d_out))
  oracle_irm,         // ideal ratio mask from ground truth
  oracle_mvdr,        // IRM-weighted noise covariance + MVDR toward the beam center
  model,              // subband filter-estimation forward pass
};

Pipeline pipeline_from_string(const std::string& s);
std::string to_string(Pipeline p);

struct ZoomConfig {
  StftConfig stft;
  double h_res_deg = 20.0;
  double v_res_deg = 10.0;
  double grid_elevation_lo_deg = -40.0;
  double grid_elevation_hi_deg = 40.0;
  MaskParams mask;
  int reference_channel = 0;

  // Oracle inputs (ground truth); required by the oracle_* pipelines.
  const MultichannelWave* oracle_target = nullptr;
  std::optional<Direction> oracle_direction;

  // Required by the model pipeline.
  const ModelWeights* model_weights = nullptr;
};

struct FovFeatures {
  FeatureMap d_in;
  FeatureMap d_out;
};

/// FOV / counter-FOV aggregates for the wave's spectrograms. When the FOV
/// covers every sector, d_out degenerates to the constant -1 map so every
/// downstream rule becomes pass-through.
FovFeatures compute_fov_features(const std::vector<Spectrogram>& specs,
                                 const ArrayGeometry& geometry, const FieldOfView& fov,
                                 const ZoomConfig& cfg);

/// Produces the zoomed single-channel wave; output length equals input length.
std::vector<double> zoom(const MultichannelWave& wave, const ArrayGeometry& geometry,
                         const FieldOfView& fov, Pipeline pipeline, const ZoomConfig& cfg);

}  // namespace azoom
