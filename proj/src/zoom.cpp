// Copyright 2026 The audiozoom authors
//
// Licensed under the Apache License, Version 2.0

#include "azoom/zoom.hpp"

#include <algorithm>

namespace azoom {

namespace {
const char* kPipelineNames[] = {"identity",   "feature_mask_hard", "feature_mask_soft",
                                "oracle_irm", "oracle_mvdr",       "model"};
}

Pipeline pipeline_from_string(const std::string& s) {
  for (size_t i = 0; i < std::size(kPipelineNames); ++i)
    if (s == kPipelineNames[i]) return Pipeline(i);
  throw std::invalid_argument("unknown pipeline: " + s);
}

std::string to_string(Pipeline p) { return kPipelineNames[size_t(p)]; }

FovFeatures compute_fov_features(const std::vector<Spectrogram>& specs,
                                 const ArrayGeometry& geometry, const FieldOfView& fov,
                                 const ZoomConfig& cfg) {
  const LookGrid grid = build_look_grid(cfg.h_res_deg, cfg.v_res_deg,
                                        cfg.grid_elevation_lo_deg, cfg.grid_elevation_hi_deg);
  const SectorSplit split = classify_sectors(grid, fov);
  require(!split.fov_in.empty(), "FOV does not intersect any look-grid sector");

  const FeatureBank bank = feature_bank(specs, geometry, grid);

  FovFeatures out;
  out.d_in = fov_aggregate(bank, split.fov_in, FeatureKind::fov_in);
  if (split.fov_out.empty()) {
    out.d_out = FeatureMap::zeros(out.d_in.frames, out.d_in.bins, FeatureKind::fov_out);
    std::fill(out.d_out.data.begin(), out.d_out.data.end(), -1.0);
  } else {
    out.d_out = fov_aggregate(bank, split.fov_out, FeatureKind::fov_out);
  }
  return out;
}

std::vector<double> zoom(const MultichannelWave& wave, const ArrayGeometry& geometry,
                         const FieldOfView& fov, Pipeline pipeline, const ZoomConfig& cfg) {
  wave.validate();
  fov.validate();
  const int ref = cfg.reference_channel;
  require(ref >= 0 && ref < wave.num_channels(), "reference channel out of range");
  const size_t out_len = wave.num_samples();

  if (pipeline == Pipeline::identity) return wave.channels[ref];

  const bool multichannel_needed =
      pipeline != Pipeline::oracle_irm;  // IRM masks the reference channel alone
  if (multichannel_needed)
    require(wave.num_channels() >= 2, "pipeline needs at least two channels");

  const std::vector<Spectrogram> specs = stft_all(wave, cfg.stft);
  Spectrogram out_spec;

  switch (pipeline) {
    case Pipeline::feature_mask_hard:
    case Pipeline::feature_mask_soft: {
      const FovFeatures f = compute_fov_features(specs, geometry, fov, cfg);
      const MaskMode mode =
          pipeline == Pipeline::feature_mask_hard ? MaskMode::hard : MaskMode::soft;
      const TfMask mask = feature_mask(f.d_in, f.d_out, mode, cfg.mask);
      out_spec = apply_mask(specs[ref], mask);
      break;
    }
    case Pipeline::oracle_irm: {
      require(cfg.oracle_target != nullptr, "oracle_irm needs the ground-truth target");
      cfg.oracle_target->validate();
      require(cfg.oracle_target->num_samples() == wave.num_samples(),
              "target and mixture lengths must match");
      const Spectrogram target =
          stft(cfg.oracle_target->channels[std::min(ref, cfg.oracle_target->num_channels() - 1)],
               cfg.stft, wave.sample_rate);
      const TfMask irm = ideal_ratio_mask(target, specs[ref]);
      out_spec = apply_mask(specs[ref], irm);
      break;
    }
    case Pipeline::oracle_mvdr: {
      require(cfg.oracle_target != nullptr, "oracle_mvdr needs the ground-truth target");
      require(cfg.oracle_direction.has_value(), "oracle_mvdr needs the beam-center direction");
      require(cfg.oracle_target->num_samples() == wave.num_samples(),
              "target and mixture lengths must match");
      const Spectrogram target =
          stft(cfg.oracle_target->channels[std::min(ref, cfg.oracle_target->num_channels() - 1)],
               cfg.stft, wave.sample_rate);
      const TfMask irm = ideal_ratio_mask(target, specs[ref]);
      const CovarianceSet cov = noise_covariance(specs, irm);
      const BeamformerWeights w = mvdr_weights(cov, geometry, *cfg.oracle_direction,
                                               wave.sample_rate, cfg.stft.fft_size, ref);
      out_spec = beamform(specs, w);
      break;
    }
    case Pipeline::model: {
      require(cfg.model_weights != nullptr, "model pipeline needs loaded weights");
      const FovFeatures f = compute_fov_features(specs, geometry, fov, cfg);
      const FeatureMap stacked = stack_model_features(lps(specs[ref]), fuse_concat(f.d_in, f.d_out));
      const ModelOutput mo = forward(specs, stacked, *cfg.model_weights);
      out_spec = mo.s_hat;
      break;
    }
    case Pipeline::identity:
      break;  // handled above
  }

  std::vector<double> x = istft(out_spec, cfg.stft);
  x.resize(out_len, 0.0);
  return x;
}

}  // namespace azoom
