// Copyright 2026 The audiozoom authors
// Deterministic forward pass of the two-stage zoom filter estimator: a
// full-band recurrent mask stage followed by a per-frequency subband filter
// stage with shared weights. Inference only; no training code.
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

#include "azoom/feature_map.hpp"
#include "azoom/stft.hpp"

namespace azoom {

/// Gated recurrent cell parameters, gate order [reset, update, candidate]:
///   r = sigmoid(Wi_r x + bi_r + Wh_r h + bh_r)
///   z = sigmoid(Wi_z x + bi_z + Wh_z h + bh_z)
///   n = tanh(Wi_n x + bi_n + r .* (Wh_n h + bh_n))
///   h' = (1 - z) .* n + z .* h
struct GruWeights {
  Eigen::MatrixXd w_ih;  // 3H x in
  Eigen::MatrixXd w_hh;  // 3H x H
  Eigen::VectorXd b_ih;  // 3H
  Eigen::VectorXd b_hh;  // 3H
};

struct LinearWeights {
  Eigen::MatrixXd w;  // out x in
  Eigen::VectorXd b;  // out
};

/// All model parameters plus the dimension manifest.
struct ModelWeights {
  int fft_size = 512;      // F = fft_size/2 + 1
  int num_mics = 8;        // M
  int mask_hidden = 256;   // recurrent width of the mask stage
  int subband_hidden = 64; // recurrent width of the shared subband cell
  int embed_dim = 32;      // E, subband embedding width

  GruWeights mask_gru;       // input 3F
  LinearWeights head_in_re;  // mask_hidden -> F, four heads total
  LinearWeights head_in_im;
  LinearWeights head_out_re;
  LinearWeights head_out_im;
  Eigen::VectorXd norm_gain;  // 4M, per-channel layer norm
  Eigen::VectorXd norm_bias;  // 4M
  LinearWeights projection;   // 4M -> E, leaky-rectifier activation
  GruWeights subband_gru;     // E -> subband_hidden, shared across bands
  LinearWeights subband_head; // subband_hidden -> 2M

  int bins() const { return fft_size / 2 + 1; }
  int feature_bins() const { return 3 * bins(); }
  size_t parameter_count() const;
  void validate() const;
};

/// All tensors uniform(-1/sqrt(fan_in), +1/sqrt(fan_in)) from the documented
/// PRNG (see common.hpp), except layer-norm gains (1) and biases (0).
/// Draw order follows the weight-file tensor order, row-major per tensor.
ModelWeights seeded_weights(uint64_t seed, int fft_size = 512, int num_mics = 8,
                            int mask_hidden = 256, int subband_hidden = 64,
                            int embed_dim = 32);

ModelWeights zero_weights(int fft_size = 512, int num_mics = 8, int mask_hidden = 256,
                          int subband_hidden = 64, int embed_dim = 32);

/// Versioned little-endian binary: "AZWT" magic, u32 version, the dimension
/// manifest, then named float64 tensors in a fixed order.
void save_weights(const std::string& path, const ModelWeights& weights);
ModelWeights load_weights(const std::string& path);

struct ModelOutput {
  int frames = 0;
  int bins = 0;
  int num_mics = 0;
  std::vector<std::complex<double>> mask_in;   // T x F
  std::vector<std::complex<double>> mask_out;  // T x F
  std::vector<std::complex<double>> filters;   // per frequency: F x T x M
  Spectrogram s_hat;

  std::complex<double> filter(int f, int t, int m) const {
    return filters[(size_t(f) * frames + t) * num_mics + m];
  }
};

/// Deterministic forward pass.
/// `features` is the stacked per-frame model input (T x 3F): log power
/// spectrum of the reference channel followed by the concatenated FOV /
/// counter-FOV feature. Output filters are applied as W(t,f)^H y(t,f).
ModelOutput forward(const std::vector<Spectrogram>& specs, const FeatureMap& features,
                    const ModelWeights& weights);

/// [lps | fused_concat] -> T x 3F model input.
FeatureMap stack_model_features(const FeatureMap& lps_map, const FeatureMap& fused_concat);

/// Training objective as a computable function: negative SI-SDR in the time
/// domain plus lambda * mean |  |est_spec| - |ref_spec|  |. The SI-SDR term
/// is capped at +-60 dB so a perfect estimate stays finite.
double model_loss(const std::vector<double>& est_wave, const std::vector<double>& ref_wave,
                  const Spectrogram& est_spec, const Spectrogram& ref_spec,
                  double lambda = 1.0);

namespace serial {
ModelOutput forward(const std::vector<Spectrogram>& specs, const FeatureMap& features,
                    const ModelWeights& weights);
}

}  // namespace azoom
