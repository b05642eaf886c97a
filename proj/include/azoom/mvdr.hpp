// Copyright 2026 The audiozoom authors
// Mask-weighted noise covariance, MVDR weights and beamforming.
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <complex>
#include <vector>

#include "azoom/geometry.hpp"
#include "azoom/masking.hpp"
#include "azoom/stft.hpp"

namespace azoom {

/// Per-frequency M x M complex matrices, stored row-major per bin.
struct CovarianceSet {
  int bins = 0;
  int num_mics = 0;
  std::vector<std::complex<double>> data;  // bins * M * M

  std::complex<double>& at(int f, int i, int j) {
    return data[(size_t(f) * num_mics + i) * num_mics + j];
  }
  const std::complex<double>& at(int f, int i, int j) const {
    return data[(size_t(f) * num_mics + i) * num_mics + j];
  }
};

/// Per-frequency complex weight vectors, F x M.
struct BeamformerWeights {
  int bins = 0;
  int num_mics = 0;
  std::vector<std::complex<double>> data;  // bins * M

  std::complex<double>& at(int f, int m) { return data[size_t(f) * num_mics + m]; }
  const std::complex<double>& at(int f, int m) const { return data[size_t(f) * num_mics + m]; }
};

/// Mask-weighted noise covariance per frequency:
///   R(f) = sum_t w(t,f) y y^H / sum_t w(t,f),  w = (1 - irm)^2,
/// plus diagonal loading 1e-6 * trace(R)/M. Frequencies whose total weight
/// (or trace) vanishes fall back to identity with a warning on stderr.
CovarianceSet noise_covariance(const std::vector<Spectrogram>& specs, const TfMask& irm);

/// w(f) = R^-1 d / (d^H R^-1 d); per-frequency steering vectors are built
/// from the geometry for `direction`, referenced to `ref_mic`.
/// Throws if any loaded matrix is numerically singular.
BeamformerWeights mvdr_weights(const CovarianceSet& cov, const ArrayGeometry& geometry,
                               const Direction& direction, double sample_rate,
                               int fft_size, int ref_mic = 0);

/// Per-bin inner product w(f)^H y(t,f).
Spectrogram beamform(const std::vector<Spectrogram>& specs, const BeamformerWeights& weights);

namespace serial {
CovarianceSet noise_covariance(const std::vector<Spectrogram>& specs, const TfMask& irm);
BeamformerWeights mvdr_weights(const CovarianceSet& cov, const ArrayGeometry& geometry,
                               const Direction& direction, double sample_rate,
                               int fft_size, int ref_mic = 0);
}  // namespace serial

}  // namespace azoom
