// Copyright 2026 The audiozoom authors
// MVDR solves are independent per frequency; both kernels run parallel
// across bins with serial twins for tests and the benchmark.
//
// Licensed under the Apache License, Version 2.0

#include "azoom/mvdr.hpp"

#include <Eigen/Dense>

#include <atomic>
#include <cstdio>

namespace azoom {

namespace {

constexpr double kLoading = 1e-6;

void check_inputs(const std::vector<Spectrogram>& specs) {
  require(!specs.empty(), "need at least one channel");
  for (const auto& s : specs)
    require(s.frames == specs[0].frames && s.bins == specs[0].bins,
            "spectrogram shapes must match");
}

CovarianceSet noise_covariance_impl(const std::vector<Spectrogram>& specs,
                                    const TfMask& irm, bool parallel) {
  check_inputs(specs);
  require(irm.frames == specs[0].frames && irm.bins == specs[0].bins,
          "mask shape must match the spectrograms");

  const int m = int(specs.size());
  const int bins = specs[0].bins;
  const int frames = specs[0].frames;

  CovarianceSet cov;
  cov.bins = bins;
  cov.num_mics = m;
  cov.data.assign(size_t(bins) * m * m, {0.0, 0.0});

  std::atomic<int> fallbacks{0};

#pragma omp parallel for schedule(static) if (parallel)
  for (int f = 0; f < bins; ++f) {
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(m, m);
    Eigen::VectorXcd y(m);
    double total_weight = 0.0;
    for (int t = 0; t < frames; ++t) {
      const double w0 = 1.0 - irm.at(t, f);
      const double w = w0 * w0;
      if (w == 0.0) continue;
      for (int i = 0; i < m; ++i) y(i) = specs[i].at(t, f);
      r.noalias() += w * (y * y.adjoint());
      total_weight += w;
    }

    const double tr = total_weight > 0.0 ? r.real().trace() / total_weight : 0.0;
    if (total_weight < 1e-12 || tr < 1e-30) {
      r = Eigen::MatrixXcd::Identity(m, m);
      fallbacks.fetch_add(1, std::memory_order_relaxed);
    } else {
      r /= total_weight;
      r += (kLoading * tr / m) * Eigen::MatrixXcd::Identity(m, m);
    }

    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) cov.at(f, i, j) = r(i, j);
  }

  if (fallbacks.load() > 0)
    std::fprintf(stderr,
                 "noise_covariance: %d/%d frequencies had zero noise weight, "
                 "using identity fallback\n",
                 fallbacks.load(), bins);
  return cov;
}

BeamformerWeights mvdr_weights_impl(const CovarianceSet& cov, const ArrayGeometry& geometry,
                                    const Direction& direction, double sample_rate,
                                    int fft_size, int ref_mic, bool parallel) {
  require(cov.num_mics == geometry.num_mics(), "covariance size must match the geometry");
  require(sample_rate > 0 && fft_size > 0, "sample rate and fft size must be positive");

  const int m = cov.num_mics;
  BeamformerWeights w;
  w.bins = cov.bins;
  w.num_mics = m;
  w.data.assign(size_t(cov.bins) * m, {0.0, 0.0});

  std::atomic<bool> singular{false};

#pragma omp parallel for schedule(static) if (parallel)
  for (int f = 0; f < cov.bins; ++f) {
    const double freq_hz = double(f) * sample_rate / fft_size;
    const auto steer = steering_vector(geometry, direction, freq_hz, ref_mic);

    Eigen::MatrixXcd r(m, m);
    Eigen::VectorXcd d(m);
    for (int i = 0; i < m; ++i) {
      d(i) = steer[i];
      for (int j = 0; j < m; ++j) r(i, j) = cov.at(f, i, j);
    }

    Eigen::LDLT<Eigen::MatrixXcd> ldlt(r);
    if (ldlt.info() != Eigen::Success) {
      singular.store(true, std::memory_order_relaxed);
      continue;
    }
    const Eigen::VectorXcd rinv_d = ldlt.solve(d);
    const std::complex<double> denom = d.dot(rinv_d);  // d^H R^-1 d
    if (!std::isfinite(denom.real()) || std::abs(denom) < 1e-14) {
      singular.store(true, std::memory_order_relaxed);
      continue;
    }
    const Eigen::VectorXcd wf = rinv_d / denom;
    for (int i = 0; i < m; ++i) w.at(f, i) = wf(i);
  }

  if (singular.load())
    throw std::runtime_error("mvdr_weights: singular noise covariance after loading");
  return w;
}

}  // namespace

CovarianceSet noise_covariance(const std::vector<Spectrogram>& specs, const TfMask& irm) {
  return noise_covariance_impl(specs, irm, true);
}

BeamformerWeights mvdr_weights(const CovarianceSet& cov, const ArrayGeometry& geometry,
                               const Direction& direction, double sample_rate,
                               int fft_size, int ref_mic) {
  return mvdr_weights_impl(cov, geometry, direction, sample_rate, fft_size, ref_mic, true);
}

namespace serial {
CovarianceSet noise_covariance(const std::vector<Spectrogram>& specs, const TfMask& irm) {
  return noise_covariance_impl(specs, irm, false);
}
BeamformerWeights mvdr_weights(const CovarianceSet& cov, const ArrayGeometry& geometry,
                               const Direction& direction, double sample_rate,
                               int fft_size, int ref_mic) {
  return mvdr_weights_impl(cov, geometry, direction, sample_rate, fft_size, ref_mic, false);
}
}  // namespace serial

Spectrogram beamform(const std::vector<Spectrogram>& specs, const BeamformerWeights& weights) {
  check_inputs(specs);
  require(int(specs.size()) == weights.num_mics, "channel count must match the weights");
  require(specs[0].bins == weights.bins, "bin count must match the weights");

  Spectrogram out = specs[0];
  for (int t = 0; t < out.frames; ++t) {
    for (int f = 0; f < out.bins; ++f) {
      std::complex<double> acc{0.0, 0.0};
      for (int m = 0; m < weights.num_mics; ++m)
        acc += std::conj(weights.at(f, m)) * specs[m].at(t, f);
      out.at(t, f) = acc;
    }
  }
  return out;
}

}  // namespace azoom
