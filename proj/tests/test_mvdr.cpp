// Copyright 2026 The audiozoom authors
//
// Licensed under the Apache License, Version 2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include "azoom/mvdr.hpp"
#include "oracles.hpp"

using namespace azoom;

namespace {

constexpr int kFs = 16000;
constexpr int kFft = 512;

std::vector<Spectrogram> random_specs(int mics, int frames, int bins, uint64_t seed) {
  std::vector<Spectrogram> specs(mics);
  Rng rng(seed);
  for (auto& s : specs) {
    s.frames = frames;
    s.bins = bins;
    s.frame_hop = 256;
    s.fft_size = (bins - 1) * 2;
    s.sample_rate = kFs;
    s.data.resize(size_t(frames) * bins);
    for (auto& z : s.data) z = std::polar(0.1 + rng.uniform(), kTwoPi * rng.uniform() - kPi);
  }
  return specs;
}

TfMask const_mask(int frames, int bins, double v) {
  TfMask m = TfMask::ones(frames, bins);
  std::fill(m.gain.begin(), m.gain.end(), v);
  return m;
}

Eigen::MatrixXcd cov_at(const CovarianceSet& cov, int f) {
  Eigen::MatrixXcd r(cov.num_mics, cov.num_mics);
  for (int i = 0; i < cov.num_mics; ++i)
    for (int j = 0; j < cov.num_mics; ++j) r(i, j) = cov.at(f, i, j);
  return r;
}

}  // namespace

TEST_CASE("zero IRM reduces to the plain averaged covariance (plus loading)") {
  const auto specs = random_specs(3, 5, 9, 1);
  const CovarianceSet cov = noise_covariance(specs, const_mask(5, 9, 0.0));

  for (int f = 0; f < 9; ++f) {
    Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(3, 3);
    for (int t = 0; t < 5; ++t) {
      Eigen::VectorXcd y(3);
      for (int m = 0; m < 3; ++m) y(m) = specs[m].at(t, f);
      want += y * y.adjoint();
    }
    want /= 5.0;
    want += (1e-6 * want.real().trace() / 3.0) * Eigen::MatrixXcd::Identity(3, 3);
    CHECK((cov_at(cov, f) - want).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("unit IRM triggers the identity fallback") {
  const auto specs = random_specs(2, 4, 5, 2);
  const CovarianceSet cov = noise_covariance(specs, const_mask(4, 5, 1.0));
  for (int f = 0; f < 5; ++f)
    CHECK((cov_at(cov, f) - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("single plane wave covariance is rank-1 with the steering vector as principal axis") {
  const ArrayGeometry g = default_array();
  Rng rng(3);
  const Direction src = Direction::of(230.0, 10.0);
  const auto specs = oracle::plane_wave_specs(g, src, 24, kFft, kFs, rng);
  const CovarianceSet cov = noise_covariance(specs, const_mask(24, 257, 0.0));

  for (int f : {40, 100, 180}) {
    // Eigen-decomposition oracle on the accumulated covariance.
    const Eigen::MatrixXcd r = cov_at(cov, f);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(r);
    const Eigen::VectorXd evals = eig.eigenvalues();
    CHECK(evals(7) > 100.0 * evals(6));  // rank-1 dominant

    const auto steer = steering_vector(g, src, double(f) * kFs / kFft, 0);
    Eigen::VectorXcd d(8);
    for (int m = 0; m < 8; ++m) d(m) = steer[m];
    const Eigen::VectorXcd v = eig.eigenvectors().col(7);
    const double alignment = std::abs((d.adjoint() * v)(0)) / (d.norm() * v.norm());
    CHECK(alignment == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("identity covariance gives matched-filter weights d/M") {
  const ArrayGeometry g = default_array();
  CovarianceSet cov;
  cov.bins = 257;
  cov.num_mics = 8;
  cov.data.assign(size_t(257) * 8 * 8, {0.0, 0.0});
  for (int f = 0; f < 257; ++f)
    for (int m = 0; m < 8; ++m) cov.at(f, m, m) = 1.0;

  const Direction dir = Direction::of(85.0, 0.0);
  const BeamformerWeights w = mvdr_weights(cov, g, dir, kFs, kFft);
  for (int f : {0, 32, 128, 256}) {
    const auto d = steering_vector(g, dir, double(f) * kFs / kFft, 0);
    for (int m = 0; m < 8; ++m)
      CHECK(std::abs(w.at(f, m) - d[m] / 8.0) < 1e-12);
  }
}

TEST_CASE("mvdr weights satisfy the distortionless constraint on random HPD covariances") {
  const ArrayGeometry g = default_array();
  Rng rng(4);
  CovarianceSet cov;
  cov.bins = 64;
  cov.num_mics = 8;
  cov.data.assign(size_t(64) * 8 * 8, {0.0, 0.0});
  for (int f = 0; f < 64; ++f) {
    Eigen::MatrixXcd a(8, 8);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) a(i, j) = {rng.gaussian(), rng.gaussian()};
    const Eigen::MatrixXcd r = a * a.adjoint() + 0.1 * Eigen::MatrixXcd::Identity(8, 8);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) cov.at(f, i, j) = r(i, j);
  }

  const Direction dir = Direction::of(12.0, -8.0);
  const BeamformerWeights w = mvdr_weights(cov, g, dir, kFs, kFft);
  for (int f = 0; f < 64; ++f) {
    const auto d = steering_vector(g, dir, double(f) * kFs / kFft, 0);
    std::complex<double> whd{0.0, 0.0};
    for (int m = 0; m < 8; ++m) whd += std::conj(w.at(f, m)) * d[m];
    CHECK(std::abs(whd - std::complex<double>(1.0, 0.0)) <= 1e-8);
  }
}

TEST_CASE("mvdr nulls an interferer harder than the matched filter") {
  const ArrayGeometry g = default_array();
  const Direction target = Direction::of(0.0, 0.0);
  const Direction interferer = Direction::of(90.0, 0.0);

  CovarianceSet cov;
  cov.bins = 257;
  cov.num_mics = 8;
  cov.data.assign(size_t(257) * 8 * 8, {0.0, 0.0});
  for (int f = 0; f < 257; ++f) {
    const auto di = steering_vector(g, interferer, double(f) * kFs / kFft, 0);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j)
        cov.at(f, i, j) = 10.0 * di[i] * std::conj(di[j]) + (i == j ? 1.0 : 0.0);
  }

  const BeamformerWeights w = mvdr_weights(cov, g, target, kFs, kFft);
  // Beampattern toward the interferer, numerically, vs. the matched filter.
  for (int f : {64, 128, 192}) {
    const auto dt = steering_vector(g, target, double(f) * kFs / kFft, 0);
    const auto di = steering_vector(g, interferer, double(f) * kFs / kFft, 0);
    std::complex<double> mvdr_gain{0, 0}, das_gain{0, 0};
    for (int m = 0; m < 8; ++m) {
      mvdr_gain += std::conj(w.at(f, m)) * di[m];
      das_gain += std::conj(dt[m] / 8.0) * di[m];
    }
    CHECK(std::abs(mvdr_gain) < std::abs(das_gain));
  }
}

TEST_CASE("a singular covariance is rejected") {
  const ArrayGeometry g = default_array();
  CovarianceSet cov;
  cov.bins = 3;
  cov.num_mics = 8;
  cov.data.assign(size_t(3) * 8 * 8, {0.0, 0.0});  // all-zero matrices
  CHECK_THROWS_AS(mvdr_weights(cov, g, Direction::of(0, 0), kFs, kFft), std::runtime_error);
}

TEST_CASE("beamform with selector weights extracts one channel") {
  const auto specs = random_specs(4, 6, 33, 9);
  BeamformerWeights w;
  w.bins = 33;
  w.num_mics = 4;
  w.data.assign(size_t(33) * 4, {0.0, 0.0});
  for (int f = 0; f < 33; ++f) w.at(f, 2) = {1.0, 0.0};

  const Spectrogram out = beamform(specs, w);
  for (size_t i = 0; i < out.data.size(); ++i) CHECK(out.data[i] == specs[2].data[i]);

  BeamformerWeights zero = w;
  std::fill(zero.data.begin(), zero.data.end(), std::complex<double>{0.0, 0.0});
  for (const auto& z : beamform(specs, zero).data) CHECK(std::abs(z) == 0.0);

  BeamformerWeights bad = w;
  bad.num_mics = 5;
  CHECK_THROWS_AS(beamform(specs, bad), std::invalid_argument);
}

TEST_CASE("serial and parallel mvdr kernels agree bitwise") {
  const auto specs = random_specs(8, 12, 129, 10);
  TfMask irm = TfMask::ones(12, 129);
  Rng rng(11);
  for (auto& v : irm.gain) v = rng.uniform();

  const CovarianceSet c1 = noise_covariance(specs, irm);
  const CovarianceSet c2 = serial::noise_covariance(specs, irm);
  REQUIRE(c1.data.size() == c2.data.size());
  for (size_t i = 0; i < c1.data.size(); ++i) CHECK(c1.data[i] == c2.data[i]);

  const ArrayGeometry g = default_array();
  const BeamformerWeights w1 = mvdr_weights(c1, g, Direction::of(200, 5), kFs, 256);
  const BeamformerWeights w2 = serial::mvdr_weights(c1, g, Direction::of(200, 5), kFs, 256);
  for (size_t i = 0; i < w1.data.size(); ++i) CHECK(w1.data[i] == w2.data[i]);
}
