// Copyright 2026 The audiozoom authors
//
// Licensed under the Apache License, Version 2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "azoom/masking.hpp"
#include "oracles.hpp"

using namespace azoom;

namespace {

FeatureMap map_of(std::vector<double> values, FeatureKind kind) {
  FeatureMap m = FeatureMap::zeros(1, int(values.size()), kind);
  m.data = std::move(values);
  return m;
}

Spectrogram random_spec(int frames, int bins, uint64_t seed) {
  Rng rng(seed);
  Spectrogram s;
  s.frames = frames;
  s.bins = bins;
  s.frame_hop = 256;
  s.fft_size = (bins - 1) * 2;
  s.sample_rate = 16000;
  s.data.resize(size_t(frames) * bins);
  for (auto& z : s.data) z = std::polar(0.1 + rng.uniform(), kTwoPi * rng.uniform() - kPi);
  return s;
}

}  // namespace

TEST_CASE("hard mask keeps winners and floors the rest") {
  const FeatureMap d_in = map_of({1.0, 0.5, 0.2}, FeatureKind::fov_in);
  const FeatureMap d_out = map_of({-1.0, 0.5, 0.6}, FeatureKind::fov_out);
  const TfMask m = feature_mask(d_in, d_out, MaskMode::hard);
  CHECK(m.gain[0] == doctest::Approx(1.0));
  CHECK(m.gain[1] == doctest::Approx(0.01));  // tie suppressed
  CHECK(m.gain[2] == doctest::Approx(0.01));
}

TEST_CASE("soft mask is the floored sigmoid of the feature margin") {
  const FeatureMap d_in = map_of({0.3, 0.8, -1.0}, FeatureKind::fov_in);
  const FeatureMap d_out = map_of({0.3, -0.8, 1.0}, FeatureKind::fov_out);
  MaskParams params;
  params.gamma = 5.0;
  const TfMask m = feature_mask(d_in, d_out, MaskMode::soft, params);
  CHECK(m.gain[0] == doctest::Approx(0.5));
  CHECK(m.gain[1] == doctest::Approx(1.0 / (1.0 + std::exp(-5.0 * 1.6))));
  CHECK(m.gain[2] == doctest::Approx(0.01));  // sigmoid(-10) < g_min floor

  for (double g : m.gain) {
    CHECK(g >= params.g_min);
    CHECK(g <= 1.0);
  }
}

TEST_CASE("non-positive gamma is rejected") {
  const FeatureMap d = map_of({0.0}, FeatureKind::fov_in);
  MaskParams params;
  params.gamma = 0.0;
  CHECK_THROWS_AS(feature_mask(d, d, MaskMode::soft, params), std::invalid_argument);
}

TEST_CASE("apply_mask is the elementwise product") {
  const Spectrogram s = random_spec(3, 9, 1);

  TfMask ones = TfMask::ones(3, 9);
  const Spectrogram same = apply_mask(s, ones);
  for (size_t i = 0; i < s.data.size(); ++i) CHECK(same.data[i] == s.data[i]);

  TfMask zeros = TfMask::ones(3, 9);
  std::fill(zeros.gain.begin(), zeros.gain.end(), 0.0);
  for (const auto& z : apply_mask(s, zeros).data) CHECK(std::abs(z) == 0.0);

  TfMask half = TfMask::ones(3, 9);
  std::fill(half.gain.begin(), half.gain.end(), 0.5);
  const Spectrogram halved = apply_mask(s, half);
  for (size_t i = 0; i < s.data.size(); ++i)
    CHECK(std::abs(halved.data[i]) == doctest::Approx(0.5 * std::abs(s.data[i])));

  CHECK_THROWS_AS(apply_mask(s, TfMask::ones(3, 8)), std::invalid_argument);
}

TEST_CASE("masked magnitudes never exceed the input") {
  const Spectrogram s = random_spec(4, 33, 2);
  const FeatureMap d_in = [&] {
    FeatureMap m = FeatureMap::zeros(4, 33, FeatureKind::fov_in);
    Rng rng(3);
    for (auto& v : m.data) v = rng.uniform(-1, 1);
    return m;
  }();
  const FeatureMap d_out = [&] {
    FeatureMap m = FeatureMap::zeros(4, 33, FeatureKind::fov_out);
    Rng rng(4);
    for (auto& v : m.data) v = rng.uniform(-1, 1);
    return m;
  }();
  for (MaskMode mode : {MaskMode::hard, MaskMode::soft}) {
    const Spectrogram masked = apply_mask(s, feature_mask(d_in, d_out, mode));
    for (size_t i = 0; i < s.data.size(); ++i)
      CHECK(std::abs(masked.data[i]) <= std::abs(s.data[i]) + 1e-15);
  }
}

TEST_CASE("ideal ratio mask") {
  const Spectrogram target = random_spec(3, 17, 5);

  SUBCASE("mixture equal to target gives 1") {
    const TfMask m = ideal_ratio_mask(target, target);
    for (double g : m.gain) CHECK(g == doctest::Approx(1.0));
  }

  SUBCASE("zero target gives 0") {
    Spectrogram zero = target;
    for (auto& z : zero.data) z = {0.0, 0.0};
    const TfMask m = ideal_ratio_mask(zero, target);
    for (double g : m.gain) CHECK(g == doctest::Approx(0.0));
  }

  SUBCASE("equal target and residual magnitudes give 0.5") {
    Spectrogram mixture = target;
    for (auto& z : mixture.data) z *= 2.0;  // V = mixture - S = S, so |S| = |V|
    const TfMask m = ideal_ratio_mask(target, mixture);
    for (double g : m.gain) CHECK(g == doctest::Approx(0.5));
  }

  SUBCASE("values are clipped to [0, 1]") {
    Rng rng(6);
    Spectrogram mixture = random_spec(3, 17, 7);
    const TfMask m = ideal_ratio_mask(target, mixture);
    for (double g : m.gain) {
      CHECK(g >= 0.0);
      CHECK(g <= 1.0);
    }
  }

  SUBCASE("shape mismatch is rejected") {
    CHECK_THROWS_AS(ideal_ratio_mask(target, random_spec(3, 16, 8)), std::invalid_argument);
  }
}
