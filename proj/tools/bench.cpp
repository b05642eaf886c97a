// Copyright 2026 The audiozoom authors
// Benchmark of the OpenMP kernels against their serial reference twins.
// Also cross-checks that both paths produce bitwise identical results.
//
// Licensed under the Apache License, Version 2.0

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "azoom/features.hpp"
#include "azoom/mvdr.hpp"
#include "azoom/scene.hpp"
#include "azoom/subband_model.hpp"
#include "azoom/zoom.hpp"

using namespace azoom;
using clock_type = std::chrono::steady_clock;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
  fn();  // warm-up
  const auto t0 = clock_type::now();
  for (int i = 0; i < reps; ++i) fn();
  const auto t1 = clock_type::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void report(const std::string& name, double serial_ms, double parallel_ms, bool identical) {
  std::printf("%-18s serial %9.2f ms   omp %9.2f ms   speedup %5.2fx   %s\n", name.c_str(),
              serial_ms, parallel_ms, serial_ms / parallel_ms,
              identical ? "bitwise-equal" : "MISMATCH");
}

bool same(const std::vector<std::complex<double>>& a,
          const std::vector<std::complex<double>>& b) {
  return a == b;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"audiozoom kernel benchmark: serial reference vs OpenMP"};
  int threads = 0;
  int reps = 5;
  double seconds = 4.0;
  app.add_option("--threads", threads, "worker threads (0 = OpenMP default)");
  app.add_option("--reps", reps, "repetitions per measurement");
  app.add_option("--seconds", seconds, "scene length in seconds");
  CLI11_PARSE(app, argc, argv);
  if (threads > 0) omp_set_num_threads(threads);
  std::printf("threads: %d, scene length: %.1f s\n", omp_get_max_threads(), seconds);

  const ArrayGeometry geometry = default_array();
  SceneConstraints constraints;
  constraints.min_sources = 2;
  constraints.max_sources = 2;
  constraints.duration_s = seconds;
  const SceneSpec spec = sample_scene(1, constraints, geometry);

  // render
  SceneTruth truth;
  {
    const double s_ms = time_ms([&] { truth = serial::render(spec); }, reps);
    SceneTruth par;
    const double p_ms = time_ms([&] { par = render(spec); }, reps);
    bool ok = true;
    for (int m = 0; m < truth.mixture.num_channels(); ++m)
      ok = ok && truth.mixture.channels[m] == par.mixture.channels[m];
    report("render", s_ms, p_ms, ok);
  }

  // stft
  const StftConfig stft_cfg;
  std::vector<Spectrogram> specs;
  {
    Spectrogram ser, par;
    const double s_ms = time_ms(
        [&] { ser = serial::stft(truth.mixture.channels[0], stft_cfg, spec.sample_rate); },
        reps);
    const double p_ms = time_ms(
        [&] { par = stft(truth.mixture.channels[0], stft_cfg, spec.sample_rate); }, reps);
    report("stft", s_ms, p_ms, same(ser.data, par.data));
    specs = stft_all(truth.mixture, stft_cfg);
  }

  // feature bank over the default 20x10 full-sphere grid
  const LookGrid grid = build_look_grid(20.0, 10.0, -90.0, 90.0);
  FeatureBank bank;
  {
    FeatureBank ser;
    const double s_ms = time_ms([&] { ser = serial::feature_bank(specs, geometry, grid); }, reps);
    const double p_ms = time_ms([&] { bank = feature_bank(specs, geometry, grid); }, reps);
    bool ok = true;
    for (size_t k = 0; k < ser.maps.size(); ++k)
      ok = ok && ser.maps[k].data == bank.maps[k].data;
    report("feature_bank", s_ms, p_ms, ok);
  }

  // mvdr: covariance + weights
  {
    const TfMask irm = ideal_ratio_mask(
        stft(truth.source_images[0].channels[0], stft_cfg, spec.sample_rate), specs[0]);
    CovarianceSet cs, cp;
    const double s_cov = time_ms([&] { cs = serial::noise_covariance(specs, irm); }, reps);
    const double p_cov = time_ms([&] { cp = noise_covariance(specs, irm); }, reps);
    report("noise_covariance", s_cov, p_cov, same(cs.data, cp.data));

    const Direction dir = spec.sources[0].direction;
    BeamformerWeights ws, wp;
    const double s_w = time_ms(
        [&] { ws = serial::mvdr_weights(cp, geometry, dir, spec.sample_rate, 512); }, reps);
    const double p_w =
        time_ms([&] { wp = mvdr_weights(cp, geometry, dir, spec.sample_rate, 512); }, reps);
    report("mvdr_weights", s_w, p_w, same(ws.data, wp.data));
  }

  // subband model forward pass
  {
    const ModelWeights weights = seeded_weights(7);
    const SectorSplit split = classify_sectors(grid, FieldOfView{30, 90, -90, 90});
    const FeatureMap d_in = fov_aggregate(bank, split.fov_in, FeatureKind::fov_in);
    const FeatureMap d_out = fov_aggregate(bank, split.fov_out, FeatureKind::fov_out);
    const FeatureMap stacked = stack_model_features(lps(specs[0]), fuse_concat(d_in, d_out));

    ModelOutput ser, par;
    const double s_ms = time_ms([&] { ser = serial::forward(specs, stacked, weights); }, reps);
    const double p_ms = time_ms([&] { par = forward(specs, stacked, weights); }, reps);
    report("subband_forward", s_ms, p_ms,
           same(ser.s_hat.data, par.s_hat.data) && same(ser.filters, par.filters));
  }

  return 0;
}
