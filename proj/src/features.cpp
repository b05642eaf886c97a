// Copyright 2026 The audiozoom authors
// Directional feature kernels. The bank over K look directions is the hot
// loop of the whole pipeline; it is parallel across (sector, frame) with a
// serial twin that shares the exact same per-bin arithmetic.
//
// Licensed under the Apache License, Version 2.0

#include "azoom/features.hpp"

#include <cmath>

namespace azoom {

namespace {

constexpr double kSilenceFloor = 1e-10;

void check_same_shape(const Spectrogram& a, const Spectrogram& b) {
  require(a.frames == b.frames && a.bins == b.bins, "spectrogram shapes must match");
}

void check_same_shape(const FeatureMap& a, const FeatureMap& b) {
  require(a.frames == b.frames && a.bins == b.bins, "feature map shapes must match");
}

void check_specs(const std::vector<Spectrogram>& specs, const ArrayGeometry& geometry) {
  require(specs.size() >= 2, "directional features need at least two channels");
  require(int(specs.size()) == geometry.num_mics(),
          "channel count must match the geometry");
  require(geometry.num_pairs() > 0, "geometry has no configured microphone pairs");
  for (const auto& s : specs) check_same_shape(specs[0], s);
}

// cos/sin of the IPD for one pair, over all bins. Derived from the complex
// cross term Y_m1 * conj(Y_m2) so no atan2 is needed; silent bins fall back
// to the IPD-0 convention (cos 1, sin 0).
struct PairTrig {
  std::vector<double> cos_ipd;
  std::vector<double> sin_ipd;
};

std::vector<PairTrig> ipd_trig(const std::vector<Spectrogram>& specs,
                               const ArrayGeometry& geometry) {
  const size_t cells = specs[0].data.size();
  std::vector<PairTrig> trig(geometry.num_pairs());
  for (int p = 0; p < geometry.num_pairs(); ++p) {
    const auto& [m1, m2] = geometry.pairs[p];
    trig[p].cos_ipd.resize(cells);
    trig[p].sin_ipd.resize(cells);
    for (size_t i = 0; i < cells; ++i) {
      const std::complex<double>& y1 = specs[m1].data[i];
      const std::complex<double>& y2 = specs[m2].data[i];
      const double mag = std::abs(y1) * std::abs(y2);
      if (std::abs(y1) < kSilenceFloor || std::abs(y2) < kSilenceFloor) {
        trig[p].cos_ipd[i] = 1.0;
        trig[p].sin_ipd[i] = 0.0;
      } else {
        const std::complex<double> cross = y1 * std::conj(y2);
        trig[p].cos_ipd[i] = cross.real() / mag;
        trig[p].sin_ipd[i] = cross.imag() / mag;
      }
    }
  }
  return trig;
}

// Steering-phase cos/sin per (pair, bin) for one look direction.
struct SteerTrig {
  std::vector<double> cos_v;  // num_pairs * bins
  std::vector<double> sin_v;
};

SteerTrig steer_trig(const ArrayGeometry& geometry, const Direction& direction,
                     const Spectrogram& ref) {
  SteerTrig st;
  st.cos_v.resize(size_t(geometry.num_pairs()) * size_t(ref.bins));
  st.sin_v.resize(st.cos_v.size());
  for (int p = 0; p < geometry.num_pairs(); ++p) {
    for (int f = 0; f < ref.bins; ++f) {
      const double phase = steering_phase(geometry, p, direction, ref.bin_hz(f));
      st.cos_v[size_t(p) * ref.bins + f] = std::cos(phase);
      st.sin_v[size_t(p) * ref.bins + f] = std::sin(phase);
    }
  }
  return st;
}

// d(t,f) = (1/P) sum_p cos(phase_v - ipd) with the cosine expanded so both
// trig tables are reused across frames.
void fill_frame(const std::vector<PairTrig>& trig, const SteerTrig& st, int bins,
                int num_pairs, int t, double* out) {
  const size_t row = size_t(t) * size_t(bins);
  for (int f = 0; f < bins; ++f) {
    double acc = 0.0;
    for (int p = 0; p < num_pairs; ++p) {
      const size_t pi = size_t(p) * size_t(bins) + size_t(f);
      acc += st.cos_v[pi] * trig[p].cos_ipd[row + f] +
             st.sin_v[pi] * trig[p].sin_ipd[row + f];
    }
    out[row + f] = acc / num_pairs;
  }
}

FeatureMap directional_feature_impl(const std::vector<Spectrogram>& specs,
                                    const ArrayGeometry& geometry,
                                    const Direction& direction, bool parallel) {
  check_specs(specs, geometry);
  const auto trig = ipd_trig(specs, geometry);
  const auto st = steer_trig(geometry, direction, specs[0]);

  FeatureMap out = FeatureMap::zeros(specs[0].frames, specs[0].bins, FeatureKind::d_theta);
#pragma omp parallel for schedule(static) if (parallel)
  for (int t = 0; t < out.frames; ++t)
    fill_frame(trig, st, out.bins, geometry.num_pairs(), t, out.data.data());
  return out;
}

FeatureBank feature_bank_impl(const std::vector<Spectrogram>& specs,
                              const ArrayGeometry& geometry, const LookGrid& grid,
                              bool parallel) {
  check_specs(specs, geometry);
  require(grid.size() > 0, "look grid is empty");
  const auto trig = ipd_trig(specs, geometry);

  const int frames = specs[0].frames;
  const int bins = specs[0].bins;
  FeatureBank bank;
  bank.grid = grid;
  bank.maps.resize(grid.size());

  std::vector<SteerTrig> steer(grid.size());
#pragma omp parallel for schedule(static) if (parallel)
  for (int k = 0; k < grid.size(); ++k) {
    steer[k] = steer_trig(geometry, grid.look_directions[k], specs[0]);
    bank.maps[k] = FeatureMap::zeros(frames, bins, FeatureKind::d_theta);
  }

  const int total = grid.size() * frames;
#pragma omp parallel for schedule(static) if (parallel)
  for (int kt = 0; kt < total; ++kt) {
    const int k = kt / frames;
    const int t = kt % frames;
    fill_frame(trig, steer[k], bins, geometry.num_pairs(), t, bank.maps[k].data.data());
  }
  return bank;
}

}  // namespace

FeatureMap ipd(const Spectrogram& spec_m1, const Spectrogram& spec_m2) {
  check_same_shape(spec_m1, spec_m2);
  FeatureMap out = FeatureMap::zeros(spec_m1.frames, spec_m1.bins, FeatureKind::ipd);
  for (size_t i = 0; i < spec_m1.data.size(); ++i) {
    const std::complex<double>& y1 = spec_m1.data[i];
    const std::complex<double>& y2 = spec_m2.data[i];
    if (std::abs(y1) < kSilenceFloor || std::abs(y2) < kSilenceFloor) {
      out.data[i] = 0.0;
    } else {
      out.data[i] = wrap_phase(std::arg(y1) - std::arg(y2));
    }
  }
  return out;
}

FeatureMap directional_feature(const std::vector<Spectrogram>& specs,
                               const ArrayGeometry& geometry, const Direction& direction) {
  return directional_feature_impl(specs, geometry, direction, true);
}

FeatureBank feature_bank(const std::vector<Spectrogram>& specs,
                         const ArrayGeometry& geometry, const LookGrid& grid) {
  return feature_bank_impl(specs, geometry, grid, true);
}

namespace serial {
FeatureMap directional_feature(const std::vector<Spectrogram>& specs,
                               const ArrayGeometry& geometry, const Direction& direction) {
  return directional_feature_impl(specs, geometry, direction, false);
}
FeatureBank feature_bank(const std::vector<Spectrogram>& specs,
                         const ArrayGeometry& geometry, const LookGrid& grid) {
  return feature_bank_impl(specs, geometry, grid, false);
}
}  // namespace serial

FeatureMap fov_aggregate(const FeatureBank& bank, const std::vector<int>& sector_set,
                         FeatureKind kind) {
  require(!sector_set.empty(), "cannot aggregate over an empty sector set");
  for (int k : sector_set)
    require(k >= 0 && k < int(bank.maps.size()), "sector index out of range");

  FeatureMap out = bank.maps[sector_set[0]];
  out.kind = kind;
  for (size_t s = 1; s < sector_set.size(); ++s) {
    const FeatureMap& m = bank.maps[sector_set[s]];
    for (size_t i = 0; i < out.data.size(); ++i)
      out.data[i] = std::max(out.data[i], m.data[i]);
  }
  return out;
}

FeatureMap fuse_concat(const FeatureMap& d_in, const FeatureMap& d_out) {
  check_same_shape(d_in, d_out);
  FeatureMap out = FeatureMap::zeros(d_in.frames, 2 * d_in.bins, FeatureKind::fused);
  for (int t = 0; t < d_in.frames; ++t) {
    for (int f = 0; f < d_in.bins; ++f) {
      out.at(t, f) = d_in.at(t, f);
      out.at(t, f + d_in.bins) = d_out.at(t, f);
    }
  }
  return out;
}

FeatureMap fuse_postprocess(const FeatureMap& d_in, const FeatureMap& d_out) {
  check_same_shape(d_in, d_out);
  FeatureMap out = FeatureMap::zeros(d_in.frames, d_in.bins, FeatureKind::fused);
  for (size_t i = 0; i < out.data.size(); ++i)
    out.data[i] = d_in.data[i] <= d_out.data[i] ? -1.0 : d_in.data[i];
  return out;
}

}  // namespace azoom
