// Copyright 2026 The audiozoom authors
// Directional features: IPD, per-look-direction cosine features and the
// FOV / counter-FOV aggregates with both fusion variants.
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <vector>

#include "azoom/feature_map.hpp"
#include "azoom/fov.hpp"
#include "azoom/stft.hpp"

namespace azoom {

/// Per-bin phase difference angle(Y_m1) - angle(Y_m2), wrapped to (-pi, pi].
/// Bins where either channel magnitude is below 1e-10 yield 0.
FeatureMap ipd(const Spectrogram& spec_m1, const Spectrogram& spec_m2);

/// Averaged cosine distance between the steering phases of `direction` and
/// the observed IPDs over all configured pairs:
///   d(t,f) = (1/P) * sum_p cos(steering_phase(p, direction, f_hz) - ipd_p(t,f))
/// Close to 1 on bins dominated by a source from `direction`.
FeatureMap directional_feature(const std::vector<Spectrogram>& specs,
                               const ArrayGeometry& geometry, const Direction& direction);

/// One directional feature map per grid sector (at its bisector).
struct FeatureBank {
  std::vector<FeatureMap> maps;
  LookGrid grid;
};

FeatureBank feature_bank(const std::vector<Spectrogram>& specs,
                         const ArrayGeometry& geometry, const LookGrid& grid);

/// Per-bin max of the bank maps over `sector_set`; throws on an empty set.
FeatureMap fov_aggregate(const FeatureBank& bank, const std::vector<int>& sector_set,
                         FeatureKind kind = FeatureKind::fov_in);

/// Frequency-axis concatenation [d_in, d_out], T x 2F.
FeatureMap fuse_concat(const FeatureMap& d_in, const FeatureMap& d_out);

/// Winner-take-all fusion: -1 where d_in <= d_out, else d_in. Suppressed
/// bins carry the sentinel so downstream masking can zero them out.
FeatureMap fuse_postprocess(const FeatureMap& d_in, const FeatureMap& d_out);

namespace serial {
FeatureMap directional_feature(const std::vector<Spectrogram>& specs,
                               const ArrayGeometry& geometry, const Direction& direction);
FeatureBank feature_bank(const std::vector<Spectrogram>& specs,
                         const ArrayGeometry& geometry, const LookGrid& grid);
}  // namespace serial

}  // namespace azoom
