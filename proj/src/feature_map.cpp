// Copyright 2026 The audiozoom authors
// Feature-map label strings and binary file format.
//
// Licensed under the Apache License, Version 2.0

#include "azoom/feature_map.hpp"

#include <array>
#include <fstream>

#include "binary_io.hpp"

namespace azoom {

namespace {
constexpr uint32_t kVersion = 1;
constexpr std::array<const char*, 6> kKindNames = {"ipd",    "lps",     "d_theta",
                                                   "fov_in", "fov_out", "fused"};
}  // namespace

std::string to_string(FeatureKind kind) { return kKindNames[size_t(kind)]; }

FeatureKind feature_kind_from_string(const std::string& s) {
  for (size_t i = 0; i < kKindNames.size(); ++i)
    if (s == kKindNames[i]) return FeatureKind(i);
  throw std::invalid_argument("unknown feature kind: " + s);
}

void write_feature_map(const std::string& path, const FeatureMap& map) {
  const std::string label = to_string(map.kind);
  detail::atomic_write(path, [&](std::ostream& os) {
    detail::write_bytes(os, "AZFM", 4);
    detail::write_le<uint32_t>(os, kVersion);
    detail::write_le<uint32_t>(os, uint32_t(map.frames));
    detail::write_le<uint32_t>(os, uint32_t(map.bins));
    detail::write_le<uint32_t>(os, uint32_t(label.size()));
    detail::write_bytes(os, label.data(), label.size());
    for (double v : map.data) detail::write_le<float>(os, float(v));
  });
}

FeatureMap read_feature_map(const std::string& path) {
  detail::check_little_endian();
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open feature map: " + path);

  char magic[4];
  detail::read_bytes(is, magic, 4);
  if (std::string(magic, 4) != "AZFM")
    throw std::runtime_error("not a feature-map file: " + path);
  const uint32_t version = detail::read_le<uint32_t>(is);
  if (version != kVersion) throw std::runtime_error("unsupported feature-map version");

  const uint32_t frames = detail::read_le<uint32_t>(is);
  const uint32_t bins = detail::read_le<uint32_t>(is);
  const uint32_t label_len = detail::read_le<uint32_t>(is);
  std::string label(label_len, '\0');
  if (label_len > 0) detail::read_bytes(is, label.data(), label_len);

  FeatureMap map = FeatureMap::zeros(int(frames), int(bins), feature_kind_from_string(label));
  for (auto& v : map.data) v = double(detail::read_le<float>(is));
  return map;
}

}  // namespace azoom
