// Copyright 2026 The audiozoom authors
// Geometry math and geometry-file I/O.
//
// Licensed under the Apache License, Version 2.0

#include "azoom/geometry.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "binary_io.hpp"

namespace azoom {

using json = nlohmann::json;

namespace {

std::array<double, 3> diff(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

double norm(const std::array<double, 3>& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

double dot(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

}  // namespace

double angular_distance_deg(const Direction& a, const Direction& b) {
  const auto ua = a.unit();
  const auto ub = b.unit();
  const double c = std::clamp(dot(ua, ub), -1.0, 1.0);
  return rad_to_deg(std::acos(c));
}

double ArrayGeometry::pair_spacing(int pair_index) const {
  require(pair_index >= 0 && pair_index < num_pairs(), "pair index out of range");
  const auto& [m1, m2] = pairs[pair_index];
  return norm(diff(mic_positions[m1], mic_positions[m2]));
}

std::array<double, 3> ArrayGeometry::pair_axis(int pair_index) const {
  require(pair_index >= 0 && pair_index < num_pairs(), "pair index out of range");
  const auto& [m1, m2] = pairs[pair_index];
  auto d = diff(mic_positions[m1], mic_positions[m2]);
  const double len = norm(d);
  require(len > 0.0, "pair spacing must be positive");
  return {d[0] / len, d[1] / len, d[2] / len};
}

std::array<double, 3> ArrayGeometry::centroid() const {
  std::array<double, 3> c = {0, 0, 0};
  for (const auto& p : mic_positions)
    for (int i = 0; i < 3; ++i) c[i] += p[i];
  for (int i = 0; i < 3; ++i) c[i] /= double(mic_positions.size());
  return c;
}

double ArrayGeometry::radius() const {
  const auto c = centroid();
  double r = 0.0;
  for (const auto& p : mic_positions) r = std::max(r, norm(diff(p, c)));
  return r;
}

void ArrayGeometry::validate() const {
  require(!mic_positions.empty(), "geometry needs at least one microphone");
  require(sound_speed > 0.0, "sound speed must be positive");
  for (const auto& [m1, m2] : pairs) {
    require(m1 >= 0 && m1 < num_mics() && m2 >= 0 && m2 < num_mics(),
            "pair indices must reference existing microphones");
    require(m1 != m2, "pair must use two distinct microphones");
    require(norm(diff(mic_positions[m1], mic_positions[m2])) > 0.0,
            "paired microphones must not be co-located");
  }
}

double steering_phase(const ArrayGeometry& geometry, int pair_index,
                      const Direction& direction, double freq_hz) {
  require(freq_hz >= 0.0, "frequency must be non-negative");
  const double spacing = geometry.pair_spacing(pair_index);
  const auto axis = geometry.pair_axis(pair_index);
  const auto u = direction.unit();
  const double dot_up = u[0] * axis[0] + u[1] * axis[1] + u[2] * axis[2];
  return kTwoPi * freq_hz * spacing * dot_up / geometry.sound_speed;
}

std::vector<std::complex<double>> steering_vector(const ArrayGeometry& geometry,
                                                  const Direction& direction,
                                                  double freq_hz, int ref_mic) {
  require(freq_hz >= 0.0, "frequency must be non-negative");
  require(ref_mic >= 0 && ref_mic < geometry.num_mics(), "reference mic out of range");
  const auto u = direction.unit();
  const auto& ref = geometry.mic_positions[ref_mic];
  std::vector<std::complex<double>> d(geometry.num_mics());
  for (int m = 0; m < geometry.num_mics(); ++m) {
    const auto rel = diff(geometry.mic_positions[m], ref);
    const double phase = kTwoPi * freq_hz * dot(u, rel) / geometry.sound_speed;
    d[m] = std::polar(1.0, phase);
  }
  return d;
}

ArrayGeometry load_geometry(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open geometry file: " + path);
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("malformed geometry file " + path + ": " + e.what());
  }

  ArrayGeometry g;
  for (const auto& p : j.at("mic_positions"))
    g.mic_positions.push_back({p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>()});
  const int base = j.value("index_base", 1);
  for (const auto& p : j.at("pairs"))
    g.pairs.emplace_back(p.at(0).get<int>() - base, p.at(1).get<int>() - base);
  g.sound_speed = j.value("sound_speed", 343.0);
  g.validate();
  return g;
}

void save_geometry(const std::string& path, const ArrayGeometry& geometry) {
  geometry.validate();
  json j;
  j["index_base"] = 1;
  for (const auto& p : geometry.mic_positions) j["mic_positions"].push_back({p[0], p[1], p[2]});
  j["pairs"] = json::array();
  for (const auto& [m1, m2] : geometry.pairs) j["pairs"].push_back({m1 + 1, m2 + 1});
  j["sound_speed"] = geometry.sound_speed;
  detail::atomic_write(path, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

ArrayGeometry circular_array(int num_mics, double radius_m) {
  require(num_mics >= 1, "need at least one microphone");
  require(radius_m > 0.0, "radius must be positive");
  ArrayGeometry g;
  for (int m = 0; m < num_mics; ++m) {
    const double az = kTwoPi * m / num_mics;
    g.mic_positions.push_back({radius_m * std::cos(az), radius_m * std::sin(az), 0.0});
  }
  return g;
}

ArrayGeometry default_array() {
  ArrayGeometry g = circular_array(8, 0.05);
  // Pair labels are 1-based physical mic numbers.
  g.pairs = {{0, 3}, {1, 5}, {0, 6}, {1, 6}, {3, 5}, {2, 6}};
  g.validate();
  return g;
}

}  // namespace azoom
