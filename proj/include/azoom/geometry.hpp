// Copyright 2026 The audiozoom authors
// Microphone geometry, directions and far-field steering phases.
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <array>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "azoom/common.hpp"

namespace azoom {

/// Azimuth in [0, 360) (wraps), elevation in [-90, +90] (enforced).
struct Direction {
  double azimuth_deg = 0.0;
  double elevation_deg = 0.0;

  static Direction of(double azimuth_deg, double elevation_deg) {
    require(elevation_deg >= -90.0 && elevation_deg <= 90.0,
            "elevation must be in [-90, 90] degrees");
    return Direction{wrap_deg(azimuth_deg), elevation_deg};
  }

  /// Unit vector pointing from the array toward the source.
  std::array<double, 3> unit() const {
    const double az = deg_to_rad(azimuth_deg);
    const double el = deg_to_rad(elevation_deg);
    return {std::cos(el) * std::cos(az), std::cos(el) * std::sin(az), std::sin(el)};
  }

  /// Opposite direction: azimuth + 180, elevation negated.
  Direction reversed() const { return of(azimuth_deg + 180.0, -elevation_deg); }
};

/// Angle between two directions in degrees (great-circle).
double angular_distance_deg(const Direction& a, const Direction& b);

/// Microphone positions in meters plus the selected pair list (0-based).
struct ArrayGeometry {
  std::vector<std::array<double, 3>> mic_positions;
  std::vector<std::pair<int, int>> pairs;
  double sound_speed = 343.0;

  int num_mics() const { return int(mic_positions.size()); }
  int num_pairs() const { return int(pairs.size()); }

  /// Pair spacing ||pos[m1] - pos[m2]||; positive for valid pairs.
  double pair_spacing(int pair_index) const;

  /// Unit pair axis, pointing from m2 to m1 (matches IPD = phase(m1) - phase(m2)).
  std::array<double, 3> pair_axis(int pair_index) const;

  /// Largest distance of any mic from the array centroid.
  double radius() const;

  std::array<double, 3> centroid() const;

  void validate() const;
};

/// Phase the plane wave from `direction` induces across one microphone pair
/// at `freq_hz`: 2*pi*f*spacing*dot(u, pair_axis)/c. For a horizontal pair
/// axis this is 2*pi*f*spacing*cos(theta)*cos(alpha)/c with theta measured
/// from the pair axis.
double steering_phase(const ArrayGeometry& geometry, int pair_index,
                      const Direction& direction, double freq_hz);

/// Per-microphone relative steering vector, referenced to `ref_mic`:
/// entry m is exp(+j*2*pi*f*dot(u, pos[m]-pos[ref])/c).
std::vector<std::complex<double>> steering_vector(const ArrayGeometry& geometry,
                                                  const Direction& direction,
                                                  double freq_hz, int ref_mic = 0);

/// Geometry file: JSON with mic_positions (meters), pairs, sound_speed and an
/// optional index_base (default 1, matching physical mic labels).
ArrayGeometry load_geometry(const std::string& path);
void save_geometry(const std::string& path, const ArrayGeometry& geometry);

/// Uniform circular array in the horizontal plane, mic 0 at azimuth 0.
ArrayGeometry circular_array(int num_mics, double radius_m);

/// Built-in default: 8-mic circle, radius 0.05 m, with the documented pair set.
ArrayGeometry default_array();

}  // namespace azoom
