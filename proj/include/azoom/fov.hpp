// Copyright 2026 The audiozoom authors
// Field-of-view boxes, the look-direction sector grid and sector classification.
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <string>
#include <vector>

#include "azoom/geometry.hpp"

namespace azoom {

/// Angular box [theta_low, theta_high] x [alpha_down, alpha_up] in degrees.
/// The horizontal interval wraps modulo 360 when theta_low > theta_high;
/// equal bounds (or 0:360) mean the full circle.
struct FieldOfView {
  double theta_low_deg = 0.0;
  double theta_high_deg = 360.0;
  double alpha_down_deg = -90.0;
  double alpha_up_deg = 90.0;

  /// Horizontal span in (0, 360].
  double horizontal_span() const {
    const double span = wrap_deg(theta_high_deg - theta_low_deg);
    return span == 0.0 ? 360.0 : span;
  }

  /// Source membership uses the closed box (boundary directions included).
  bool contains(const Direction& dir) const;

  void validate() const;
};

/// Parses "30:90,0:40" (azimuth range, elevation range) or "30:90"
/// (elevation defaults to [-90, 90]).
FieldOfView parse_fov(const std::string& s);
std::string to_string(const FieldOfView& fov);

/// One grid cell: azimuth interval [az_lo, az_lo + az_width) mod 360 and
/// elevation interval [el_lo, el_hi] (degenerate when the grid is 2-D).
struct Sector {
  double az_lo_deg = 0.0;
  double az_width_deg = 0.0;
  double el_lo_deg = 0.0;
  double el_hi_deg = 0.0;
};

/// Uniform partition of [0,360) x elevation span with one look direction at
/// each sector bisector.
struct LookGrid {
  double h_res_deg = 0.0;
  double v_res_deg = 0.0;
  std::vector<Sector> sectors;
  std::vector<Direction> look_directions;

  int size() const { return int(sectors.size()); }
};

/// Builds the grid. Resolutions must divide their spans evenly. A degenerate
/// elevation span (lo == hi) yields a 2-D grid with 360/h_res sectors whose
/// look directions sit at that elevation.
LookGrid build_look_grid(double h_res_deg, double v_res_deg,
                         double elevation_lo_deg = 0.0, double elevation_hi_deg = 0.0);

struct SectorSplit {
  std::vector<int> fov_in;   // sectors intersecting the FOV box
  std::vector<int> fov_out;  // complement
};

/// Splits sector indices by FOV membership. A sector is inside when its
/// azimuth arc overlaps the FOV arc with positive measure (both treated
/// half-open, so a FOV boundary angle selects a unique sector) and its
/// elevation interval overlaps the FOV's (closed test when either side is
/// degenerate).
SectorSplit classify_sectors(const LookGrid& grid, const FieldOfView& fov);

}  // namespace azoom
