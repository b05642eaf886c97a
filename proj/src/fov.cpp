// Copyright 2026 The audiozoom authors
// Sector grid construction and FOV classification.
//
// Licensed under the Apache License, Version 2.0

#include "azoom/fov.hpp"

#include <cmath>
#include <cstdio>

namespace azoom {

namespace {

// Length of the overlap between circular arcs [a, a+wa) and [b, b+wb), all
// in degrees, wa/wb in (0, 360].
double circular_overlap_deg(double a, double wa, double b, double wb) {
  a = wrap_deg(a);
  b = wrap_deg(b);
  double total = 0.0;
  // Split arc A at the wrap point and intersect both pieces with arc B,
  // which is itself split the same way.
  const auto linear_overlap = [](double lo1, double hi1, double lo2, double hi2) {
    return std::max(0.0, std::min(hi1, hi2) - std::max(lo1, lo2));
  };
  for (int i = 0; i < 2; ++i) {
    const double a_lo = i == 0 ? a : 0.0;
    const double a_hi = i == 0 ? std::min(a + wa, 360.0) : std::max(a + wa - 360.0, 0.0);
    if (a_hi <= a_lo) continue;
    for (int k = 0; k < 2; ++k) {
      const double b_lo = k == 0 ? b : 0.0;
      const double b_hi = k == 0 ? std::min(b + wb, 360.0) : std::max(b + wb - 360.0, 0.0);
      if (b_hi <= b_lo) continue;
      total += linear_overlap(a_lo, a_hi, b_lo, b_hi);
    }
  }
  return total;
}

bool divides_evenly(double res, double span) {
  const double ratio = span / res;
  return std::abs(ratio - std::round(ratio)) < 1e-9 && std::round(ratio) >= 1.0;
}

}  // namespace

bool FieldOfView::contains(const Direction& dir) const {
  if (dir.elevation_deg < alpha_down_deg || dir.elevation_deg > alpha_up_deg) return false;
  const double span = horizontal_span();
  if (span >= 360.0) return true;
  const double offset = wrap_deg(dir.azimuth_deg - theta_low_deg);
  return offset <= span;
}

void FieldOfView::validate() const {
  require(alpha_down_deg >= -90.0 && alpha_up_deg <= 90.0 && alpha_down_deg <= alpha_up_deg,
          "FOV elevation interval must be a valid subinterval of [-90, 90]");
}

FieldOfView parse_fov(const std::string& s) {
  FieldOfView fov;
  double tl, th, ad, au;
  char trailing;
  if (std::sscanf(s.c_str(), "%lf:%lf,%lf:%lf %c", &tl, &th, &ad, &au, &trailing) == 4) {
    fov = FieldOfView{tl, th, ad, au};
  } else if (std::sscanf(s.c_str(), "%lf:%lf %c", &tl, &th, &trailing) == 2) {
    fov = FieldOfView{tl, th, -90.0, 90.0};
  } else {
    throw std::invalid_argument("malformed FOV string (expected \"tl:th[,ad:au]\"): " + s);
  }
  fov.validate();
  return fov;
}

std::string to_string(const FieldOfView& fov) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%g:%g,%g:%g", fov.theta_low_deg, fov.theta_high_deg,
                fov.alpha_down_deg, fov.alpha_up_deg);
  return buf;
}

LookGrid build_look_grid(double h_res_deg, double v_res_deg,
                         double elevation_lo_deg, double elevation_hi_deg) {
  require(h_res_deg > 0.0, "horizontal resolution must be positive");
  require(divides_evenly(h_res_deg, 360.0), "horizontal resolution must divide 360 evenly");
  require(elevation_lo_deg >= -90.0 && elevation_hi_deg <= 90.0 &&
              elevation_lo_deg <= elevation_hi_deg,
          "elevation span must be a valid subinterval of [-90, 90]");

  const int h_count = int(std::round(360.0 / h_res_deg));
  const double v_span = elevation_hi_deg - elevation_lo_deg;
  int v_count = 1;
  if (v_span > 0.0) {
    require(v_res_deg > 0.0, "vertical resolution must be positive");
    require(divides_evenly(v_res_deg, v_span),
            "vertical resolution must divide the elevation span evenly");
    v_count = int(std::round(v_span / v_res_deg));
  }

  LookGrid grid;
  grid.h_res_deg = h_res_deg;
  grid.v_res_deg = v_span > 0.0 ? v_res_deg : 0.0;
  grid.sectors.reserve(size_t(h_count) * size_t(v_count));
  for (int v = 0; v < v_count; ++v) {
    const double el_lo = elevation_lo_deg + (v_span > 0.0 ? v * v_res_deg : 0.0);
    const double el_hi = v_span > 0.0 ? el_lo + v_res_deg : el_lo;
    for (int h = 0; h < h_count; ++h) {
      Sector s;
      s.az_lo_deg = h * h_res_deg;
      s.az_width_deg = h_res_deg;
      s.el_lo_deg = el_lo;
      s.el_hi_deg = el_hi;
      grid.sectors.push_back(s);
      grid.look_directions.push_back(
          Direction::of(s.az_lo_deg + 0.5 * h_res_deg, 0.5 * (el_lo + el_hi)));
    }
  }
  return grid;
}

SectorSplit classify_sectors(const LookGrid& grid, const FieldOfView& fov) {
  fov.validate();
  const double fov_w = fov.horizontal_span();
  const double fov_lo = wrap_deg(fov.theta_low_deg);

  SectorSplit split;
  for (int k = 0; k < grid.size(); ++k) {
    const Sector& s = grid.sectors[k];
    const bool az_in =
        circular_overlap_deg(s.az_lo_deg, s.az_width_deg, fov_lo, fov_w) > 1e-9;

    bool el_in;
    const bool degenerate =
        s.el_hi_deg == s.el_lo_deg || fov.alpha_up_deg == fov.alpha_down_deg;
    if (degenerate) {
      el_in = s.el_lo_deg <= fov.alpha_up_deg && fov.alpha_down_deg <= s.el_hi_deg;
    } else {
      el_in = std::min(s.el_hi_deg, fov.alpha_up_deg) -
                  std::max(s.el_lo_deg, fov.alpha_down_deg) >
              1e-9;
    }

    (az_in && el_in ? split.fov_in : split.fov_out).push_back(k);
  }
  return split;
}

}  // namespace azoom
