// Copyright 2026 The audiozoom authors
//
// Licensed under the Apache License, Version 2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "azoom/fov.hpp"
#include "oracles.hpp"

using namespace azoom;

TEST_CASE("2-D grid: 10 degree sectors") {
  const LookGrid grid = build_look_grid(10.0, 0.0);
  REQUIRE(grid.size() == 36);
  CHECK(grid.look_directions[0].azimuth_deg == doctest::Approx(5.0));
  CHECK(grid.look_directions[35].azimuth_deg == doctest::Approx(355.0));
  CHECK(grid.look_directions[0].elevation_deg == doctest::Approx(0.0));
  CHECK(grid.sectors[0].az_lo_deg == doctest::Approx(0.0));
  CHECK(grid.sectors[0].el_lo_deg == grid.sectors[0].el_hi_deg);
}

TEST_CASE("3-D grid: 20x10 over a 40 degree elevation span") {
  const LookGrid grid = build_look_grid(20.0, 10.0, 0.0, 40.0);
  REQUIRE(grid.size() == 18 * 4);
  // First band of sectors sits at elevation [0, 10] with bisector 5.
  CHECK(grid.look_directions[0].elevation_deg == doctest::Approx(5.0));
  CHECK(grid.sectors.back().el_hi_deg == doctest::Approx(40.0));
}

TEST_CASE("60 degree sectors have the expected bisectors") {
  const LookGrid grid = build_look_grid(60.0, 0.0);
  REQUIRE(grid.size() == 6);
  for (int k = 0; k < 6; ++k)
    CHECK(grid.look_directions[k].azimuth_deg == doctest::Approx(30.0 + 60.0 * k));
}

TEST_CASE("non-divisible resolutions are rejected") {
  CHECK_THROWS_AS(build_look_grid(7.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_look_grid(20.0, 15.0, 0.0, 40.0), std::invalid_argument);
  CHECK_THROWS_AS(build_look_grid(-10.0, 0.0), std::invalid_argument);
}

TEST_CASE("full-circle FOV puts every sector inside") {
  const LookGrid grid = build_look_grid(10.0, 10.0, -90.0, 90.0);
  const SectorSplit split = classify_sectors(grid, FieldOfView{0, 360, -90, 90});
  CHECK(split.fov_out.empty());
  CHECK(int(split.fov_in.size()) == grid.size());
}

TEST_CASE("a FOV matching one sector selects exactly that sector") {
  const LookGrid grid = build_look_grid(10.0, 0.0);
  const SectorSplit split = classify_sectors(grid, FieldOfView{0, 10, -90, 90});
  REQUIRE(split.fov_in.size() == 1);
  CHECK(split.fov_in[0] == 0);
  CHECK(split.fov_out.size() == 35);
}

TEST_CASE("wraparound FOV [350, 20] selects the three expected sectors") {
  const LookGrid grid = build_look_grid(10.0, 0.0);
  const SectorSplit split = classify_sectors(grid, FieldOfView{350, 20, -90, 90});
  const std::set<int> got(split.fov_in.begin(), split.fov_in.end());
  CHECK(got == std::set<int>({35, 0, 1}));
}

TEST_CASE("classification agrees with the dense sampling oracle") {
  Rng rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const bool flat = trial % 2 == 0;
    const LookGrid grid =
        flat ? build_look_grid(15.0, 0.0) : build_look_grid(30.0, 15.0, -30.0, 30.0);
    FieldOfView fov;
    fov.theta_low_deg = rng.uniform(0, 360);
    fov.theta_high_deg = wrap_deg(fov.theta_low_deg + rng.uniform(5, 355));
    fov.alpha_down_deg = rng.uniform(-90, 80);
    fov.alpha_up_deg = fov.alpha_down_deg + rng.uniform(1, 90 - fov.alpha_down_deg);

    const SectorSplit split = classify_sectors(grid, fov);
    CHECK(int(split.fov_in.size() + split.fov_out.size()) == grid.size());
    for (int k : split.fov_in) CHECK(oracle::sector_in_fov_sampled(grid.sectors[k], fov));
    for (int k : split.fov_out) CHECK_FALSE(oracle::sector_in_fov_sampled(grid.sectors[k], fov));
  }
}

TEST_CASE("shrinking the FOV never grows the inside set") {
  const LookGrid grid = build_look_grid(10.0, 10.0, -40.0, 40.0);
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    FieldOfView big;
    big.theta_low_deg = rng.uniform(0, 360);
    const double span = rng.uniform(40, 320);
    big.theta_high_deg = wrap_deg(big.theta_low_deg + span);
    big.alpha_down_deg = -35.0;
    big.alpha_up_deg = 35.0;

    FieldOfView small = big;
    small.theta_low_deg = wrap_deg(big.theta_low_deg + 10.0);
    small.theta_high_deg = wrap_deg(big.theta_high_deg - 10.0);
    small.alpha_down_deg = -20.0;
    small.alpha_up_deg = 20.0;

    const auto in_big = classify_sectors(grid, big).fov_in;
    const auto in_small = classify_sectors(grid, small).fov_in;
    CHECK(std::includes(in_big.begin(), in_big.end(), in_small.begin(), in_small.end()));
  }
}

TEST_CASE("FOV membership for sources uses the closed box") {
  const FieldOfView fov{30, 90, 0, 40};
  CHECK(fov.contains(Direction::of(30, 0)));
  CHECK(fov.contains(Direction::of(90, 40)));
  CHECK(fov.contains(Direction::of(60, 20)));
  CHECK_FALSE(fov.contains(Direction::of(91, 20)));
  CHECK_FALSE(fov.contains(Direction::of(60, 41)));

  const FieldOfView wrap{350, 20, -90, 90};
  CHECK(wrap.contains(Direction::of(355, 0)));
  CHECK(wrap.contains(Direction::of(10, 0)));
  CHECK(wrap.contains(Direction::of(350, 0)));
  CHECK(wrap.contains(Direction::of(20, 0)));
  CHECK_FALSE(wrap.contains(Direction::of(180, 0)));
}

TEST_CASE("FOV string parsing") {
  const FieldOfView f1 = parse_fov("30:90,0:40");
  CHECK(f1.theta_low_deg == doctest::Approx(30));
  CHECK(f1.alpha_up_deg == doctest::Approx(40));

  const FieldOfView f2 = parse_fov("350:20");
  CHECK(f2.theta_low_deg == doctest::Approx(350));
  CHECK(f2.alpha_down_deg == doctest::Approx(-90));
  CHECK(f2.horizontal_span() == doctest::Approx(30));

  CHECK(parse_fov("0:360,-90:90").horizontal_span() == doctest::Approx(360));

  CHECK_THROWS_AS(parse_fov("monkeys"), std::invalid_argument);
  CHECK_THROWS_AS(parse_fov("30:90,0:140"), std::invalid_argument);
  CHECK_THROWS_AS(parse_fov("30:90,40:0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_fov(""), std::invalid_argument);
}
