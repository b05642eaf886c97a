// Copyright 2026 The audiozoom authors
// End-to-end checks of the command-line tool; the binary path comes from
// the AZOOM_CLI environment variable set by the build.
//
// Licensed under the Apache License, Version 2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "azoom/feature_map.hpp"
#include "azoom/wav_io.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace azoom;

namespace {

std::string cli() {
  const char* path = std::getenv("AZOOM_CLI");
  REQUIRE_MESSAGE(path != nullptr, "AZOOM_CLI must point at the audiozoom binary");
  return path;
}

int run(const std::string& args) {
  const std::string cmd = cli() + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

void write_sample_scene_config(const std::string& path) {
  std::ofstream os(path);
  os << R"({"sample": {"min_sources": 2, "max_sources": 2, "min_separation_deg": 60,
            "snr_db_lo": 20, "snr_db_hi": 20, "duration_s": 0.5}})";
}

}  // namespace

TEST_CASE("help exits cleanly, usage errors exit with 2") {
  CHECK(run("--help") == 0);
  CHECK(run("zoom --help") == 0);
  CHECK(run("") == 2);                 // missing subcommand
  CHECK(run("frobnicate") == 2);       // unknown subcommand
  CHECK(run("zoom") == 2);             // missing required flags
  CHECK(run("zoom --in x.wav --out y.wav --fov banana") == 2);  // malformed FOV
  CHECK(run("zoom --in x.wav --out y.wav --fov 0:90 --pipeline nonsense") == 2);
}

TEST_CASE("runtime failures exit with 1") {
  TempDir tmp("azoom_cli_rt");
  CHECK(run("zoom --in " + (tmp / "missing.wav") + " --out " + (tmp / "out.wav") +
            " --fov 30:90") == 1);
  CHECK(run("simulate --scene " + (tmp / "missing.json") + " --out-dir " + (tmp / "x")) == 1);
}

TEST_CASE("the global config file is honoured and validated") {
  TempDir tmp("azoom_cli_cfg");
  const std::string scene_cfg = tmp / "scene.json";
  write_sample_scene_config(scene_cfg);
  REQUIRE(run("simulate --scene " + scene_cfg + " --seed 5 --out-dir " + (tmp / "s")) == 0);

  // A config with the plain-hann window and a coarser grid still runs.
  const std::string cfg = tmp / "run.json";
  {
    std::ofstream os(cfg);
    os << R"({"stft": {"fft_size": 512, "hop": 256, "window": "hann"},
              "grid": {"h_res_deg": 30.0, "v_res_deg": 20.0,
                       "elevation_lo_deg": -20.0, "elevation_hi_deg": 20.0},
              "mask": {"g_min": 0.02, "gamma": 4.0}})";
  }
  CHECK(run("--config " + cfg + " zoom --in " + (tmp / "s") + "/mixture.wav --out " +
            (tmp / "o.wav") + " --fov 0:90 --pipeline feature_mask_soft") == 0);
  CHECK(fs::exists(tmp / "o.wav"));

  // Malformed JSON and unknown window names are runtime errors.
  const std::string bad = tmp / "bad.json";
  {
    std::ofstream os(bad);
    os << "{ not json";
  }
  CHECK(run("--config " + bad + " zoom --in " + (tmp / "s") + "/mixture.wav --out " +
            (tmp / "o2.wav") + " --fov 0:90") == 1);
  const std::string badwin = tmp / "badwin.json";
  {
    std::ofstream os(badwin);
    os << R"({"stft": {"window": "kaiser"}})";
  }
  CHECK(run("--config " + badwin + " zoom --in " + (tmp / "s") + "/mixture.wav --out " +
            (tmp / "o3.wav") + " --fov 0:90") == 1);
}

TEST_CASE("simulate, zoom, extract and evaluate run end to end") {
  TempDir tmp("azoom_cli_e2e");
  const std::string scene_cfg = tmp / "scene.json";
  write_sample_scene_config(scene_cfg);

  SUBCASE("single scene plus zoom and extract") {
    const std::string scene_dir = tmp / "scene0";
    CHECK(run("simulate --scene " + scene_cfg + " --seed 7 --out-dir " + scene_dir) == 0);
    CHECK(fs::exists(scene_dir + "/mixture.wav"));
    CHECK(fs::exists(scene_dir + "/truth.json"));
    CHECK(fs::exists(scene_dir + "/noise.wav"));
    CHECK(fs::exists(scene_dir + "/src_0.wav"));
    CHECK(fs::exists(scene_dir + "/src_1.wav"));

    const MultichannelWave mix = read_wav(scene_dir + "/mixture.wav");
    CHECK(mix.num_channels() == 8);

    // Zoom keeps the sample count.
    const std::string out_wav = tmp / "zoomed.wav";
    CHECK(run("zoom --in " + scene_dir + "/mixture.wav --out " + out_wav +
              " --fov 0:120 --pipeline feature_mask_soft") == 0);
    const MultichannelWave zoomed = read_wav(out_wav);
    CHECK(zoomed.num_channels() == 1);
    CHECK(zoomed.num_samples() == mix.num_samples());

    // A full-circle FOV behaves like pass-through.
    const std::string pass_wav = tmp / "pass.wav";
    CHECK(run("zoom --in " + scene_dir + "/mixture.wav --out " + pass_wav +
              " --fov 0:360,-90:90 --pipeline feature_mask_hard") == 0);
    const MultichannelWave passed = read_wav(pass_wav);
    CHECK(oracle::rel_l2_error(passed.channels[0], mix.channels[0], 512,
                               mix.num_samples() - 512) < 1e-5);

    // Feature extraction writes the four documented maps.
    const std::string feat_dir = tmp / "feats";
    CHECK(run("extract --in " + scene_dir + "/mixture.wav --fov 0:120 --out-dir " +
              feat_dir) == 0);
    const FeatureMap d_in = read_feature_map(feat_dir + "/d_in.fmap");
    const FeatureMap d_out = read_feature_map(feat_dir + "/d_out.fmap");
    const FeatureMap cat = read_feature_map(feat_dir + "/fused_concat.fmap");
    const FeatureMap post = read_feature_map(feat_dir + "/fused_post.fmap");

    const int frames = 1 + (int(mix.num_samples()) - 512) / 256;
    CHECK(d_in.frames == frames);
    CHECK(d_in.bins == 257);
    CHECK(d_out.kind == FeatureKind::fov_out);
    CHECK(cat.bins == 2 * 257);
    CHECK(post.bins == 257);
    for (double v : post.data) {
      CHECK(v >= -1.0 - 1e-6);
      CHECK(v <= 1.0 + 1e-6);
    }
    for (int t = 0; t < frames; ++t)
      for (int f = 0; f < 257; ++f) {
        CHECK(float(cat.at(t, f)) == float(d_in.at(t, f)));
        CHECK(float(cat.at(t, f + 257)) == float(d_out.at(t, f)));
      }
  }

  SUBCASE("multi-scene simulation and evaluation") {
    const std::string scenes = tmp / "scenes";
    CHECK(run("simulate --scene " + scene_cfg + " --seed 3 --num-scenes 3 --out-dir " +
              scenes) == 0);
    int scene_count = 0;
    for (const auto& e : fs::directory_iterator(scenes))
      if (e.is_directory() && fs::exists(e.path() / "truth.json")) ++scene_count;
    CHECK(scene_count == 3);

    const std::string report = tmp / "report.jsonl";
    CHECK(run("evaluate --scenes " + scenes + " --pipeline identity --fov 0:360 --report " +
              report) == 0);
    std::ifstream is(report);
    int lines = 0;
    std::string line;
    while (std::getline(is, line))
      if (!line.empty()) ++lines;
    CHECK(lines == 4);  // three utterances + aggregate

    // Identity over the full sphere: improvement is exactly zero.
    is.clear();
    is.seekg(0);
    bool saw_improvement_zero = false;
    while (std::getline(is, line))
      if (line.find("\"improvement_db\":0.0") != std::string::npos ||
          line.find("\"improvement_db\":-0.0") != std::string::npos)
        saw_improvement_zero = true;
    CHECK(saw_improvement_zero);
  }

  SUBCASE("seed reuse reproduces identical scene files") {
    const std::string d1 = tmp / "rep1";
    const std::string d2 = tmp / "rep2";
    CHECK(run("simulate --scene " + scene_cfg + " --seed 11 --out-dir " + d1) == 0);
    CHECK(run("simulate --scene " + scene_cfg + " --seed 11 --out-dir " + d2) == 0);
    for (const char* name : {"mixture.wav", "noise.wav", "src_0.wav"}) {
      std::ifstream a(d1 + "/" + name, std::ios::binary);
      std::ifstream b(d2 + "/" + name, std::ios::binary);
      const std::string sa((std::istreambuf_iterator<char>(a)), {});
      const std::string sb((std::istreambuf_iterator<char>(b)), {});
      CHECK(sa == sb);
    }
  }
}
