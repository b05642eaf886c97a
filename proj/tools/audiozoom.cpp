// Copyright 2026 The audiozoom authors
// Command-line front end: simulate -> extract -> zoom -> evaluate.
//
// Licensed under the Apache License, Version 2.0

#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "azoom/config.hpp"
#include "azoom/metrics.hpp"
#include "azoom/scene.hpp"
#include "azoom/wav_io.hpp"
#include "azoom/zoom.hpp"

namespace fs = std::filesystem;
using namespace azoom;

namespace {

const CLI::Validator FovString(
    [](std::string& s) -> std::string {
      try {
        parse_fov(s);
        return {};
      } catch (const std::exception& e) {
        return std::string(e.what());
      }
    },
    "FOV", "fov");

const CLI::Validator PipelineString(
    [](std::string& s) -> std::string {
      try {
        pipeline_from_string(s);
        return {};
      } catch (const std::exception& e) {
        return std::string(e.what());
      }
    },
    "PIPELINE", "pipeline");

const CLI::Validator DirectionString(
    [](std::string& s) -> std::string {
      double az, el;
      if (std::sscanf(s.c_str(), "%lf:%lf", &az, &el) != 2)
        return "expected azimuth:elevation in degrees";
      if (el < -90.0 || el > 90.0) return "elevation must be in [-90, 90]";
      return {};
    },
    "DIRECTION", "direction");

Direction parse_direction(const std::string& s) {
  double az = 0.0, el = 0.0;
  std::sscanf(s.c_str(), "%lf:%lf", &az, &el);
  return Direction::of(az, el);
}

std::string scene_subdir(const std::string& base, int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "scene_%03d", index);
  return (fs::path(base) / buf).string();
}

std::vector<std::string> collect_scene_dirs(const std::string& root) {
  if (fs::exists(fs::path(root) / "truth.json")) return {root};
  std::vector<std::string> dirs;
  if (fs::is_directory(root))
    for (const auto& e : fs::directory_iterator(root))
      if (e.is_directory() && fs::exists(e.path() / "truth.json"))
        dirs.push_back(e.path().string());
  std::sort(dirs.begin(), dirs.end());
  if (dirs.empty()) throw std::runtime_error("no scene directories under " + root);
  return dirs;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"audiozoom: field-of-view audio zooming toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string config_path;
  if (const char* env = std::getenv("AUDIOZOOM_CONFIG")) config_path = env;
  std::string geometry_path;
  int threads = 0;
  app.add_option("--config", config_path, "global JSON config file")
      ->envname("AUDIOZOOM_CONFIG");
  auto* geom_opt = app.add_option("--geometry", geometry_path, "geometry JSON file");
  app.add_option("--threads", threads, "worker threads (0 = library default)");

  // simulate
  auto* sim = app.add_subcommand("simulate", "render scenes from a scene config");
  std::string sim_scene, sim_out;
  uint64_t sim_seed = 0;
  int sim_num_scenes = 1;
  sim->add_option("--scene", sim_scene, "scene JSON (explicit or sampled)")->required();
  sim->add_option("--out-dir", sim_out, "output directory")->required();
  auto* sim_seed_opt = sim->add_option("--seed", sim_seed, "base seed");
  sim->add_option("--num-scenes", sim_num_scenes, "number of scenes (seed+i each)")
      ->check(CLI::PositiveNumber);

  // extract
  auto* ext = app.add_subcommand("extract", "write FOV feature maps for a wav");
  std::string ext_in, ext_fov, ext_out;
  double ext_hres = -1.0, ext_vres = -1.0;
  ext->add_option("--in", ext_in, "multichannel input wav")->required();
  ext->add_option("--fov", ext_fov, "FOV as tl:th[,ad:au] degrees")
      ->required()
      ->check(FovString);
  ext->add_option("--out-dir", ext_out, "output directory")->required();
  ext->add_option("--h-res", ext_hres, "horizontal sector width (deg)");
  ext->add_option("--v-res", ext_vres, "vertical sector width (deg)");

  // zoom
  auto* zm = app.add_subcommand("zoom", "zoom a wav into the FOV");
  std::string zm_in, zm_out, zm_fov, zm_pipeline = "feature_mask_soft";
  std::string zm_target, zm_direction, zm_weights;
  double zm_hres = -1.0, zm_vres = -1.0, zm_gmin = -1.0, zm_gamma = -1.0;
  zm->add_option("--in", zm_in, "multichannel input wav")->required();
  zm->add_option("--out", zm_out, "zoomed mono output wav")->required();
  zm->add_option("--fov", zm_fov, "FOV as tl:th[,ad:au] degrees")
      ->required()
      ->check(FovString);
  zm->add_option("--pipeline", zm_pipeline,
                 "identity | feature_mask_hard | feature_mask_soft | oracle_irm | "
                 "oracle_mvdr | model")
      ->check(PipelineString);
  zm->add_option("--target", zm_target, "ground-truth target wav (oracle pipelines)");
  zm->add_option("--target-direction", zm_direction, "beam center az:el (oracle_mvdr)")
      ->check(DirectionString);
  zm->add_option("--weights", zm_weights, "model weights file (model pipeline)");
  zm->add_option("--h-res", zm_hres, "horizontal sector width (deg)");
  zm->add_option("--v-res", zm_vres, "vertical sector width (deg)");
  zm->add_option("--g-min", zm_gmin, "mask floor");
  zm->add_option("--gamma", zm_gamma, "soft mask slope");

  // init-weights
  auto* iw = app.add_subcommand("init-weights", "write seed-initialized model weights");
  std::string iw_out;
  uint64_t iw_seed = 1;
  int iw_fft = 512, iw_mics = 8, iw_mask_hidden = 256, iw_subband_hidden = 64, iw_embed = 32;
  iw->add_option("--out", iw_out, "weights file to write")->required();
  iw->add_option("--seed", iw_seed, "PRNG seed");
  iw->add_option("--fft-size", iw_fft, "fft size the model is built for");
  iw->add_option("--mics", iw_mics, "channel count");
  iw->add_option("--mask-hidden", iw_mask_hidden, "mask-stage recurrent width");
  iw->add_option("--subband-hidden", iw_subband_hidden, "subband recurrent width");
  iw->add_option("--embed", iw_embed, "subband embedding width");

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "score a pipeline on simulated scenes");
  std::string ev_scenes, ev_fov, ev_pipeline = "feature_mask_soft", ev_report;
  double ev_hres = -1.0, ev_vres = -1.0, ev_gmin = -1.0, ev_gamma = -1.0;
  ev->add_option("--scenes", ev_scenes, "scene directory (or parent of scene dirs)")
      ->required();
  ev->add_option("--fov", ev_fov, "FOV as tl:th[,ad:au] degrees")
      ->required()
      ->check(FovString);
  ev->add_option("--pipeline", ev_pipeline, "pipeline to score")->check(PipelineString);
  ev->add_option("--report", ev_report, "JSONL report path");
  std::string ev_weights;
  ev->add_option("--weights", ev_weights, "model weights file (model pipeline)");
  ev->add_option("--h-res", ev_hres, "horizontal sector width (deg)");
  ev->add_option("--v-res", ev_vres, "vertical sector width (deg)");
  ev->add_option("--g-min", ev_gmin, "mask floor");
  ev->add_option("--gamma", ev_gamma, "soft mask slope");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (threads > 0) omp_set_num_threads(threads);

    RunConfig cfg;
    if (!config_path.empty()) cfg = load_run_config(config_path);
    if (geom_opt->count() > 0) cfg.geometry_path = geometry_path;
    const ArrayGeometry geometry = resolve_geometry(cfg);

    if (*sim) {
      const uint64_t base_seed = sim_seed_opt->count() > 0 ? sim_seed : cfg.seed;
      for (int i = 0; i < sim_num_scenes; ++i) {
        const uint64_t seed = base_seed + uint64_t(i);
        const SceneSpec spec = load_scene_spec(sim_scene, seed, geometry);
        const SceneTruth truth = render(spec);
        const std::string dir =
            sim_num_scenes == 1 ? sim_out : scene_subdir(sim_out, i);
        write_scene(dir, spec, truth, seed);
        std::cout << dir << "\n";
      }
      return 0;
    }

    if (*ext) {
      ZoomConfig zc = to_zoom_config(cfg);
      if (ext_hres > 0) zc.h_res_deg = ext_hres;
      if (ext_vres > 0) zc.v_res_deg = ext_vres;
      const FieldOfView fov = parse_fov(ext_fov);
      const MultichannelWave wave = read_wav(ext_in);
      const auto specs = stft_all(wave, zc.stft);
      const FovFeatures f = compute_fov_features(specs, geometry, fov, zc);

      fs::create_directories(ext_out);
      const auto out = [&](const std::string& n) { return (fs::path(ext_out) / n).string(); };
      write_feature_map(out("d_in.fmap"), f.d_in);
      write_feature_map(out("d_out.fmap"), f.d_out);
      write_feature_map(out("fused_concat.fmap"), fuse_concat(f.d_in, f.d_out));
      write_feature_map(out("fused_post.fmap"), fuse_postprocess(f.d_in, f.d_out));
      return 0;
    }

    if (*zm) {
      ZoomConfig zc = to_zoom_config(cfg);
      if (zm_hres > 0) zc.h_res_deg = zm_hres;
      if (zm_vres > 0) zc.v_res_deg = zm_vres;
      if (zm_gmin >= 0) zc.mask.g_min = zm_gmin;
      if (zm_gamma > 0) zc.mask.gamma = zm_gamma;

      const FieldOfView fov = parse_fov(zm_fov);
      const Pipeline pipeline = pipeline_from_string(zm_pipeline);
      const MultichannelWave wave = read_wav(zm_in);

      MultichannelWave target;
      if (!zm_target.empty()) {
        target = read_wav(zm_target);
        zc.oracle_target = &target;
      }
      if (!zm_direction.empty()) zc.oracle_direction = parse_direction(zm_direction);
      ModelWeights weights;
      if (!zm_weights.empty()) {
        weights = load_weights(zm_weights);
        zc.model_weights = &weights;
      }

      const std::vector<double> out = zoom(wave, geometry, fov, pipeline, zc);
      MultichannelWave mono;
      mono.sample_rate = wave.sample_rate;
      mono.channels.push_back(out);
      write_wav(zm_out, mono);
      return 0;
    }

    if (*iw) {
      const ModelWeights w = seeded_weights(iw_seed, iw_fft, iw_mics, iw_mask_hidden,
                                            iw_subband_hidden, iw_embed);
      save_weights(iw_out, w);
      std::cout << iw_out << " (" << w.parameter_count() << " parameters)\n";
      return 0;
    }

    if (*ev) {
      ZoomConfig zc = to_zoom_config(cfg);
      if (ev_hres > 0) zc.h_res_deg = ev_hres;
      if (ev_vres > 0) zc.v_res_deg = ev_vres;
      if (ev_gmin >= 0) zc.mask.g_min = ev_gmin;
      if (ev_gamma > 0) zc.mask.gamma = ev_gamma;

      const FieldOfView fov = parse_fov(ev_fov);
      const Pipeline pipeline = pipeline_from_string(ev_pipeline);
      ModelWeights weights;
      if (!ev_weights.empty()) {
        weights = load_weights(ev_weights);
        zc.model_weights = &weights;
      }
      const EvalReport report = evaluate(collect_scene_dirs(ev_scenes), pipeline, fov, zc);
      print_report(std::cout, report);
      if (!ev_report.empty()) write_report_jsonl(ev_report, report);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "audiozoom: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
