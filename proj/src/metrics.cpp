// Copyright 2026 The audiozoom authors
//
// Licensed under the Apache License, Version 2.0

#include "azoom/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <json.hpp>

#include "binary_io.hpp"

namespace azoom {

using json = nlohmann::json;

namespace {
constexpr double kSiSdrCapDb = 60.0;
constexpr double kAttenuationCapDb = 120.0;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}
}  // namespace

double si_sdr(const std::vector<double>& est, const std::vector<double>& ref) {
  require(est.size() == ref.size(), "waveform lengths must match");
  require(!ref.empty(), "empty reference");
  const double ref_energy = dot(ref, ref);
  require(ref_energy > 0.0, "SI-SDR is undefined for a zero reference");

  const double alpha = dot(est, ref) / ref_energy;
  const double target_energy = alpha * alpha * ref_energy;
  double err_energy = 0.0;
  for (size_t i = 0; i < est.size(); ++i) {
    const double e = alpha * ref[i] - est[i];
    err_energy += e * e;
  }
  if (err_energy <= 0.0 || target_energy / err_energy > db_to_power_ratio(kSiSdrCapDb))
    return kSiSdrCapDb;
  if (target_energy <= 0.0 ||
      target_energy / err_energy < db_to_power_ratio(-kSiSdrCapDb))
    return -kSiSdrCapDb;
  return power_ratio_to_db(target_energy / err_energy);
}

double attenuation(const std::vector<double>& out, const std::vector<double>& in_ref) {
  require(out.size() == in_ref.size(), "waveform lengths must match");
  const double in_energy = dot(in_ref, in_ref);
  require(in_energy > 0.0, "attenuation is undefined for a zero input");
  const double out_energy = dot(out, out);
  if (out_energy <= 0.0 || in_energy / out_energy > db_to_power_ratio(kAttenuationCapDb))
    return kAttenuationCapDb;
  return power_ratio_to_db(in_energy / out_energy);
}

EvalReport evaluate(const std::vector<std::string>& scene_dirs, Pipeline pipeline,
                    const FieldOfView& fov, const ZoomConfig& cfg) {
  require(!scene_dirs.empty(), "no scene directories given");
  EvalReport report;
  report.pipeline = to_string(pipeline);
  report.fov = to_string(fov);

  for (const auto& dir : scene_dirs) {
    const SceneTruth truth = read_scene(dir);
    const int ref_ch = truth.reference_channel;
    const std::vector<double>& unprocessed = truth.mixture.channels[ref_ch];
    const std::vector<double> reference = fov_reference(truth, fov);
    const bool has_reference = dot(reference, reference) > 0.0;

    ZoomConfig run_cfg = cfg;
    run_cfg.reference_channel = ref_ch;

    // Oracle pipelines get the ground truth: the summed in-FOV images and
    // the beam center (first in-FOV source, falling back to the FOV middle).
    MultichannelWave oracle_target;
    if (pipeline == Pipeline::oracle_irm || pipeline == Pipeline::oracle_mvdr) {
      oracle_target.sample_rate = truth.mixture.sample_rate;
      oracle_target.channels.assign(truth.mixture.num_channels(),
                                    std::vector<double>(truth.mixture.num_samples(), 0.0));
      for (size_t s = 0; s < truth.source_images.size(); ++s) {
        if (!fov.contains(truth.source_directions[s])) continue;
        for (int c = 0; c < truth.mixture.num_channels(); ++c)
          for (size_t i = 0; i < truth.mixture.num_samples(); ++i)
            oracle_target.channels[c][i] += truth.source_images[s].channels[c][i];
      }
      run_cfg.oracle_target = &oracle_target;
      run_cfg.oracle_direction.reset();
      for (size_t s = 0; s < truth.source_directions.size() && !run_cfg.oracle_direction; ++s)
        if (fov.contains(truth.source_directions[s]))
          run_cfg.oracle_direction = truth.source_directions[s];
      if (!run_cfg.oracle_direction)
        run_cfg.oracle_direction = Direction::of(
            fov.theta_low_deg + 0.5 * fov.horizontal_span(),
            0.5 * (fov.alpha_down_deg + fov.alpha_up_deg));
    }

    const std::vector<double> out =
        zoom(truth.mixture, truth.geometry, fov, pipeline, run_cfg);

    UtteranceEval u;
    u.scene_dir = dir;
    u.seed = truth.seed;
    u.has_reference = has_reference;
    u.attenuation_db = attenuation(out, unprocessed);
    if (has_reference) {
      u.si_sdr_db = si_sdr(out, reference);
      u.unprocessed_si_sdr_db = si_sdr(unprocessed, reference);
      u.improvement_db = u.si_sdr_db - u.unprocessed_si_sdr_db;
    }
    report.utterances.push_back(std::move(u));
  }

  for (const auto& u : report.utterances) {
    report.mean_attenuation_db += u.attenuation_db;
    if (u.has_reference) {
      report.num_with_reference += 1;
      report.mean_si_sdr_db += u.si_sdr_db;
      report.mean_improvement_db += u.improvement_db;
    }
  }
  report.mean_attenuation_db /= double(report.utterances.size());
  if (report.num_with_reference > 0) {
    report.mean_si_sdr_db /= report.num_with_reference;
    report.mean_improvement_db /= report.num_with_reference;
  }
  return report;
}

void write_report_jsonl(const std::string& path, const EvalReport& report) {
  detail::atomic_write(path, [&](std::ostream& os) {
    for (const auto& u : report.utterances) {
      json j = {{"scene", u.scene_dir},
                {"seed", u.seed},
                {"pipeline", report.pipeline},
                {"fov", report.fov},
                {"has_reference", u.has_reference},
                {"attenuation_db", u.attenuation_db}};
      if (u.has_reference) {
        j["si_sdr_db"] = u.si_sdr_db;
        j["unprocessed_si_sdr_db"] = u.unprocessed_si_sdr_db;
        j["improvement_db"] = u.improvement_db;
      }
      os << j.dump() << '\n';
    }
    json agg = {{"aggregate", true},
                {"pipeline", report.pipeline},
                {"fov", report.fov},
                {"num_scenes", report.utterances.size()},
                {"num_with_reference", report.num_with_reference},
                {"mean_si_sdr_db", report.mean_si_sdr_db},
                {"mean_improvement_db", report.mean_improvement_db},
                {"mean_attenuation_db", report.mean_attenuation_db}};
    os << agg.dump() << '\n';
  });
}

void print_report(std::ostream& os, const EvalReport& report) {
  char line[256];
  os << "pipeline=" << report.pipeline << " fov=" << report.fov << "\n";
  os << "scene                              si_sdr   unproc  improve    atten\n";
  for (const auto& u : report.utterances) {
    if (u.has_reference) {
      std::snprintf(line, sizeof(line), "%-32s %8.2f %8.2f %8.2f %8.2f\n",
                    u.scene_dir.c_str(), u.si_sdr_db, u.unprocessed_si_sdr_db,
                    u.improvement_db, u.attenuation_db);
    } else {
      std::snprintf(line, sizeof(line), "%-32s %8s %8s %8s %8.2f\n", u.scene_dir.c_str(),
                    "-", "-", "-", u.attenuation_db);
    }
    os << line;
  }
  std::snprintf(line, sizeof(line),
                "mean over %d scene(s): si_sdr %.2f dB, improvement %.2f dB, "
                "attenuation %.2f dB\n",
                int(report.utterances.size()), report.mean_si_sdr_db,
                report.mean_improvement_db, report.mean_attenuation_db);
  os << line;
}

}  // namespace azoom
