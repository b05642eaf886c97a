// Copyright 2026 The audiozoom authors
// Evaluation: SI-SDR, out-of-FOV attenuation, and per-scene reports.
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "azoom/scene.hpp"
#include "azoom/zoom.hpp"

namespace azoom {

/// Scale-invariant signal-to-distortion ratio in dB, capped at +-60.
/// Throws when the reference is identically zero.
double si_sdr(const std::vector<double>& est, const std::vector<double>& ref);

/// 10*log10(||in_ref||^2 / ||out||^2), capped at 120 dB (zero output).
/// Throws when the input reference is identically zero.
double attenuation(const std::vector<double>& out, const std::vector<double>& in_ref);

struct UtteranceEval {
  std::string scene_dir;
  uint64_t seed = 0;
  bool has_reference = false;     // any source inside the FOV
  double si_sdr_db = 0.0;         // pipeline output vs. in-FOV reference
  double unprocessed_si_sdr_db = 0.0;
  double improvement_db = 0.0;    // si_sdr_db - unprocessed_si_sdr_db
  double attenuation_db = 0.0;    // output energy vs. unprocessed reference channel
};

struct EvalReport {
  std::string pipeline;
  std::string fov;
  std::vector<UtteranceEval> utterances;
  // Aggregates; SI-SDR means cover utterances with an in-FOV reference.
  int num_with_reference = 0;
  double mean_si_sdr_db = 0.0;
  double mean_improvement_db = 0.0;
  double mean_attenuation_db = 0.0;
};

/// Evaluates the pipeline on simulated scene directories: metrics of the
/// zoom output against the FOV reference plus the unprocessed baseline
/// (reference channel against the same reference).
EvalReport evaluate(const std::vector<std::string>& scene_dirs, Pipeline pipeline,
                    const FieldOfView& fov, const ZoomConfig& cfg);

/// One JSON object per utterance, then one aggregate line.
void write_report_jsonl(const std::string& path, const EvalReport& report);
void print_report(std::ostream& os, const EvalReport& report);

}  // namespace azoom
