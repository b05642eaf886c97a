// Copyright 2026 The audiozoom authors
// Scene rendering and sampling. Rendering is parallel across (source, mic)
// channels; the mixture is a fixed-order reduction so truth decomposition
// is exact.
//
// Licensed under the Apache License, Version 2.0

#include "azoom/scene.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "azoom/wav_io.hpp"
#include "binary_io.hpp"

namespace azoom {

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kTaps = 64;       // fractional-delay filter length
constexpr int kHalfTaps = 32;
constexpr int kRenderLead = kTaps;  // shared lead-in so sinc tails stay in range

double sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  return std::sin(kPi * x) / (kPi * x);
}

// Hann-windowed sinc delay kernel. Taps cover floor(D)-31 .. floor(D)+32.
struct DelayKernel {
  int n_start;
  std::array<double, kTaps> taps;
};

DelayKernel delay_kernel(double delay_samples) {
  DelayKernel k;
  k.n_start = int(std::floor(delay_samples)) - (kHalfTaps - 1);
  for (int i = 0; i < kTaps; ++i) {
    const double x = k.n_start + i - delay_samples;
    const double w = 0.5 * (1.0 + std::cos(kPi * x / kHalfTaps));
    k.taps[i] = sinc(x) * w;
  }
  return k;
}

struct Path {
  std::array<double, 3> src_pos;
  double amplitude;
};

std::array<double, 3> add(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

double distance(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

bool inside_room(const std::array<double, 3>& p, const ShoeboxRoom& room) {
  for (int i = 0; i < 3; ++i)
    if (p[i] <= 0.0 || p[i] >= room.size_m[i]) return false;
  return true;
}

// Direct path plus, when a room is set, the six first-order images.
std::vector<Path> source_paths(const SceneSource& src, const SceneSpec& spec,
                               const std::array<double, 3>& origin) {
  const auto u = src.direction.unit();
  const std::array<double, 3> pos =
      add(origin, {src.distance_m * u[0], src.distance_m * u[1], src.distance_m * u[2]});
  const double gain = std::pow(10.0, src.gain_db / 20.0);

  std::vector<Path> paths;
  paths.push_back({pos, gain});
  if (spec.room) {
    const ShoeboxRoom& room = *spec.room;
    for (int axis = 0; axis < 3; ++axis) {
      for (int wall = 0; wall < 2; ++wall) {
        std::array<double, 3> img = pos;
        img[axis] = wall == 0 ? -pos[axis] : 2.0 * room.size_m[axis] - pos[axis];
        paths.push_back({img, gain * room.beta});
      }
    }
  }
  return paths;
}

// Speech-like test signal: tilted noise with a per-syllable resonant
// emphasis, gated by an on/off envelope. The pauses and the wandering
// resonance give the time-frequency sparsity that masking relies on;
// two always-on flat noises would be inseparable by any mask.
std::vector<double> speech_like_burst_impl(Rng& rng, int num_samples, int sample_rate) {
  const int seg = std::max(1, sample_rate / 5);    // 200 ms "syllables"
  const int ramp = std::max(1, sample_rate / 100); // 10 ms level ramps
  const int num_segs = (num_samples + seg - 1) / seg;

  std::vector<double> levels(num_segs);
  std::vector<double> resonance_hz(num_segs);
  bool any_on = false;
  for (int s = 0; s < num_segs; ++s) {
    const bool on = rng.uniform() < 0.5;
    levels[s] = on ? rng.uniform(0.25, 1.0) : 0.0;
    resonance_hz[s] = rng.uniform(300.0, 3200.0);
    any_on = any_on || on;
  }
  if (!any_on) levels[0] = 1.0;

  std::vector<double> x(num_samples);
  const double pole = std::exp(-kTwoPi * 700.0 / sample_rate);   // broad tilt
  const double hp_pole = std::exp(-kTwoPi * 180.0 / sample_rate);  // sub-speech cutoff
  const double r = 0.99;                                         // formant-ish Q
  double lp = 0.0, hp = 0.0, prev_in = 0.0, y1 = 0.0, y2 = 0.0;
  double rms = 0.0;
  for (int i = 0; i < num_samples; ++i) {
    const int s = i / seg;
    const int into = i % seg;
    double env = levels[s];
    if (into < ramp) {
      const double prev = s > 0 ? levels[s - 1] : 0.0;
      const double t = 0.5 - 0.5 * std::cos(kPi * into / ramp);
      env = prev + (env - prev) * t;
    }
    const double w = rng.gaussian();
    lp = pole * lp + (1.0 - pole) * w;
    const double c = 2.0 * r * std::cos(kTwoPi * resonance_hz[s] / sample_rate);
    const double res = c * y1 - r * r * y2 + w;
    y2 = y1;
    y1 = res;
    const double colored = lp + 0.05 * res;
    hp = hp_pole * (hp + colored - prev_in);
    prev_in = colored;
    x[i] = env * hp;
    rms += x[i] * x[i];
  }
  rms = std::sqrt(rms / num_samples);
  const double gain = rms > 0.0 ? 0.1 / rms : 1.0;
  for (auto& v : x) v *= gain;
  return x;
}

SceneTruth render_impl(const SceneSpec& spec, bool parallel) {
  spec.validate();
  const ArrayGeometry& g = spec.geometry;
  const int num_mics = g.num_mics();
  const double fs = spec.sample_rate;

  std::array<double, 3> origin = {0.0, 0.0, 0.0};
  std::vector<std::array<double, 3>> mic_abs = g.mic_positions;
  if (spec.room) {
    origin = spec.room->array_origin;
    for (auto& p : mic_abs) p = add(p, origin);
    for (const auto& p : mic_abs)
      require(inside_room(p, *spec.room), "array does not fit inside the room");
  }

  // First pass: longest path decides the common signal length.
  size_t max_len = 0;
  double max_delay = 0.0;
  std::vector<std::vector<Path>> paths(spec.sources.size());
  for (size_t s = 0; s < spec.sources.size(); ++s) {
    paths[s] = source_paths(spec.sources[s], spec, origin);
    if (spec.room)
      require(inside_room(paths[s][0].src_pos, *spec.room), "source lies outside the room");
    max_len = std::max(max_len, spec.sources[s].wave.size());
    for (const auto& path : paths[s])
      for (const auto& mic : mic_abs)
        max_delay = std::max(max_delay, distance(path.src_pos, mic) / g.sound_speed * fs);
  }
  const size_t out_len = max_len + size_t(std::ceil(max_delay)) + kTaps + kRenderLead;

  SceneTruth truth;
  truth.reference_channel = spec.reference_channel;
  truth.geometry = spec.geometry;
  truth.source_images.assign(spec.sources.size(), MultichannelWave{});
  for (size_t s = 0; s < spec.sources.size(); ++s) {
    truth.source_images[s].sample_rate = spec.sample_rate;
    truth.source_images[s].channels.assign(num_mics, std::vector<double>(out_len, 0.0));
    truth.source_directions.push_back(spec.sources[s].direction);
  }

  const int jobs = int(spec.sources.size()) * num_mics;
#pragma omp parallel for schedule(static) if (parallel)
  for (int job = 0; job < jobs; ++job) {
    const int s = job / num_mics;
    const int m = job % num_mics;
    const std::vector<double>& src = spec.sources[s].wave;
    std::vector<double>& out = truth.source_images[s].channels[m];
    for (const Path& path : paths[s]) {
      const double dist = distance(path.src_pos, mic_abs[m]);
      const double amp = path.amplitude / dist;
      const DelayKernel k = delay_kernel(dist / g.sound_speed * fs);
      const int base = kRenderLead + k.n_start;
      for (size_t j = 0; j < src.size(); ++j) {
        const double v = amp * src[j];
        double* dst = &out[j + size_t(base)];
        for (int i = 0; i < kTaps; ++i) dst[i] += k.taps[i] * v;
      }
    }
  }

  // Noise image, scaled to the exact SNR against the summed source images
  // at the reference mic.
  truth.noise_image.sample_rate = spec.sample_rate;
  truth.noise_image.channels.assign(num_mics, std::vector<double>(out_len, 0.0));
  if (spec.noise.kind == NoiseSpec::Kind::white) {
    Rng rng(spec.noise.seed);
    for (int m = 0; m < num_mics; ++m)
      for (size_t i = 0; i < out_len; ++i) truth.noise_image.channels[m][i] = rng.gaussian();
  } else {
    require(!spec.noise.wave.empty(), "provided noise wave is empty");
    for (int m = 0; m < num_mics; ++m)
      for (size_t i = 0; i < out_len; ++i)
        truth.noise_image.channels[m][i] = spec.noise.wave[i % spec.noise.wave.size()];
  }

  const int ref = spec.reference_channel;
  double p_sig = 0.0, p_noise = 0.0;
  for (size_t i = 0; i < out_len; ++i) {
    double acc = 0.0;
    for (const auto& img : truth.source_images) acc += img.channels[ref][i];
    p_sig += acc * acc;
    p_noise += truth.noise_image.channels[ref][i] * truth.noise_image.channels[ref][i];
  }
  require(p_sig > 0.0, "sources render to silence at the reference mic");
  require(p_noise > 0.0, "noise is identically zero");
  const double scale =
      std::sqrt(p_sig / (p_noise * db_to_power_ratio(spec.noise.snr_db)));
  for (auto& ch : truth.noise_image.channels)
    for (auto& v : ch) v *= scale;

  truth.mixture.sample_rate = spec.sample_rate;
  truth.mixture.channels.assign(num_mics, std::vector<double>(out_len, 0.0));
  for (int m = 0; m < num_mics; ++m) {
    for (size_t i = 0; i < out_len; ++i) {
      double acc = 0.0;
      for (const auto& img : truth.source_images) acc += img.channels[m][i];
      truth.mixture.channels[m][i] = acc + truth.noise_image.channels[m][i];
    }
  }
  return truth;
}

}  // namespace

std::vector<double> speech_like_burst(Rng& rng, int num_samples, int sample_rate) {
  require(num_samples > 0 && sample_rate > 0, "burst length and rate must be positive");
  return speech_like_burst_impl(rng, num_samples, sample_rate);
}

void SceneSpec::validate() const {
  geometry.validate();
  require(sample_rate > 0, "sample rate must be positive");
  require(!sources.empty() && sources.size() <= 5, "scene needs 1 to 5 sources");
  require(noise.snr_db >= -20.0 && noise.snr_db <= 60.0, "SNR must be in [-20, 60] dB");
  require(reference_channel >= 0 && reference_channel < geometry.num_mics(),
          "reference channel out of range");
  const double hull = geometry.radius();
  for (const auto& s : sources) {
    require(s.distance_m > hull, "source must lie outside the array hull");
    require(!s.wave.empty(), "source wave is empty");
  }
  if (room) require(room->beta >= 0.0 && room->beta < 1.0, "reflection beta must be in [0, 1)");
}

SceneTruth render(const SceneSpec& spec) { return render_impl(spec, true); }

namespace serial {
SceneTruth render(const SceneSpec& spec) { return render_impl(spec, false); }
}

std::vector<double> fov_reference(const SceneTruth& truth, const FieldOfView& fov) {
  const size_t n = truth.mixture.num_samples();
  std::vector<double> ref(n, 0.0);
  for (size_t s = 0; s < truth.source_images.size(); ++s) {
    if (!fov.contains(truth.source_directions[s])) continue;
    const auto& ch = truth.source_images[s].channels[truth.reference_channel];
    for (size_t i = 0; i < n; ++i) ref[i] += ch[i];
  }
  return ref;
}

SceneSpec sample_scene(uint64_t seed, const SceneConstraints& c, const ArrayGeometry& geometry) {
  require(c.min_sources >= 1 && c.max_sources <= 5 && c.min_sources <= c.max_sources,
          "source count constraints must stay within 1..5");
  require(c.duration_s > 0.0 && c.sample_rate > 0, "invalid duration or sample rate");

  Rng rng(seed);
  SceneSpec spec;
  spec.geometry = geometry;
  spec.sample_rate = c.sample_rate;

  const int num_sources = rng.uniform_int(c.min_sources, c.max_sources);
  std::vector<Direction> dirs;
  for (int s = 0; s < num_sources; ++s) {
    bool placed = false;
    for (int attempt = 0; attempt < c.max_retries && !placed; ++attempt) {
      const Direction cand = Direction::of(rng.uniform(0.0, 360.0),
                                           rng.uniform(c.elevation_lo_deg, c.elevation_hi_deg));
      placed = true;
      for (const auto& d : dirs)
        if (angular_distance_deg(cand, d) < c.min_separation_deg) {
          placed = false;
          break;
        }
      if (placed) dirs.push_back(cand);
    }
    if (!placed)
      throw std::runtime_error("sample_scene: could not satisfy the separation constraint");
  }

  const int num_samples = int(std::lround(c.duration_s * c.sample_rate));
  for (const auto& d : dirs) {
    SceneSource src;
    src.direction = d;
    src.distance_m = rng.uniform(c.distance_lo_m, c.distance_hi_m);
    src.gain_db = rng.uniform(-6.0, 0.0);
    src.wave = speech_like_burst(rng, num_samples, c.sample_rate);
    spec.sources.push_back(std::move(src));
  }

  spec.noise.kind = NoiseSpec::Kind::white;
  spec.noise.snr_db = rng.uniform(c.snr_db_lo, c.snr_db_hi);
  spec.noise.seed = rng.next_u64();
  return spec;
}

SceneSpec load_scene_spec(const std::string& path, uint64_t seed,
                          const ArrayGeometry& geometry) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open scene file: " + path);
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("malformed scene file " + path + ": " + e.what());
  }

  if (j.contains("sample")) {
    const json& s = j["sample"];
    SceneConstraints c;
    c.min_sources = s.value("min_sources", c.min_sources);
    c.max_sources = s.value("max_sources", c.max_sources);
    c.min_separation_deg = s.value("min_separation_deg", c.min_separation_deg);
    c.snr_db_lo = s.value("snr_db_lo", c.snr_db_lo);
    c.snr_db_hi = s.value("snr_db_hi", c.snr_db_hi);
    c.elevation_lo_deg = s.value("elevation_lo_deg", c.elevation_lo_deg);
    c.elevation_hi_deg = s.value("elevation_hi_deg", c.elevation_hi_deg);
    c.distance_lo_m = s.value("distance_lo_m", c.distance_lo_m);
    c.distance_hi_m = s.value("distance_hi_m", c.distance_hi_m);
    c.duration_s = s.value("duration_s", c.duration_s);
    c.sample_rate = s.value("sample_rate", c.sample_rate);
    return sample_scene(seed, c, geometry);
  }

  SceneSpec spec;
  spec.geometry = geometry;
  spec.sample_rate = j.value("sample_rate", 16000);
  spec.reference_channel = j.value("reference_channel", 0);
  const double duration_s = j.value("duration_s", 1.0);

  Rng rng(seed);
  for (const auto& s : j.at("sources")) {
    SceneSource src;
    src.direction = Direction::of(s.at("azimuth_deg").get<double>(),
                                  s.value("elevation_deg", 0.0));
    src.distance_m = s.value("distance_m", 1.5);
    src.gain_db = s.value("gain_db", 0.0);
    if (s.contains("wav")) {
      const MultichannelWave w = read_wav(s["wav"].get<std::string>());
      src.wave = w.channels[0];
      require(w.sample_rate == spec.sample_rate,
              "source wav sample rate does not match the scene");
    } else {
      src.wave = speech_like_burst(rng, int(std::lround(duration_s * spec.sample_rate)),
                                   spec.sample_rate);
    }
    spec.sources.push_back(std::move(src));
  }

  if (j.contains("noise")) {
    const json& n = j["noise"];
    spec.noise.snr_db = n.value("snr_db", 20.0);
    const std::string kind = n.value("kind", "white");
    if (kind == "white") {
      spec.noise.kind = NoiseSpec::Kind::white;
    } else {
      spec.noise.kind = NoiseSpec::Kind::wave;
      spec.noise.wave = read_wav(kind).channels[0];
    }
  }
  spec.noise.seed = rng.next_u64();

  if (j.contains("room")) {
    const json& r = j["room"];
    ShoeboxRoom room;
    if (r.contains("size_m"))
      room.size_m = {r["size_m"].at(0).get<double>(), r["size_m"].at(1).get<double>(),
                     r["size_m"].at(2).get<double>()};
    room.beta = r.value("beta", room.beta);
    if (r.contains("array_origin"))
      room.array_origin = {r["array_origin"].at(0).get<double>(),
                           r["array_origin"].at(1).get<double>(),
                           r["array_origin"].at(2).get<double>()};
    spec.room = room;
  }
  return spec;
}

void write_scene(const std::string& dir, const SceneSpec& spec, const SceneTruth& truth,
                 uint64_t seed) {
  fs::create_directories(dir);
  const auto path = [&dir](const std::string& name) { return (fs::path(dir) / name).string(); };

  write_wav(path("mixture.wav"), truth.mixture);
  write_wav(path("noise.wav"), truth.noise_image);

  json manifest;
  manifest["seed"] = seed;
  manifest["sample_rate"] = spec.sample_rate;
  manifest["reference_channel"] = spec.reference_channel;
  manifest["snr_db"] = spec.noise.snr_db;
  manifest["mixture_file"] = "mixture.wav";
  manifest["noise_file"] = "noise.wav";
  manifest["geometry"]["index_base"] = 1;
  manifest["geometry"]["sound_speed"] = spec.geometry.sound_speed;
  for (const auto& p : spec.geometry.mic_positions)
    manifest["geometry"]["mic_positions"].push_back({p[0], p[1], p[2]});
  manifest["geometry"]["pairs"] = json::array();
  for (const auto& [m1, m2] : spec.geometry.pairs)
    manifest["geometry"]["pairs"].push_back({m1 + 1, m2 + 1});
  manifest["sources"] = json::array();
  for (size_t s = 0; s < spec.sources.size(); ++s) {
    const std::string file = "src_" + std::to_string(s) + ".wav";
    write_wav(path(file), truth.source_images[s]);
    manifest["sources"].push_back({{"azimuth_deg", spec.sources[s].direction.azimuth_deg},
                                   {"elevation_deg", spec.sources[s].direction.elevation_deg},
                                   {"distance_m", spec.sources[s].distance_m},
                                   {"gain_db", spec.sources[s].gain_db},
                                   {"file", file}});
  }
  detail::atomic_write(path("truth.json"),
                       [&](std::ostream& os) { os << manifest.dump(2) << '\n'; });
}

namespace {
json read_manifest(const std::string& dir) {
  std::ifstream is(fs::path(dir) / "truth.json");
  if (!is) throw std::runtime_error("missing truth manifest in " + dir);
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("malformed truth manifest in " + dir + ": " + e.what());
  }
  return j;
}
}  // namespace

SceneTruth read_scene(const std::string& dir) {
  const json j = read_manifest(dir);
  const auto path = [&dir](const std::string& name) { return (fs::path(dir) / name).string(); };

  SceneTruth truth;
  truth.reference_channel = j.value("reference_channel", 0);
  truth.seed = j.value("seed", uint64_t(0));
  truth.mixture = read_wav(path(j.at("mixture_file").get<std::string>()));
  truth.noise_image = read_wav(path(j.at("noise_file").get<std::string>()));
  for (const auto& s : j.at("sources")) {
    truth.source_images.push_back(read_wav(path(s.at("file").get<std::string>())));
    truth.source_directions.push_back(
        Direction::of(s.at("azimuth_deg").get<double>(), s.at("elevation_deg").get<double>()));
  }
  const json& g = j.at("geometry");
  const int base = g.value("index_base", 1);
  truth.geometry.sound_speed = g.value("sound_speed", 343.0);
  for (const auto& p : g.at("mic_positions"))
    truth.geometry.mic_positions.push_back(
        {p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>()});
  for (const auto& p : g.at("pairs"))
    truth.geometry.pairs.emplace_back(p.at(0).get<int>() - base, p.at(1).get<int>() - base);
  truth.geometry.validate();
  return truth;
}

std::vector<Direction> read_scene_directions(const std::string& dir) {
  const json j = read_manifest(dir);
  std::vector<Direction> dirs;
  for (const auto& s : j.at("sources"))
    dirs.push_back(
        Direction::of(s.at("azimuth_deg").get<double>(), s.at("elevation_deg").get<double>()));
  return dirs;
}

}  // namespace azoom
