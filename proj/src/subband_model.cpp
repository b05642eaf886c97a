// Copyright 2026 The audiozoom authors
// Forward pass: sequential mask stage, then an embarrassingly parallel
// per-frequency subband stage (one shared cell, no cross-band state).
//
// Licensed under the Apache License, Version 2.0

#include "azoom/subband_model.hpp"

#include <cmath>
#include <fstream>

#include "azoom/metrics.hpp"
#include "binary_io.hpp"

namespace azoom {

namespace {

constexpr uint32_t kWeightsVersion = 1;
constexpr double kLeakySlope = 0.01;
constexpr double kNormEps = 1e-5;

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void gru_step(const GruWeights& g, const Eigen::VectorXd& x, Eigen::VectorXd& h,
              Eigen::VectorXd& gates_i, Eigen::VectorXd& gates_h) {
  const int hidden = int(h.size());
  gates_i.noalias() = g.w_ih * x;
  gates_i += g.b_ih;
  gates_h.noalias() = g.w_hh * h;
  gates_h += g.b_hh;
  for (int i = 0; i < hidden; ++i) {
    const double r = sigmoid(gates_i(i) + gates_h(i));
    const double z = sigmoid(gates_i(hidden + i) + gates_h(hidden + i));
    const double n = std::tanh(gates_i(2 * hidden + i) + r * gates_h(2 * hidden + i));
    h(i) = (1.0 - z) * n + z * h(i);
  }
}

struct TensorRef {
  const char* name;
  Eigen::MatrixXd* mat;   // one of mat/vec is set
  Eigen::VectorXd* vec;
  int rows, cols;         // expected shape (cols 1 for vectors)
  int fan_in;             // init bound 1/sqrt(fan_in)
  enum class Init { uniform, one, zero } init;
};

// Fixed tensor order shared by the file format and the seeded init.
std::vector<TensorRef> tensor_table(ModelWeights& w) {
  const int f = w.bins();
  const int in = w.feature_bins();
  const int h1 = w.mask_hidden;
  const int h2 = w.subband_hidden;
  const int e = w.embed_dim;
  const int ch = 4 * w.num_mics;
  using I = TensorRef::Init;
  return {
      {"mask_gru.w_ih", &w.mask_gru.w_ih, nullptr, 3 * h1, in, in, I::uniform},
      {"mask_gru.w_hh", &w.mask_gru.w_hh, nullptr, 3 * h1, h1, h1, I::uniform},
      {"mask_gru.b_ih", nullptr, &w.mask_gru.b_ih, 3 * h1, 1, h1, I::uniform},
      {"mask_gru.b_hh", nullptr, &w.mask_gru.b_hh, 3 * h1, 1, h1, I::uniform},
      {"head_in_re.w", &w.head_in_re.w, nullptr, f, h1, h1, I::uniform},
      {"head_in_re.b", nullptr, &w.head_in_re.b, f, 1, h1, I::uniform},
      {"head_in_im.w", &w.head_in_im.w, nullptr, f, h1, h1, I::uniform},
      {"head_in_im.b", nullptr, &w.head_in_im.b, f, 1, h1, I::uniform},
      {"head_out_re.w", &w.head_out_re.w, nullptr, f, h1, h1, I::uniform},
      {"head_out_re.b", nullptr, &w.head_out_re.b, f, 1, h1, I::uniform},
      {"head_out_im.w", &w.head_out_im.w, nullptr, f, h1, h1, I::uniform},
      {"head_out_im.b", nullptr, &w.head_out_im.b, f, 1, h1, I::uniform},
      {"norm.gain", nullptr, &w.norm_gain, ch, 1, ch, I::one},
      {"norm.bias", nullptr, &w.norm_bias, ch, 1, ch, I::zero},
      {"projection.w", &w.projection.w, nullptr, e, ch, ch, I::uniform},
      {"projection.b", nullptr, &w.projection.b, e, 1, ch, I::uniform},
      {"subband_gru.w_ih", &w.subband_gru.w_ih, nullptr, 3 * h2, e, e, I::uniform},
      {"subband_gru.w_hh", &w.subband_gru.w_hh, nullptr, 3 * h2, h2, h2, I::uniform},
      {"subband_gru.b_ih", nullptr, &w.subband_gru.b_ih, 3 * h2, 1, h2, I::uniform},
      {"subband_gru.b_hh", nullptr, &w.subband_gru.b_hh, 3 * h2, 1, h2, I::uniform},
      {"subband_head.w", &w.subband_head.w, nullptr, 2 * w.num_mics, h2, h2, I::uniform},
      {"subband_head.b", nullptr, &w.subband_head.b, 2 * w.num_mics, 1, h2, I::uniform},
  };
}

ModelWeights make_dims(int fft_size, int num_mics, int mask_hidden, int subband_hidden,
                       int embed_dim) {
  require(fft_size > 0 && fft_size % 2 == 0, "fft_size must be even and positive");
  require(num_mics >= 1 && mask_hidden >= 1 && subband_hidden >= 1 && embed_dim >= 1,
          "model dimensions must be positive");
  ModelWeights w;
  w.fft_size = fft_size;
  w.num_mics = num_mics;
  w.mask_hidden = mask_hidden;
  w.subband_hidden = subband_hidden;
  w.embed_dim = embed_dim;
  return w;
}

ModelOutput forward_impl(const std::vector<Spectrogram>& specs, const FeatureMap& features,
                         const ModelWeights& w, bool parallel) {
  w.validate();
  require(int(specs.size()) == w.num_mics, "channel count must match the model");
  for (const auto& s : specs)
    require(s.frames == specs[0].frames && s.bins == specs[0].bins,
            "spectrogram shapes must match");
  require(specs[0].bins == w.bins(), "spectrogram bins must match the model fft_size");
  require(features.frames == specs[0].frames, "feature frames must match the input");
  require(features.bins == w.feature_bins(),
          "model input must be T x 3F (lps + concatenated FOV feature)");

  const int frames = specs[0].frames;
  const int bins = w.bins();
  const int m = w.num_mics;
  const int h1 = w.mask_hidden;

  ModelOutput out;
  out.frames = frames;
  out.bins = bins;
  out.num_mics = m;
  out.mask_in.resize(size_t(frames) * bins);
  out.mask_out.resize(size_t(frames) * bins);
  out.filters.assign(size_t(bins) * frames * m, {0.0, 0.0});

  // Mask stage: causal recurrence over frames with the four linear heads
  // evaluated per frame. Frame-local matrix-vector products keep the
  // arithmetic order independent of the total frame count, so truncating
  // the input reproduces the leading frames bit for bit.
  {
    Eigen::VectorXd h = Eigen::VectorXd::Zero(h1);
    Eigen::VectorXd x(w.feature_bins());
    Eigen::VectorXd gi(3 * h1), gh(3 * h1);
    Eigen::VectorXd in_re(bins), in_im(bins), out_re(bins), out_im(bins);
    for (int t = 0; t < frames; ++t) {
      for (int i = 0; i < w.feature_bins(); ++i) x(i) = features.at(t, i);
      gru_step(w.mask_gru, x, h, gi, gh);
      in_re.noalias() = w.head_in_re.w * h;
      in_im.noalias() = w.head_in_im.w * h;
      out_re.noalias() = w.head_out_re.w * h;
      out_im.noalias() = w.head_out_im.w * h;
      for (int f = 0; f < bins; ++f) {
        out.mask_in[size_t(t) * bins + f] = {in_re(f) + w.head_in_re.b(f),
                                             in_im(f) + w.head_in_im.b(f)};
        out.mask_out[size_t(t) * bins + f] = {out_re(f) + w.head_out_re.b(f),
                                              out_im(f) + w.head_out_im.b(f)};
      }
    }
  }

  // Subband stage, independent per frequency: mask the per-mic spectra,
  // stack [Re Yin | Im Yin | Re Yout | Im Yout] (4M channels), layer-norm
  // over the channel axis, project to the embedding, then run the shared
  // cell across frames and emit complex filter weights.
  out.s_hat = specs[0];

#pragma omp parallel for schedule(static) if (parallel)
  for (int f = 0; f < bins; ++f) {
    Eigen::VectorXd phi(4 * m);
    Eigen::VectorXd h = Eigen::VectorXd::Zero(w.subband_hidden);
    Eigen::VectorXd gi(3 * w.subband_hidden), gh(3 * w.subband_hidden);
    Eigen::VectorXd embed(w.embed_dim);
    Eigen::VectorXd head(2 * m);

    for (int t = 0; t < frames; ++t) {
      const std::complex<double> min = out.mask_in[size_t(t) * bins + f];
      const std::complex<double> mout = out.mask_out[size_t(t) * bins + f];
      for (int mic = 0; mic < m; ++mic) {
        const std::complex<double> y = specs[mic].at(t, f);
        const std::complex<double> yin = min * y;
        const std::complex<double> yout = mout * y;
        phi(mic) = yin.real();
        phi(m + mic) = yin.imag();
        phi(2 * m + mic) = yout.real();
        phi(3 * m + mic) = yout.imag();
      }

      const double mean = phi.mean();
      const double var = (phi.array() - mean).square().mean();
      const double inv_std = 1.0 / std::sqrt(var + kNormEps);
      phi = ((phi.array() - mean) * inv_std) * w.norm_gain.array() + w.norm_bias.array();

      embed.noalias() = w.projection.w * phi;
      embed += w.projection.b;
      for (int i = 0; i < w.embed_dim; ++i)
        if (embed(i) < 0.0) embed(i) *= kLeakySlope;

      gru_step(w.subband_gru, embed, h, gi, gh);
      head.noalias() = w.subband_head.w * h;
      head += w.subband_head.b;

      std::complex<double> acc{0.0, 0.0};
      for (int mic = 0; mic < m; ++mic) {
        const std::complex<double> wf{head(mic), head(m + mic)};
        out.filters[(size_t(f) * frames + t) * m + mic] = wf;
        acc += std::conj(wf) * specs[mic].at(t, f);
      }
      out.s_hat.at(t, f) = acc;
    }
  }
  return out;
}

}  // namespace

size_t ModelWeights::parameter_count() const {
  size_t count = 0;
  auto table = tensor_table(const_cast<ModelWeights&>(*this));
  for (const auto& t : table) count += size_t(t.rows) * size_t(t.cols);
  return count;
}

void ModelWeights::validate() const {
  auto table = tensor_table(const_cast<ModelWeights&>(*this));
  for (const auto& t : table) {
    const int rows = t.mat ? int(t.mat->rows()) : int(t.vec->size());
    const int cols = t.mat ? int(t.mat->cols()) : 1;
    require(rows == t.rows && cols == t.cols,
            std::string("model weight tensor has wrong shape: ") + t.name);
  }
}

ModelWeights seeded_weights(uint64_t seed, int fft_size, int num_mics, int mask_hidden,
                            int subband_hidden, int embed_dim) {
  ModelWeights w = make_dims(fft_size, num_mics, mask_hidden, subband_hidden, embed_dim);
  Rng rng(seed);
  for (auto& t : tensor_table(w)) {
    const double bound = 1.0 / std::sqrt(double(std::max(1, t.fan_in)));
    if (t.mat) {
      t.mat->resize(t.rows, t.cols);
      for (int r = 0; r < t.rows; ++r)
        for (int c = 0; c < t.cols; ++c)
          (*t.mat)(r, c) = t.init == TensorRef::Init::uniform ? rng.uniform(-bound, bound)
                           : t.init == TensorRef::Init::one   ? 1.0
                                                              : 0.0;
    } else {
      t.vec->resize(t.rows);
      for (int r = 0; r < t.rows; ++r)
        (*t.vec)(r) = t.init == TensorRef::Init::uniform ? rng.uniform(-bound, bound)
                      : t.init == TensorRef::Init::one   ? 1.0
                                                         : 0.0;
    }
  }
  return w;
}

ModelWeights zero_weights(int fft_size, int num_mics, int mask_hidden, int subband_hidden,
                          int embed_dim) {
  ModelWeights w = make_dims(fft_size, num_mics, mask_hidden, subband_hidden, embed_dim);
  for (auto& t : tensor_table(w)) {
    if (t.mat)
      t.mat->setZero(t.rows, t.cols);
    else
      t.vec->setZero(t.rows);
  }
  return w;
}

void save_weights(const std::string& path, const ModelWeights& weights) {
  weights.validate();
  auto table = tensor_table(const_cast<ModelWeights&>(weights));
  detail::atomic_write(path, [&](std::ostream& os) {
    detail::write_bytes(os, "AZWT", 4);
    detail::write_le<uint32_t>(os, kWeightsVersion);
    detail::write_le<uint32_t>(os, uint32_t(weights.fft_size));
    detail::write_le<uint32_t>(os, uint32_t(weights.num_mics));
    detail::write_le<uint32_t>(os, uint32_t(weights.mask_hidden));
    detail::write_le<uint32_t>(os, uint32_t(weights.subband_hidden));
    detail::write_le<uint32_t>(os, uint32_t(weights.embed_dim));
    detail::write_le<uint32_t>(os, uint32_t(table.size()));
    for (const auto& t : table) {
      const std::string name = t.name;
      detail::write_le<uint32_t>(os, uint32_t(name.size()));
      detail::write_bytes(os, name.data(), name.size());
      detail::write_le<uint32_t>(os, uint32_t(t.rows));
      detail::write_le<uint32_t>(os, uint32_t(t.cols));
      for (int r = 0; r < t.rows; ++r)
        for (int c = 0; c < t.cols; ++c)
          detail::write_le<double>(os, t.mat ? (*t.mat)(r, c) : (*t.vec)(r));
    }
  });
}

ModelWeights load_weights(const std::string& path) {
  detail::check_little_endian();
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open weights file: " + path);

  char magic[4];
  detail::read_bytes(is, magic, 4);
  if (std::string(magic, 4) != "AZWT")
    throw std::runtime_error("not a weights file: " + path);
  if (detail::read_le<uint32_t>(is) != kWeightsVersion)
    throw std::runtime_error("unsupported weights version in " + path);

  const int fft_size = int(detail::read_le<uint32_t>(is));
  const int num_mics = int(detail::read_le<uint32_t>(is));
  const int mask_hidden = int(detail::read_le<uint32_t>(is));
  const int subband_hidden = int(detail::read_le<uint32_t>(is));
  const int embed_dim = int(detail::read_le<uint32_t>(is));
  ModelWeights w = make_dims(fft_size, num_mics, mask_hidden, subband_hidden, embed_dim);

  auto table = tensor_table(w);
  const uint32_t count = detail::read_le<uint32_t>(is);
  require(count == table.size(), "weights file tensor count does not match the manifest");
  for (auto& t : table) {
    const uint32_t name_len = detail::read_le<uint32_t>(is);
    std::string name(name_len, '\0');
    detail::read_bytes(is, name.data(), name_len);
    if (name != t.name)
      throw std::runtime_error("unexpected tensor '" + name + "' (expected '" + t.name + "')");
    const int rows = int(detail::read_le<uint32_t>(is));
    const int cols = int(detail::read_le<uint32_t>(is));
    require(rows == t.rows && cols == t.cols, "tensor shape mismatch in " + name);
    if (t.mat) t.mat->resize(rows, cols);
    else t.vec->resize(rows);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) {
        const double v = detail::read_le<double>(is);
        if (t.mat) (*t.mat)(r, c) = v;
        else (*t.vec)(r) = v;
      }
  }
  return w;
}

ModelOutput forward(const std::vector<Spectrogram>& specs, const FeatureMap& features,
                    const ModelWeights& weights) {
  return forward_impl(specs, features, weights, true);
}

namespace serial {
ModelOutput forward(const std::vector<Spectrogram>& specs, const FeatureMap& features,
                    const ModelWeights& weights) {
  return forward_impl(specs, features, weights, false);
}
}  // namespace serial

FeatureMap stack_model_features(const FeatureMap& lps_map, const FeatureMap& fused_concat) {
  require(lps_map.frames == fused_concat.frames, "feature frame counts must match");
  require(fused_concat.bins == 2 * lps_map.bins,
          "fused feature must be the T x 2F concatenated variant");
  FeatureMap out = FeatureMap::zeros(lps_map.frames, 3 * lps_map.bins, FeatureKind::fused);
  for (int t = 0; t < out.frames; ++t) {
    for (int f = 0; f < lps_map.bins; ++f) out.at(t, f) = lps_map.at(t, f);
    for (int f = 0; f < fused_concat.bins; ++f)
      out.at(t, lps_map.bins + f) = fused_concat.at(t, f);
  }
  return out;
}

double model_loss(const std::vector<double>& est_wave, const std::vector<double>& ref_wave,
                  const Spectrogram& est_spec, const Spectrogram& ref_spec, double lambda) {
  require(est_wave.size() == ref_wave.size(), "waveform lengths must match");
  require(est_spec.frames == ref_spec.frames && est_spec.bins == ref_spec.bins,
          "spectrogram shapes must match");
  const double si = si_sdr(est_wave, ref_wave);
  double mag_l1 = 0.0;
  for (size_t i = 0; i < est_spec.data.size(); ++i)
    mag_l1 += std::abs(std::abs(est_spec.data[i]) - std::abs(ref_spec.data[i]));
  mag_l1 /= double(est_spec.data.size());
  return -si + lambda * mag_l1;
}

}  // namespace azoom
