#include "bpdd/model_gen.hpp"

#include <cmath>
#include <stdexcept>

#include "bpdd/errors.hpp"
#include "bpdd/rng.hpp"
#include "bpdd/tolerances.hpp"

namespace bpdd::model {

namespace {

// Stream tags keeping design, ground truth and noise on disjoint substreams
// of one instance seed.
constexpr std::uint64_t kTagDesign = 0x01;
constexpr std::uint64_t kTagBeta = 0x02;
constexpr std::uint64_t kTagNoise = 0x03;

}  // namespace

RawDesign sample_design(int n, int p, std::uint64_t seed) {
  if (n < 1 || p < 1) throw std::invalid_argument("sample_design: n, p >= 1");
  RawDesign raw;
  raw.n = n;
  raw.p = p;
  raw.entries.resize(n, p);
  for (int j = 0; j < p; ++j) {
    rng::GaussianStream stream(seed, rng::stream_id(kTagDesign, static_cast<std::uint64_t>(j)));
    stream.fill(0, static_cast<std::uint64_t>(n), raw.entries.col(j).data());
  }
  return raw;
}

NormalizedDesign normalize(const RawDesign& raw) {
  NormalizedDesign out;
  out.columns = raw.entries;
  out.column_norms.resize(raw.p);
  for (int j = 0; j < raw.p; ++j) {
    const double norm = out.columns.col(j).norm();
    if (norm < default_tolerances().zero_column)
      throw ZeroColumn("normalize: column " + std::to_string(j) + " is zero");
    out.column_norms[j] = norm;
    out.columns.col(j) /= norm;
  }
  return out;
}

GroundTruth make_ground_truth(int p, int s, double beta_norm,
                              const Eigen::VectorXd& column_norms, int n,
                              std::uint64_t seed) {
  if (s < 1 || s > p) throw BadSparsity("make_ground_truth: need 1 <= s <= p");
  if (beta_norm <= 0.0)
    throw std::invalid_argument("make_ground_truth: beta_norm > 0");
  if (column_norms.size() != p)
    throw DimensionMismatch("make_ground_truth: column_norms length != p");

  rng::GaussianStream stream(seed, rng::stream_id(kTagBeta));
  Eigen::VectorXd direction(s);
  double norm = 0.0;
  std::uint64_t offset = 0;
  do {  // zero draw has probability zero; retry keeps the map total
    stream.fill(offset, static_cast<std::uint64_t>(s), direction.data());
    norm = direction.norm();
    offset += static_cast<std::uint64_t>(s);
  } while (norm == 0.0);

  GroundTruth truth;
  truth.s = s;
  truth.beta_norm = beta_norm;
  truth.beta_unscaled = Eigen::VectorXd::Zero(p);
  truth.beta_unscaled.head(s) = direction * (beta_norm / norm);
  truth.beta_scaled = Eigen::VectorXd::Zero(p);
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < s; ++i)
    truth.beta_scaled[i] = column_norms[i] * inv_sqrt_n * truth.beta_unscaled[i];
  return truth;
}

NoiseVector make_noise(int n, NoiseMode mode, double level, std::uint64_t seed) {
  if (level <= 0.0) throw std::invalid_argument("make_noise: level > 0");
  rng::GaussianStream stream(seed, rng::stream_id(kTagNoise));
  NoiseVector noise;
  noise.mode = mode;
  noise.level = level;
  noise.values.resize(n);

  if (mode == NoiseMode::gaussian_sigma) {
    stream.fill(0, static_cast<std::uint64_t>(n), noise.values.data());
    noise.values *= level / std::sqrt(static_cast<double>(n));
    return noise;
  }

  double norm = 0.0;
  std::uint64_t offset = 0;
  do {
    stream.fill(offset, static_cast<std::uint64_t>(n), noise.values.data());
    norm = noise.values.norm();
    offset += static_cast<std::uint64_t>(n);
  } while (norm == 0.0);
  noise.values *= level / norm;
  return noise;
}

TrainingSet assemble_training(const NormalizedDesign& design,
                              const GroundTruth& truth,
                              const NoiseVector& noise) {
  const int n = design.n();
  const int p = design.p();
  if (truth.beta_scaled.size() != p)
    throw DimensionMismatch("assemble_training: truth length != p");
  if (noise.values.size() != n)
    throw DimensionMismatch("assemble_training: noise length != n");

  TrainingSet ts;
  ts.design = design;
  ts.truth = truth;
  ts.noise = noise;
  ts.n = n;
  ts.p = p;
  ts.s = truth.s;
  ts.observations = design.columns * truth.beta_scaled + noise.values;
  return ts;
}

Eigen::VectorXd rescale_model(const Eigen::VectorXd& w,
                              const Eigen::VectorXd& column_norms, int n) {
  if (w.size() != column_norms.size())
    throw DimensionMismatch("rescale_model: length mismatch");
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  return (w.array() * (sqrt_n / column_norms.array())).matrix();
}

TrainingSet generate_training(int n, int p, int s, double beta_norm,
                              NoiseMode mode, double noise_level,
                              std::uint64_t seed) {
  NormalizedDesign design = normalize(sample_design(n, p, seed));
  GroundTruth truth =
      make_ground_truth(p, s, beta_norm, design.column_norms, n, seed);
  NoiseVector noise = make_noise(n, mode, noise_level, seed);
  return assemble_training(design, truth, noise);
}

}  // namespace bpdd::model
