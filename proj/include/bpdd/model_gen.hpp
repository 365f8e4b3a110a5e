#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace bpdd::model {

/// Raw i.i.d. standard-normal design, one sample per row.
struct RawDesign {
  Eigen::MatrixXd entries;  // n x p
  int n = 0;
  int p = 0;
};

/// Design with unit-norm columns plus the norms that were divided out.
struct NormalizedDesign {
  Eigen::MatrixXd columns;      // n x p, each column has l2 norm 1
  Eigen::VectorXd column_norms; // length p, strictly positive
  int n() const { return static_cast<int>(columns.rows()); }
  int p() const { return static_cast<int>(columns.cols()); }
};

/// Sparse ground truth in both coordinate systems. The scaled vector is the
/// one the normalized design actually multiplies; entrywise
/// beta_scaled[i] = column_norms[i]/sqrt(n) * beta_unscaled[i].
struct GroundTruth {
  int s = 0;
  Eigen::VectorXd beta_unscaled;  // support in the first s entries
  Eigen::VectorXd beta_scaled;
  double beta_norm = 0.0;  // l2 norm of beta_unscaled
};

enum class NoiseMode { gaussian_sigma, exact_norm };

struct NoiseVector {
  Eigen::VectorXd values;  // length n
  NoiseMode mode = NoiseMode::exact_norm;
  double level = 0.0;  // sigma (gaussian_sigma) or the exact l2 norm
};

struct TrainingSet {
  NormalizedDesign design;
  GroundTruth truth;
  NoiseVector noise;
  Eigen::VectorXd observations;  // design * beta_scaled + noise
  int n = 0;
  int p = 0;
  int s = 0;
};

/// n x p matrix of standard normal draws. Column j is stream
/// (seed, stream_id(design-tag, j)) of the Philox4x32-10 generator, so a
/// design generated with a larger p agrees column-for-column with the
/// smaller-p design (nested-design protocol).
RawDesign sample_design(int n, int p, std::uint64_t seed);

/// Divides each column by its l2 norm. Throws ZeroColumn on a vanishing
/// column (probability-zero event, treated as data corruption).
NormalizedDesign normalize(const RawDesign& raw);

/// Ground truth with uniformly random direction on the s-sphere, scaled to
/// beta_norm, then distorted entrywise into the normalized coordinates.
GroundTruth make_ground_truth(int p, int s, double beta_norm,
                              const Eigen::VectorXd& column_norms, int n,
                              std::uint64_t seed);

/// gaussian_sigma draws entries N(0, level^2/n); exact_norm draws a Gaussian
/// direction and rescales so the vector's l2 norm equals level exactly.
NoiseVector make_noise(int n, NoiseMode mode, double level, std::uint64_t seed);

TrainingSet assemble_training(const NormalizedDesign& design,
                              const GroundTruth& truth,
                              const NoiseVector& noise);

/// Maps a vector in normalized coordinates back to raw coordinates:
/// out[i] = sqrt(n) * w[i] / column_norms[i].
Eigen::VectorXd rescale_model(const Eigen::VectorXd& w,
                              const Eigen::VectorXd& column_norms, int n);

/// Full pipeline: design, truth and noise from disjoint streams of `seed`.
TrainingSet generate_training(int n, int p, int s, double beta_norm,
                              NoiseMode mode, double noise_level,
                              std::uint64_t seed);

}  // namespace bpdd::model
