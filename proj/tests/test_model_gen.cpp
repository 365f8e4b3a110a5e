#include "doctest.h"

#include <cmath>

#include "bpdd/errors.hpp"
#include "bpdd/model_gen.hpp"

using namespace bpdd;

TEST_CASE("sample_design is deterministic and pinned") {
  auto a = model::sample_design(2, 3, 42);
  auto b = model::sample_design(2, 3, 42);
  CHECK((a.entries - b.entries).cwiseAbs().maxCoeff() == 0.0);

  // Golden values frozen from the pinned generator
  // (philox4x32-10 + Box-Muller), seed 7.
  auto g = model::sample_design(2, 2, 7);
  CHECK(g.entries(0, 0) == -0.87753227411984647);
  CHECK(g.entries(0, 1) == 1.0503249353969781);
  CHECK(g.entries(1, 0) == 0.31519370845012024);
  CHECK(g.entries(1, 1) == -0.19235346040238063);
}

TEST_CASE("designs are column-nested across p") {
  auto narrow = model::sample_design(7, 4, 99);
  auto wide = model::sample_design(7, 11, 99);
  CHECK((wide.entries.leftCols(4) - narrow.entries).cwiseAbs().maxCoeff() ==
        0.0);
}

TEST_CASE("sample_design moments look standard normal") {
  auto raw = model::sample_design(1000, 1, 2024);
  const double mean = raw.entries.col(0).mean();
  const double var =
      (raw.entries.col(0).array() - mean).square().sum() / 999.0;
  CHECK(std::abs(mean) <= 4.0 / std::sqrt(1000.0));
  CHECK(std::abs(var - 1.0) <= 0.2);
}

TEST_CASE("normalize scales columns to unit norm and records norms") {
  model::RawDesign raw;
  raw.n = 2;
  raw.p = 2;
  raw.entries.resize(2, 2);
  raw.entries << 3.0, 1.0, 4.0, 0.0;
  auto design = model::normalize(raw);
  CHECK(design.columns(0, 0) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(design.columns(1, 0) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(design.column_norms[0] == doctest::Approx(5.0).epsilon(1e-15));
  // already-unit column stays put
  CHECK(design.columns(0, 1) == 1.0);
  CHECK(design.column_norms[1] == 1.0);
}

TEST_CASE("normalize rejects a zero column") {
  model::RawDesign raw;
  raw.n = 2;
  raw.p = 1;
  raw.entries = Eigen::MatrixXd::Zero(2, 1);
  CHECK_THROWS_AS(model::normalize(raw), ZeroColumn);
}

TEST_CASE("normalized columns have unit norm within 1e-12") {
  auto design = model::normalize(model::sample_design(3, 5, 11));
  for (int j = 0; j < 5; ++j)
    CHECK(std::abs(design.columns.col(j).norm() - 1.0) <= 1e-12);
}

TEST_CASE("ground truth respects sparsity, norm, and the scaling identity") {
  auto design = model::normalize(model::sample_design(6, 10, 3));

  auto t1 = model::make_ground_truth(10, 1, 1.0, design.column_norms, 6, 3);
  CHECK(std::abs(std::abs(t1.beta_unscaled[0]) - 1.0) <= 1e-12);
  for (int i = 1; i < 10; ++i) CHECK(t1.beta_unscaled[i] == 0.0);

  auto t2 = model::make_ground_truth(10, 2, 2.0, design.column_norms, 6, 3);
  CHECK(std::abs(t2.beta_unscaled.head(2).norm() - 2.0) <= 1e-12);
  for (int i = 2; i < 10; ++i) {
    CHECK(t2.beta_unscaled[i] == 0.0);
    CHECK(t2.beta_scaled[i] == 0.0);
  }
  // invert the entrywise distortion
  for (int i = 0; i < 10; ++i) {
    const double back =
        t2.beta_scaled[i] * std::sqrt(6.0) / design.column_norms[i];
    CHECK(back == doctest::Approx(t2.beta_unscaled[i]).epsilon(1e-12));
  }

  CHECK_THROWS_AS(
      model::make_ground_truth(10, 0, 1.0, design.column_norms, 6, 3),
      BadSparsity);
  CHECK_THROWS_AS(
      model::make_ground_truth(10, 11, 1.0, design.column_norms, 6, 3),
      BadSparsity);
}

TEST_CASE("noise modes") {
  auto exact = model::make_noise(50, model::NoiseMode::exact_norm, 0.01, 5);
  CHECK(std::abs(exact.values.norm() - 0.01) <= 1e-14);

  // ||eps||_2 concentrates around sigma for the gaussian mode
  int inside = 0;
  for (int trial = 0; trial < 50; ++trial) {
    auto g =
        model::make_noise(10000, model::NoiseMode::gaussian_sigma, 1.0, trial);
    const double norm = g.values.norm();
    if (norm >= 1.0 / std::sqrt(2.0) && norm <= std::sqrt(2.0)) ++inside;
  }
  CHECK(inside == 50);

  CHECK_THROWS_AS(model::make_noise(5, model::NoiseMode::exact_norm, 0.0, 1),
                  std::invalid_argument);
}

TEST_CASE("assemble_training builds consistent observations") {
  auto design = model::normalize(model::sample_design(4, 9, 77));
  auto truth = model::make_ground_truth(9, 2, 1.0, design.column_norms, 4, 77);
  auto noise = model::make_noise(4, model::NoiseMode::exact_norm, 0.05, 77);
  auto ts = model::assemble_training(design, truth, noise);
  const Eigen::VectorXd recomputed =
      design.columns * truth.beta_scaled + noise.values;
  CHECK((ts.observations - recomputed).cwiseAbs().maxCoeff() == 0.0);

  model::NoiseVector bad;
  bad.values = Eigen::VectorXd::Zero(3);
  CHECK_THROWS_AS(model::assemble_training(design, truth, bad),
                  DimensionMismatch);
}

TEST_CASE("observations reduce to c*X_1 for a single-column truth") {
  auto design = model::normalize(model::sample_design(5, 6, 8));
  model::GroundTruth truth;
  truth.s = 1;
  truth.beta_norm = 1.0;
  truth.beta_unscaled = Eigen::VectorXd::Zero(6);
  truth.beta_scaled = Eigen::VectorXd::Zero(6);
  truth.beta_scaled[0] = 0.37;
  model::NoiseVector zero_noise;
  zero_noise.values = Eigen::VectorXd::Zero(5);
  zero_noise.level = 1.0;
  auto ts = model::assemble_training(design, truth, zero_noise);
  CHECK((ts.observations - 0.37 * design.columns.col(0)).cwiseAbs().maxCoeff() <=
        1e-16);
}

TEST_CASE("rescale_model inverts the coordinate change") {
  auto design = model::normalize(model::sample_design(6, 8, 123));
  Eigen::VectorXd w = Eigen::VectorXd::LinSpaced(8, -1.0, 2.0);
  auto unscaled = model::rescale_model(w, design.column_norms, 6);
  for (int i = 0; i < 8; ++i) {
    const double forward =
        unscaled[i] * design.column_norms[i] / std::sqrt(6.0);
    CHECK(forward == doctest::Approx(w[i]).epsilon(1e-12));
  }
  Eigen::VectorXd norms = Eigen::VectorXd::Constant(8, std::sqrt(6.0));
  auto same = model::rescale_model(w, norms, 6);
  CHECK((same - w).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("full pipeline is a pure function of the seed") {
  auto a = model::generate_training(8, 20, 2, 1.0,
                                    model::NoiseMode::exact_norm, 0.01, 31);
  auto b = model::generate_training(8, 20, 2, 1.0,
                                    model::NoiseMode::exact_norm, 0.01, 31);
  CHECK((a.observations - b.observations).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.design.columns - b.design.columns).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.truth.beta_scaled - b.truth.beta_scaled).cwiseAbs().maxCoeff() ==
        0.0);
}

TEST_CASE("column norm concentration matches the two-sided chi-square event") {
  // empirical frequency of ||H_i||^2 in [n/2, 2n] above 0.999 over 1e4
  // columns at n >= 100
  const int n = 100, p = 10000;
  auto raw = model::sample_design(n, p, 404);
  int inside = 0;
  for (int j = 0; j < p; ++j) {
    const double sq = raw.entries.col(j).squaredNorm();
    if (sq >= n / 2.0 && sq <= 2.0 * n) ++inside;
  }
  CHECK(double(inside) / p > 0.999);
}
