#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "bpdd/errors.hpp"
#include "bpdd/model_gen.hpp"
#include "bpdd/simplex.hpp"

using namespace bpdd;
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Independent oracle: enumerate all basis subsets, solve the square systems,
// and take the best feasible basic solution. Nonnegative variables only.
double enumerate_basic_min(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                           const Eigen::VectorXd& c) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  double best = kInf;
  std::vector<int> idx(m);
  for (int i = 0; i < m; ++i) idx[i] = i;
  for (;;) {
    Eigen::MatrixXd B(m, m);
    for (int i = 0; i < m; ++i) B.col(i) = A.col(idx[i]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
    if (lu.isInvertible()) {
      Eigen::VectorXd xb = lu.solve(b);
      if ((B * xb - b).cwiseAbs().maxCoeff() <= 1e-9 &&
          xb.minCoeff() >= -1e-10) {
        double obj = 0.0;
        for (int i = 0; i < m; ++i) obj += c[idx[i]] * std::max(xb[i], 0.0);
        best = std::min(best, obj);
      }
    }
    int pos = m - 1;
    while (pos >= 0 && idx[pos] == n - m + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < m; ++i) idx[i] = idx[i - 1] + 1;
  }
  return best;
}

}  // namespace

TEST_CASE("one-variable LP") {
  lp::LinearProgram prob;
  prob.objective = Eigen::VectorXd::Ones(1);
  prob.equality_matrix = Eigen::MatrixXd::Ones(1, 1);
  prob.equality_rhs = Eigen::VectorXd::Ones(1);
  prob.lower_bounds = Eigen::VectorXd::Zero(1);
  prob.upper_bounds = Eigen::VectorXd::Constant(1, kInf);
  auto res = lp::lp_solve(prob);
  REQUIRE(res.status == lp::Status::optimal);
  CHECK(res.solution[0] == doctest::Approx(1.0));
  CHECK(res.objective_value == doctest::Approx(1.0));
  CHECK(res.dual_multipliers[0] == doctest::Approx(1.0));
}

TEST_CASE("infeasible system is reported as a status") {
  // x + y = 1, x + y = -1 with x,y >= 0 encoded as two rows
  lp::LinearProgram prob;
  prob.objective = Eigen::VectorXd::Zero(2);
  prob.equality_matrix.resize(2, 2);
  prob.equality_matrix << 1, 1, 1, 1;
  prob.equality_rhs.resize(2);
  prob.equality_rhs << 1, -1;
  prob.lower_bounds = Eigen::VectorXd::Zero(2);
  prob.upper_bounds = Eigen::VectorXd::Constant(2, kInf);
  auto res = lp::lp_solve(prob);
  CHECK(res.status == lp::Status::infeasible);
}

TEST_CASE("unbounded ray is reported as a status") {
  // max x s.t. x - y = 0, x,y >= 0  -> ray along (1,1)
  lp::LinearProgram prob;
  prob.objective.resize(2);
  prob.objective << 1, 0;
  prob.equality_matrix.resize(1, 2);
  prob.equality_matrix << 1, -1;
  prob.equality_rhs = Eigen::VectorXd::Zero(1);
  prob.lower_bounds = Eigen::VectorXd::Zero(2);
  prob.upper_bounds = Eigen::VectorXd::Constant(2, kInf);
  prob.sense = lp::LinearProgram::Sense::maximize;
  auto res = lp::lp_solve(prob);
  CHECK(res.status == lp::Status::unbounded);
}

TEST_CASE("upper bounds and bound flips") {
  // min -x1 - 2 x2 s.t. x1 + x2 + slack = 3, 0 <= x1 <= 2, 0 <= x2 <= 2.
  lp::LinearProgram prob;
  prob.objective.resize(3);
  prob.objective << -1, -2, 0;
  prob.equality_matrix.resize(1, 3);
  prob.equality_matrix << 1, 1, 1;
  prob.equality_rhs = Eigen::VectorXd::Constant(1, 3.0);
  prob.lower_bounds = Eigen::VectorXd::Zero(3);
  prob.upper_bounds.resize(3);
  prob.upper_bounds << 2, 2, kInf;
  auto res = lp::lp_solve(prob);
  REQUIRE(res.status == lp::Status::optimal);
  CHECK(res.objective_value == doctest::Approx(-5.0));  // x2=2, x1=1
  CHECK(res.solution[0] == doctest::Approx(1.0));
  CHECK(res.solution[1] == doctest::Approx(2.0));
}

TEST_CASE("free variables via the maximize sense") {
  // max y s.t. y + s1 = 1, -y + s2 = 1, slacks >= 0, y free -> y = 1.
  lp::LinearProgram prob;
  prob.objective.resize(3);
  prob.objective << 1, 0, 0;
  prob.equality_matrix.resize(2, 3);
  prob.equality_matrix << 1, 1, 0, -1, 0, 1;
  prob.equality_rhs = Eigen::VectorXd::Ones(2);
  prob.lower_bounds.resize(3);
  prob.lower_bounds << -kInf, 0, 0;
  prob.upper_bounds = Eigen::VectorXd::Constant(3, kInf);
  prob.sense = lp::LinearProgram::Sense::maximize;
  auto res = lp::lp_solve(prob);
  REQUIRE(res.status == lp::Status::optimal);
  CHECK(res.objective_value == doctest::Approx(1.0));
  CHECK(res.solution[0] == doctest::Approx(1.0));
}

TEST_CASE("random systems match the basic-solution enumeration oracle") {
  for (int trial = 0; trial < 25; ++trial) {
    auto raw = model::sample_design(3, 8, 5000 + trial);
    Eigen::MatrixXd A = raw.entries;
    // force feasibility: b is a nonnegative combination of three columns
    Eigen::VectorXd b =
        0.7 * A.col(1) + 0.2 * A.col(4) + 1.1 * A.col(6);
    Eigen::VectorXd c(8);
    for (int j = 0; j < 8; ++j)
      c[j] = 1.0 + 0.1 * std::sin(double(3 * trial + j));

    lp::LinearProgram prob;
    prob.objective = c;
    prob.equality_matrix = A;
    prob.equality_rhs = b;
    prob.lower_bounds = Eigen::VectorXd::Zero(8);
    prob.upper_bounds = Eigen::VectorXd::Constant(8, kInf);
    auto res = lp::lp_solve(prob);
    REQUIRE(res.status == lp::Status::optimal);
    const double oracle = enumerate_basic_min(A, b, c);
    CHECK(res.objective_value == doctest::Approx(oracle).epsilon(1e-9));
    CHECK(res.primal_residual <= 1e-8 * (1.0 + b.norm()));
    CHECK(res.duality_gap <= 1e-7 * (1.0 + std::abs(res.objective_value)));
  }
}

TEST_CASE("deterministic: identical input gives identical iterations") {
  auto raw = model::sample_design(4, 12, 909);
  Eigen::VectorXd b = raw.entries.col(0) - 2.0 * raw.entries.col(5);
  lp::LinearProgram prob;
  prob.objective = Eigen::VectorXd::Ones(12);
  prob.equality_matrix = raw.entries;
  prob.equality_rhs = b;
  prob.lower_bounds = Eigen::VectorXd::Zero(12);
  prob.upper_bounds = Eigen::VectorXd::Constant(12, kInf);
  auto r1 = lp::lp_solve(prob);
  auto r2 = lp::lp_solve(prob);
  CHECK(r1.iterations == r2.iterations);
  CHECK(r1.objective_value == r2.objective_value);
  CHECK((r1.solution - r2.solution).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("warm basis proposal is honored when sound") {
  auto raw = model::sample_design(3, 6, 31);
  Eigen::VectorXd b = raw.entries.col(0) + raw.entries.col(2);
  lp::SimplexProblem sp;
  sp.cols = lp::ColumnView{raw.entries.data(), 3,
                           static_cast<int>(raw.entries.outerStride()), 6};
  sp.rhs = b;
  for (int j = 0; j < 6; ++j) sp.vars.push_back({j, 1.0, 0.0, kInf, 1.0});
  sp.initial_basis = {0, 2, 4};
  auto warm = lp::simplex_solve(sp);
  REQUIRE(warm.status == lp::Status::optimal);
  sp.initial_basis.clear();
  auto cold = lp::simplex_solve(sp);
  CHECK(warm.objective_value ==
        doctest::Approx(cold.objective_value).epsilon(1e-9));
  CHECK(warm.objective_value <= 2.0 + 1e-9);  // e0 + e2 is feasible
}

TEST_CASE("input validation") {
  lp::LinearProgram prob;
  prob.objective = Eigen::VectorXd::Ones(2);
  prob.equality_matrix = Eigen::MatrixXd::Ones(1, 2);
  prob.equality_rhs = Eigen::VectorXd::Ones(1);
  prob.lower_bounds = Eigen::VectorXd::Ones(2);
  prob.upper_bounds = Eigen::VectorXd::Zero(2);  // lower > upper
  CHECK_THROWS_AS(lp::lp_solve(prob), std::invalid_argument);
}
