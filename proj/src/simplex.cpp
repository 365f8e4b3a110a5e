#include "bpdd/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "bpdd/errors.hpp"
#include "bpdd/kernels.hpp"

namespace bpdd::lp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarState : char { basic, at_lower, at_upper, free_nonbasic };

bool finite(double v) { return std::isfinite(v); }

/// Primal revised simplex over a shared column panel. Bounded variables,
/// two phases with an artificial start (plus crash bases), explicit basis
/// inverse with Gauss-Jordan updates and periodic refactorization, and
/// candidate-list partial pricing. All pivot rules are index-deterministic;
/// Bland's rule (full pricing, lowest improving index) engages after a run
/// of degenerate steps.
class Core {
 public:
  Core(const SimplexProblem& prob, const Tolerances& tol)
      : prob_(prob), tol_(tol), m_(static_cast<int>(prob.rhs.size())) {
    nstruct_ = static_cast<int>(prob.vars.size());
    vars_ = prob.vars;
    // Artificial variable for row r sits at id nstruct_ + r; its equality
    // column is sign * e_r, encoded as column = -(r+1).
    for (int r = 0; r < m_; ++r)
      vars_.push_back(VarDef{-(r + 1), 1.0, 0.0, kInf, 0.0});
    total_ = static_cast<int>(vars_.size());
    state_.assign(total_, VarState::at_lower);
    x_.assign(total_, 0.0);
    basis_.assign(m_, -1);
    binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
    costs_.assign(total_, 0.0);
    y_.resize(m_);
    t_cols_.assign(prob_.cols.ncols, 0.0);
    w_.assign(m_, 0.0);
    rho_.assign(m_, 0.0);
  }

  SolveResult run() {
    start_basis();

    // Phase 1: minimize total infeasibility.
    for (int v = 0; v < nstruct_; ++v) costs_[v] = 0.0;
    for (int r = 0; r < m_; ++r) costs_[nstruct_ + r] = 1.0;
    cost_scale_ = 1.0;
    in_phase1_ = true;
    candidates_.clear();
    if (!iterate())
      throw NumericalBreakdown("simplex: phase 1 hit the iteration limit");
    if (unbounded_)
      throw NumericalBreakdown("simplex: phase 1 reported an unbounded ray");
    const long phase1_iters = iterations_;
    const long phase1_degen = degenerate_total_;
    const double infeas = phase_objective();
    const double bscale = 1.0 + prob_.rhs.norm();
    if (infeas > tol_.feasibility * bscale) return finish(Status::infeasible);

    // Pin artificials at zero before anything can pivot them around.
    for (int r = 0; r < m_; ++r) {
      const int a = nstruct_ + r;
      vars_[a].lower = 0.0;
      vars_[a].upper = 0.0;
    }
    drive_out_artificials();

    // Phase 2: the real objective.
    for (int v = 0; v < nstruct_; ++v) costs_[v] = vars_[v].cost;
    double cmax = 0.0;
    for (int v = 0; v < nstruct_; ++v) cmax = std::max(cmax, std::abs(costs_[v]));
    cost_scale_ = 1.0 + cmax;
    for (int r = 0; r < m_; ++r) {
      const int a = nstruct_ + r;
      costs_[a] = 0.0;
      if (state_[a] != VarState::basic) {
        state_[a] = VarState::at_lower;
        x_[a] = 0.0;
      }
    }
    in_phase1_ = false;
    bland_ = false;
    degenerate_run_ = 0;
    candidates_.clear();
    if (!iterate())
      throw NumericalBreakdown("simplex: phase 2 hit the iteration limit");
    if (std::getenv("BPDD_LP_STATS"))
      std::fprintf(stderr,
                   "lp-stats: m=%d vars=%d phase1=%ld/%ld phase2=%ld/%ld "
                   "bland=%d refactors=%ld\n",
                   m_, nstruct_, phase1_iters, phase1_degen,
                   iterations_ - phase1_iters,
                   degenerate_total_ - phase1_degen, bland_ ? 1 : 0,
                   refactor_count_);
    if (unbounded_) return finish(Status::unbounded);
    return finish(Status::optimal);
  }

 private:
  // ---- column access -------------------------------------------------

  bool artificial(int v) const { return vars_[v].column < 0; }
  int art_row(int v) const { return -vars_[v].column - 1; }

  // w = Binv * (sign_v * A_v)
  void ftran(int v) {
    const double sgn = vars_[v].sign;
    if (artificial(v)) {
      const int r = art_row(v);
      for (int i = 0; i < m_; ++i)
        w_[i] = sgn * binv_[static_cast<std::size_t>(i) * m_ + r];
      return;
    }
    const double* a = prob_.cols.col(vars_[v].column);
    for (int i = 0; i < m_; ++i)
      w_[i] = sgn * kernels::dot(&binv_[static_cast<std::size_t>(i) * m_], a,
                                 static_cast<std::size_t>(m_));
  }

  // y = Binv^T c_B
  void btran() {
    y_.setZero();
    for (int i = 0; i < m_; ++i) {
      const double cb = costs_[basis_[i]];
      if (cb != 0.0)
        kernels::axpy(cb, &binv_[static_cast<std::size_t>(i) * m_], y_.data(),
                      static_cast<std::size_t>(m_));
    }
  }

  double reduced_cost_fresh(int v) const {
    const double t =
        artificial(v)
            ? y_[art_row(v)]
            : kernels::dot(prob_.cols.col(vars_[v].column), y_.data(),
                           static_cast<std::size_t>(m_));
    return costs_[v] - vars_[v].sign * t;
  }

  // Improvement score of a nonbasic variable given its reduced cost.
  double score_of(int v, double d) const {
    if (state_[v] == VarState::at_lower) return -d;
    if (state_[v] == VarState::at_upper) return d;
    if (state_[v] == VarState::free_nonbasic) return std::abs(d);
    return 0.0;
  }


  bool eligible(int v) const {
    return state_[v] != VarState::basic && vars_[v].upper - vars_[v].lower > 0.0;
  }

  // ---- pricing ---------------------------------------------------------

  double dual_tol() const { return 1e-9 * cost_scale_; }

  /// Full pricing pass. In Bland mode returns the lowest-index improving
  /// variable; otherwise returns the global Dantzig pick and refills the
  /// candidate list with the best improving columns.
  int full_price() {
    if (prob_.cols.ncols > 0)
      kernels::panel_dots(prob_.cols.data, prob_.cols.ld, prob_.cols.rows,
                          prob_.cols.ncols, y_.data(), t_cols_.data());
    const double dtol = dual_tol();
    if (bland_) {
      for (int v = 0; v < total_; ++v) {
        if (!eligible(v)) continue;
        const double t =
            artificial(v) ? y_[art_row(v)] : t_cols_[vars_[v].column];
        if (score_of(v, costs_[v] - vars_[v].sign * t) > dtol) return v;
      }
      return -1;
    }

    candidates_.clear();
    int best = -1;
    double best_sel = 0.0;
    for (int v = 0; v < total_; ++v) {
      if (!eligible(v)) continue;
      const double t =
          artificial(v) ? y_[art_row(v)] : t_cols_[vars_[v].column];
      const double score = score_of(v, costs_[v] - vars_[v].sign * t);
      if (score <= dtol) continue;
      candidates_.push_back({score, v});
      if (best < 0 || score > best_sel) {
        best_sel = score;
        best = v;
      }
    }
    const std::size_t keep =
        std::min<std::size_t>(kCandidates, candidates_.size());
    std::partial_sort(candidates_.begin(), candidates_.begin() + keep,
                      candidates_.end(), [](const Cand& a, const Cand& b) {
                        if (a.score != b.score) return a.score > b.score;
                        return a.var < b.var;
                      });
    candidates_.resize(keep);
    return best;
  }

  /// Exact re-pricing of the candidate list only.
  int candidate_price() {
    const double dtol = dual_tol();
    int best = -1;
    double best_sel = 0.0;
    for (const Cand& c : candidates_) {
      const int v = c.var;
      if (!eligible(v)) continue;
      const double score = score_of(v, reduced_cost_fresh(v));
      if (score <= dtol) continue;
      if (best < 0 || score > best_sel) {
        best_sel = score;
        best = v;
      }
    }
    return best;
  }

  int pick_entering() {
    if (bland_) return full_price();
    // Candidate re-pricing only pays off when the panel is much wider than
    // the basis; at square-ish aspect the weaker pivots cost more iterations
    // than the cheap pricing saves.
    const bool use_candidates = prob_.cols.ncols >= 40 * m_;
    if (use_candidates && !candidates_.empty() &&
        pivots_since_full_price_ < kPriceInterval) {
      const int v = candidate_price();
      if (v >= 0) return v;
    }
    pivots_since_full_price_ = 0;
    return full_price();
  }

  // ---- setup ----------------------------------------------------------

  void nonbasic_start() {
    for (int v = 0; v < nstruct_; ++v) {
      const VarDef& d = vars_[v];
      if (finite(d.lower)) {
        state_[v] = VarState::at_lower;
        x_[v] = d.lower;
      } else if (finite(d.upper)) {
        state_[v] = VarState::at_upper;
        x_[v] = d.upper;
      } else {
        state_[v] = VarState::free_nonbasic;
        x_[v] = 0.0;
      }
    }
  }

  bool try_proposed_basis() {
    const auto& proposal = prob_.initial_basis;
    if (static_cast<int>(proposal.size()) != m_) return false;
    std::vector<char> used(nstruct_, 0);
    for (int v : proposal) {
      if (v < 0 || v >= nstruct_ || used[v]) return false;
      used[v] = 1;
    }
    nonbasic_start();
    for (int i = 0; i < m_; ++i) {
      basis_[i] = proposal[i];
      state_[proposal[i]] = VarState::basic;
    }
    for (int r = 0; r < m_; ++r) {
      const int a = nstruct_ + r;
      state_[a] = VarState::at_lower;
      x_[a] = 0.0;
    }
    if (!refactor(/*nothrow=*/true)) return false;
    const double slack = 1e-7 * (1.0 + prob_.rhs.cwiseAbs().maxCoeff());
    for (int i = 0; i < m_; ++i) {
      const VarDef& d = vars_[basis_[i]];
      if (x_[basis_[i]] < d.lower - slack || x_[basis_[i]] > d.upper + slack)
        return false;
    }
    return true;
  }

  void start_basis() {
    if (!prob_.initial_basis.empty() && try_proposed_basis()) return;

    std::fill(basis_.begin(), basis_.end(), -1);
    nonbasic_start();
    Eigen::VectorXd r = prob_.rhs;
    for (int v = 0; v < nstruct_; ++v)
      if (x_[v] != 0.0) add_column(r, v, -x_[v]);

    // Singleton-column crash: rows covered by a unit-pattern structural
    // column start with that column basic instead of an artificial.
    for (int v = 0; v < nstruct_; ++v) {
      const double* a = prob_.cols.col(vars_[v].column);
      int nz_row = -1;
      bool singleton = true;
      for (int i = 0; i < m_; ++i) {
        if (a[i] != 0.0) {
          if (nz_row >= 0) {
            singleton = false;
            break;
          }
          nz_row = i;
        }
      }
      if (!singleton || nz_row < 0 || basis_[nz_row] >= 0) continue;
      const double coeff = vars_[v].sign * a[nz_row];
      if (std::abs(coeff) < 1e-12) continue;
      const double rhs_here = r[nz_row] + coeff * x_[v];
      const double value = rhs_here / coeff;
      if (value < vars_[v].lower - tol_.bounds ||
          value > vars_[v].upper + tol_.bounds)
        continue;
      basis_[nz_row] = v;
      state_[v] = VarState::basic;
      x_[v] = value;
      r[nz_row] = rhs_here - coeff * value;
    }

    for (int i = 0; i < m_; ++i) {
      if (basis_[i] >= 0) continue;
      const int a = nstruct_ + i;
      vars_[a].sign = (r[i] >= 0.0) ? 1.0 : -1.0;
      basis_[i] = a;
      state_[a] = VarState::basic;
      x_[a] = std::abs(r[i]);
    }
    refactor(false);
  }

  void add_column(Eigen::VectorXd& acc, int v, double scale) const {
    if (artificial(v)) {
      acc[art_row(v)] += scale * vars_[v].sign;
      return;
    }
    kernels::axpy(scale * vars_[v].sign, prob_.cols.col(vars_[v].column),
                  acc.data(), static_cast<std::size_t>(m_));
  }

  bool refactor(bool nothrow) {
    Eigen::MatrixXd B(m_, m_);
    for (int i = 0; i < m_; ++i) {
      const int v = basis_[i];
      if (artificial(v)) {
        B.col(i).setZero();
        B(art_row(v), i) = vars_[v].sign;
      } else {
        B.col(i) =
            vars_[v].sign * Eigen::Map<const Eigen::VectorXd>(
                                prob_.cols.col(vars_[v].column), m_);
      }
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
    const double rc = lu.rcond();
    if (!(rc > 0.0) || 1.0 / rc > tol_.condition_limit) {
      if (nothrow) return false;
      throw NumericalBreakdown("simplex: basis condition estimate " +
                               std::to_string(rc > 0 ? 1.0 / rc : kInf));
    }
    Eigen::MatrixXd inv = lu.inverse();
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j)
        binv_[static_cast<std::size_t>(i) * m_ + j] = inv(i, j);

    // Flush accumulated drift out of the basic values.
    Eigen::VectorXd r = prob_.rhs;
    for (int v = 0; v < total_; ++v)
      if (state_[v] != VarState::basic && x_[v] != 0.0) add_column(r, v, -x_[v]);
    Eigen::VectorXd xb = inv * r;
    for (int i = 0; i < m_; ++i) x_[basis_[i]] = xb[i];
    pivots_since_refactor_ = 0;
    ++refactor_count_;
    return true;
  }

  void drive_out_artificials() {
    btran();
    for (int r = 0; r < m_; ++r) {
      if (!artificial(basis_[r])) continue;
      // Row of Binv*A restricted to structural columns.
      const double* rho = &binv_[static_cast<std::size_t>(r) * m_];
      std::vector<double> row(prob_.cols.ncols, 0.0);
      if (prob_.cols.ncols > 0)
        kernels::panel_dots(prob_.cols.data, prob_.cols.ld, prob_.cols.rows,
                            prob_.cols.ncols, rho, row.data());
      int enter = -1;
      for (int v = 0; v < nstruct_; ++v) {
        if (state_[v] == VarState::basic) continue;
        if (std::abs(vars_[v].sign * row[vars_[v].column]) > 1e-7) {
          enter = v;
          break;
        }
      }
      if (enter < 0) continue;  // redundant row; artificial stays pinned at 0
      const double d = reduced_cost_fresh(enter);
      ftran(enter);
      pivot(enter, r, /*theta=*/0.0, /*dir=*/1.0, d);
    }
  }

  // ---- main loop -------------------------------------------------------

  double phase_objective() const {
    double obj = 0.0;
    for (int v = 0; v < total_; ++v)
      if (costs_[v] != 0.0) obj += costs_[v] * x_[v];
    return obj;
  }

  bool iterate() {
    const long cap = 5000L + 60L * m_ + 2L * nstruct_;
    unbounded_ = false;
    btran();
    for (;;) {
      if (pivots_since_refactor_ >= kRefactorInterval) {
        refactor(false);
        btran();  // duals are maintained incrementally between refactors
        candidates_.clear();
      }
      int enter = pick_entering();
      if (enter < 0) {
        if (pivots_since_refactor_ > 0) {
          // Confirm optimality against a fresh factorization.
          refactor(false);
          btran();
          candidates_.clear();
          enter = pick_entering();
          if (enter < 0) return true;
        } else {
          return true;
        }
      }
      if (!step(enter)) {
        if (unbounded_) return true;
        return false;
      }
      if (++iterations_ > cap) return false;
    }
  }

  // One simplex step with entering variable `enter`. Returns false on
  // iteration trouble; sets unbounded_ when the ray is certified.
  bool step(int enter) {
    const double d = reduced_cost_fresh(enter);
    const double dir =
        (state_[enter] == VarState::at_upper ||
         (state_[enter] == VarState::free_nonbasic && d > 0.0))
            ? -1.0
            : 1.0;
    ftran(enter);

    const double span = vars_[enter].upper - vars_[enter].lower;
    double theta = finite(span) ? span : kInf;
    int leave_row = -1;
    double leave_delta = 0.0;
    for (int i = 0; i < m_; ++i) {
      const double delta = dir * w_[i];
      if (std::abs(delta) <= tol_.pivot) continue;
      const VarDef& bd = vars_[basis_[i]];
      double limit;
      if (delta > 0.0) {
        if (!finite(bd.lower)) continue;
        limit = (x_[basis_[i]] - bd.lower) / delta;
      } else {
        if (!finite(bd.upper)) continue;
        limit = (bd.upper - x_[basis_[i]]) / (-delta);
      }
      limit = std::max(limit, 0.0);
      const double tie = 1e-10 * (1.0 + std::abs(theta));
      if (leave_row < 0 ? limit <= theta : limit < theta - tie) {
        theta = limit;
        leave_row = i;
        leave_delta = delta;
      } else if (leave_row >= 0 && limit <= theta + tie) {
        if (bland_) {
          if (basis_[i] < basis_[leave_row]) {
            leave_row = i;
            leave_delta = delta;
          }
        } else if (std::abs(delta) > std::abs(leave_delta)) {
          leave_row = i;
          leave_delta = delta;
        }
      }
    }

    if (!finite(theta) && leave_row < 0) {
      unbounded_ = true;
      return false;
    }

    if (theta <= 1e-11) {
      ++degenerate_total_;
      if (++degenerate_run_ > std::max(40, m_)) bland_ = true;
    } else {
      degenerate_run_ = 0;
    }

    if (leave_row < 0 || (finite(span) && span <= theta)) {
      // Bound-to-bound flip of the entering variable.
      for (int i = 0; i < m_; ++i) x_[basis_[i]] -= dir * span * w_[i];
      if (state_[enter] == VarState::at_lower) {
        state_[enter] = VarState::at_upper;
        x_[enter] = vars_[enter].upper;
      } else {
        state_[enter] = VarState::at_lower;
        x_[enter] = vars_[enter].lower;
      }
      ++pivots_since_refactor_;
      ++pivots_since_full_price_;
      return true;
    }

    pivot(enter, leave_row, theta, dir, d);
    return true;
  }

  void pivot(int enter, int row, double theta, double dir, double d_enter) {
    const double wr = w_[row];
    if (std::abs(wr) < tol_.pivot)
      throw NumericalBreakdown("simplex: pivot element below threshold");

    for (int i = 0; i < m_; ++i) x_[basis_[i]] -= dir * theta * w_[i];
    const int leave = basis_[row];
    // The leaving variable lands exactly on the bound that blocked it.
    if (dir * wr > 0.0) {
      state_[leave] = VarState::at_lower;
      x_[leave] = vars_[leave].lower;
    } else {
      state_[leave] = VarState::at_upper;
      x_[leave] = vars_[leave].upper;
    }
    // Artificials never come back once they leave the basis.
    if (in_phase1_ && artificial(leave)) vars_[leave].upper = 0.0;
    x_[enter] = (state_[enter] == VarState::free_nonbasic ? 0.0 : x_[enter]) +
                dir * theta;
    state_[enter] = VarState::basic;
    basis_[row] = enter;

    double* prow = &binv_[static_cast<std::size_t>(row) * m_];
    rho_.assign(prow, prow + m_);  // pivot row of the outgoing inverse
    const double inv_wr = 1.0 / wr;
    for (int j = 0; j < m_; ++j) prow[j] *= inv_wr;
    for (int i = 0; i < m_; ++i) {
      if (i == row) continue;
      const double f = w_[i];
      if (f != 0.0)
        kernels::axpy(-f, prow, &binv_[static_cast<std::size_t>(i) * m_],
                      static_cast<std::size_t>(m_));
    }

    // Exact O(m) dual update: y' = y + (d_e / w_r) * rho. Verified against a
    // full BTran at every refactorization.
    kernels::axpy(d_enter * inv_wr, rho_.data(), y_.data(),
                  static_cast<std::size_t>(m_));

    ++pivots_since_refactor_;
    ++pivots_since_full_price_;
  }

  // ---- wrap-up ---------------------------------------------------------

  SolveResult finish(Status status) {
    SolveResult res;
    res.status = status;
    res.iterations = static_cast<int>(iterations_);
    res.solution.resize(nstruct_);
    for (int v = 0; v < nstruct_; ++v) res.solution[v] = x_[v];

    double obj = 0.0;
    for (int v = 0; v < nstruct_; ++v) obj += vars_[v].cost * x_[v];
    res.objective_value = obj;

    Eigen::VectorXd r = prob_.rhs;
    for (int v = 0; v < total_; ++v)
      if (x_[v] != 0.0) add_column(r, v, -x_[v]);
    res.primal_residual = r.size() > 0 ? r.cwiseAbs().maxCoeff() : 0.0;

    if (status == Status::optimal) {
      for (int v = 0; v < nstruct_; ++v) costs_[v] = vars_[v].cost;
      for (int i = 0; i < m_; ++i) costs_[nstruct_ + i] = 0.0;
      btran();
      res.dual_multipliers = y_;
      double dual_obj = prob_.rhs.dot(y_);
      for (int v = 0; v < total_; ++v)
        if (state_[v] != VarState::basic && x_[v] != 0.0)
          dual_obj += reduced_cost_fresh(v) * x_[v];
      res.duality_gap = std::abs(obj - dual_obj);
    } else {
      res.dual_multipliers = Eigen::VectorXd::Zero(m_);
      res.duality_gap = 0.0;
    }
    return res;
  }

  static constexpr int kRefactorInterval = 200;
  static constexpr int kPriceInterval = 40;
  static constexpr std::size_t kCandidates = 256;

  struct Cand {
    double score;
    int var;
  };

  const SimplexProblem& prob_;
  const Tolerances& tol_;
  int m_;
  int nstruct_ = 0;
  int total_ = 0;
  std::vector<VarDef> vars_;
  std::vector<VarState> state_;
  std::vector<double> x_;
  std::vector<int> basis_;
  std::vector<double> binv_;  // row-major m x m
  std::vector<double> costs_;
  double cost_scale_ = 1.0;
  Eigen::VectorXd y_;
  std::vector<double> t_cols_;
  std::vector<double> w_;
  std::vector<Cand> candidates_;
  std::vector<double> rho_;
  long iterations_ = 0;
  bool bland_ = false;
  bool unbounded_ = false;
  bool in_phase1_ = true;
  int degenerate_run_ = 0;
  long degenerate_total_ = 0;
  int pivots_since_refactor_ = 0;
  int pivots_since_full_price_ = 0;
  long refactor_count_ = 0;
};

}  // namespace

SolveResult simplex_solve(const SimplexProblem& problem, const Tolerances& tol) {
  const int m = static_cast<int>(problem.rhs.size());
  if (m < 1) throw std::invalid_argument("simplex_solve: empty row system");
  if (problem.cols.rows != m)
    throw std::invalid_argument("simplex_solve: panel rows != rhs length");
  for (const VarDef& v : problem.vars) {
    if (v.column < 0 || v.column >= problem.cols.ncols)
      throw std::invalid_argument("simplex_solve: variable column out of range");
    if (v.lower > v.upper || v.lower == kInf || v.upper == -kInf)
      throw std::invalid_argument("simplex_solve: bad variable bounds");
  }
  Core core(problem, tol);
  return core.run();
}

SolveResult lp_solve(const LinearProgram& lp, const Tolerances& tol) {
  const int m = static_cast<int>(lp.equality_rhs.size());
  const int n = static_cast<int>(lp.objective.size());
  if (lp.equality_matrix.rows() != m || lp.equality_matrix.cols() != n ||
      lp.lower_bounds.size() != n || lp.upper_bounds.size() != n)
    throw std::invalid_argument("lp_solve: inconsistent dimensions");
  if (!lp.equality_rhs.allFinite())
    throw std::invalid_argument("lp_solve: rhs must be finite");
  for (int j = 0; j < n; ++j)
    if (lp.lower_bounds[j] > lp.upper_bounds[j] ||
        lp.lower_bounds[j] == kInf || lp.upper_bounds[j] == -kInf)
      throw std::invalid_argument("lp_solve: bad bounds");

  const bool maximize = lp.sense == LinearProgram::Sense::maximize;
  SimplexProblem sp;
  sp.cols = ColumnView{lp.equality_matrix.data(), m,
                       static_cast<int>(lp.equality_matrix.outerStride()), n};
  sp.rhs = lp.equality_rhs;
  sp.vars.reserve(n);
  for (int j = 0; j < n; ++j)
    sp.vars.push_back(VarDef{j, 1.0, lp.lower_bounds[j], lp.upper_bounds[j],
                             maximize ? -lp.objective[j] : lp.objective[j]});

  SolveResult res = simplex_solve(sp, tol);
  if (maximize) {
    res.objective_value = -res.objective_value;
    res.dual_multipliers = -res.dual_multipliers;
  }
  return res;
}

}  // namespace bpdd::lp
