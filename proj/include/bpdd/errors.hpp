#pragma once

#include <stdexcept>
#include <string>

namespace bpdd {

struct ZeroColumn : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BadSparsity : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RankDeficient : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RegimeViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FeasibilityLost : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FeasibilityError : std::runtime_error {
  FeasibilityError(const std::string& what, long index)
      : std::runtime_error(what), violated_index(index) {}
  long violated_index;
};
struct NumericalBreakdown : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct Intractable : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoFeasibleBasis : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BadQ : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateIncoherence : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MissingParam : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnknownPreset : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegeneratePlot : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace bpdd
