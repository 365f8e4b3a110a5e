#pragma once

namespace bpdd {

inline constexpr char kVersion[] = "0.1.0";

/// Reproducibility contract: the generator behind every random quantity.
inline constexpr char kRngStamp[] = "philox4x32-10/box-muller";

}  // namespace bpdd
