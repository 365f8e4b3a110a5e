#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bpdd/experiments.hpp"

namespace bpdd::io {

/// Up to 12 significant digits, locale-independent.
std::string format_number(double v);

struct CsvMeta {
  std::string preset;
  std::uint64_t seed = 0;
  std::string note;
  std::vector<std::pair<std::string, std::string>> extra;
};

/// Writes one row per cell: identity columns, then <quantity>_{mean,median,
/// q10,q90} over the sorted union of quantity keys (bound columns use the
/// stable ledger identifiers), then <bound>_{violations,evaluated}. Metadata
/// rides in #-prefixed leading comment lines. Byte-deterministic for equal
/// inputs. Throws IoError on an empty table or unwritable path.
void emit_csv(const std::vector<experiments::CellStats>& cells,
              const CsvMeta& meta, const std::string& path);

/// Minimal reader for the same dialect (plots are derived from the CSV, not
/// from live sweep objects).
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> meta;

  int col(const std::string& name) const;
  std::optional<double> num(std::size_t row, int col) const;
  const std::string& field(std::size_t row, int col) const;
};
Table read_csv(const std::string& path);

}  // namespace bpdd::io
