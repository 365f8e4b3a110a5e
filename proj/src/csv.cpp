#include "bpdd/csv.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "bpdd/errors.hpp"
#include "bpdd/version.hpp"

namespace bpdd::io {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void emit_csv(const std::vector<experiments::CellStats>& cells,
              const CsvMeta& meta, const std::string& path) {
  if (cells.empty()) throw IoError("emit_csv: empty table");

  std::set<std::string> quantity_keys;
  std::set<std::string> bound_keys;
  for (const auto& c : cells) {
    for (const auto& [k, v] : c.quantities) quantity_keys.insert(k);
    for (const auto& [k, v] : c.violations) bound_keys.insert(k);
  }

  std::ostringstream out;
  out << "# tool=bpdd " << kVersion << "\n";
  out << "# rng=" << kRngStamp << "\n";
  if (!meta.preset.empty()) out << "# preset=" << meta.preset << "\n";
  out << "# seed=" << meta.seed << "\n";
  if (!meta.note.empty()) out << "# note=" << meta.note << "\n";
  for (const auto& [k, v] : meta.extra) out << "# " << k << "=" << v << "\n";

  out << "variant,n,p,s,beta_norm,noise_level,trials,failed_trials";
  for (const auto& k : quantity_keys)
    out << "," << k << "_mean," << k << "_median," << k << "_q10," << k
        << "_q90";
  for (const auto& k : bound_keys)
    out << "," << k << "_violations," << k << "_evaluated";
  out << "\n";

  for (const auto& c : cells) {
    out << c.variant << "," << c.n << "," << c.p << "," << c.s << ","
        << format_number(c.beta_norm) << "," << format_number(c.noise_level)
        << "," << c.trial_count << "," << c.failed_trials;
    for (const auto& k : quantity_keys) {
      const auto it = c.quantities.find(k);
      if (it == c.quantities.end() || it->second.count == 0) {
        out << ",,,,";
      } else {
        out << "," << format_number(it->second.mean) << ","
            << format_number(it->second.median) << ","
            << format_number(it->second.q10) << ","
            << format_number(it->second.q90);
      }
    }
    for (const auto& k : bound_keys) {
      const auto vit = c.violations.find(k);
      const auto eit = c.bound_evaluated.find(k);
      out << "," << (vit == c.violations.end() ? 0 : vit->second) << ","
          << (eit == c.bound_evaluated.end() ? 0 : eit->second);
    }
    out << "\n";
  }

  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("emit_csv: cannot open " + path);
  const std::string text = out.str();
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!file) throw IoError("emit_csv: write failed for " + path);
}

int Table::col(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return static_cast<int>(i);
  return -1;
}

const std::string& Table::field(std::size_t row, int c) const {
  static const std::string empty;
  if (c < 0 || row >= rows.size() ||
      static_cast<std::size_t>(c) >= rows[row].size())
    return empty;
  return rows[row][static_cast<std::size_t>(c)];
}

std::optional<double> Table::num(std::size_t row, int c) const {
  const std::string& f = field(row, c);
  if (f.empty()) return std::nullopt;
  try {
    std::size_t pos = 0;
    const double v = std::stod(f, &pos);
    if (pos != f.size()) return std::nullopt;
    return v;
  } catch (...) {
    return std::nullopt;
  }
}

Table read_csv(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("read_csv: cannot open " + path);
  Table t;
  std::string line;
  bool header_done = false;
  const auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
      if (ch == ',') {
        out.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    out.push_back(cur);
    return out;
  };
  while (std::getline(file, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::size_t eq = line.find('=');
      if (eq != std::string::npos)
        t.meta.emplace_back(line.substr(2, eq - 2), line.substr(eq + 1));
      continue;
    }
    if (!header_done) {
      t.columns = split(line);
      header_done = true;
    } else {
      t.rows.push_back(split(line));
    }
  }
  if (!header_done) throw IoError("read_csv: no header in " + path);
  return t;
}

}  // namespace bpdd::io
