#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ips/conventions.hpp"
#include "ips/errors.hpp"

// Flat-file dataset export: CSV with a single header row, '.' decimal
// separator and 17 significant digits (lossless for 64-bit floats), plus a
// JSON metadata sidecar (the dataset envelope). Output is byte-identical
// across reruns with the same inputs.

namespace ips {

/// Linear parameter sweep: count points from start to stop inclusive.
struct SweepSpec {
  std::string name;
  double start{0};
  double stop{0};
  int count{0};

  std::vector<double> values() const {
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i) {
      v[i] = start + (stop - start) * double(i) / double(count - 1);
    }
    return v;
  }
};

inline void validate(const SweepSpec& s) {
  if (s.count < 2) throw ValidationError("sweep '" + s.name + "' needs count >= 2");
  if (s.start == s.stop) throw ValidationError("sweep '" + s.name + "' needs start != stop");
}

/// Parses "start:stop:count".
inline SweepSpec parse_sweep(const std::string& name, const std::string& text) {
  SweepSpec s;
  s.name = name;
  char trail = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &s.start, &s.stop, &s.count, &trail) != 3) {
    throw ValidationError("sweep '" + name + "': expected start:stop:count, got '" + text + "'");
  }
  validate(s);
  return s;
}

struct Dataset {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Round-trip-exact formatting for 64-bit floats.
inline std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void write_csv(const std::string& path, const Dataset& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  for (size_t i = 0; i < data.columns.size(); ++i) {
    out << (i ? "," : "") << data.columns[i];
  }
  out << "\n";
  for (const auto& row : data.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << format_value(row[i]);
    }
    out << "\n";
  }
  if (!out) throw IoError("write to '" + path + "' failed");
}

/// Metadata written next to every CSV: command echo, parameter values,
/// convention-ledger version and the column schema.
struct DatasetEnvelope {
  std::string command;
  nlohmann::ordered_json parameters;
};

inline void write_envelope(const std::string& csv_path, const DatasetEnvelope& env,
                           const Dataset& data) {
  nlohmann::ordered_json j;
  j["command"] = env.command;
  j["parameters"] = env.parameters;
  j["convention_ledger_version"] = convention_ledger_version;
  j["schema"] = data.columns;
  j["rows"] = data.rows.size();
  std::ofstream out(csv_path + ".meta.json", std::ios::binary);
  if (!out) throw IoError("cannot open '" + csv_path + ".meta.json' for writing");
  out << j.dump(2) << "\n";
  if (!out) throw IoError("write to '" + csv_path + ".meta.json' failed");
}

}  // namespace ips
