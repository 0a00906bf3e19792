#ifndef VBL_IO_HPP
#define VBL_IO_HPP

// Artifact writers: CSV and binary snapshot formats, time-series CSV,
// gnuplot .dat emitters, and JSON report plumbing.
//
// Binary snapshot layout (little-endian, native doubles):
//   bytes 0..3   magic "VBL1"
//   uint32       nx
//   uint32       nv
//   double       x_period
//   double       v_halfwidth
//   double       time
//   nx*nv double values, row-major (x index outer)

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vbl/euler.hpp"
#include "vbl/field.hpp"
#include "vbl/fixed_point.hpp"
#include "vbl/transport.hpp"

namespace vbl {

using ordered_json = nlohmann::ordered_json;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
}

inline void write_json(const std::string& path, const ordered_json& j) {
  write_text(path, j.dump(2) + "\n");
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_field_csv(const std::string& path, const PhaseField& f) {
  std::string s = "x,v,value\n";
  for (int i = 0; i < f.grid.nx; ++i)
    for (int j = 0; j < f.grid.nv; ++j)
      s += format_double(f.grid.x(i)) + "," + format_double(f.grid.v(j)) + "," +
           format_double(f.at(i, j)) + "\n";
  write_text(path, s);
}

inline void write_field_vbl(const std::string& path, const PhaseField& f,
                            double time = 0.0) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write("VBL1", 4);
  const std::uint32_t nx = static_cast<std::uint32_t>(f.grid.nx);
  const std::uint32_t nv = static_cast<std::uint32_t>(f.grid.nv);
  out.write(reinterpret_cast<const char*>(&nx), 4);
  out.write(reinterpret_cast<const char*>(&nv), 4);
  const double meta[3] = {f.grid.x_period, f.grid.v_halfwidth, time};
  out.write(reinterpret_cast<const char*>(meta), sizeof meta);
  out.write(reinterpret_cast<const char*>(f.values.data()),
            static_cast<std::streamsize>(f.values.size() * sizeof(double)));
}

struct SnapshotFile {
  std::uint32_t nx = 0, nv = 0;
  double x_period = 0.0, v_halfwidth = 0.0, time = 0.0;
  std::vector<double> values;
};

inline SnapshotFile read_field_vbl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open snapshot '" + path + "'");
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "VBL1", 4) != 0)
    throw IoError("'" + path + "' is not a VBL1 snapshot");
  SnapshotFile s;
  in.read(reinterpret_cast<char*>(&s.nx), 4);
  in.read(reinterpret_cast<char*>(&s.nv), 4);
  double meta[3];
  in.read(reinterpret_cast<char*>(meta), sizeof meta);
  if (!in) throw IoError("'" + path + "' is truncated");
  s.x_period = meta[0];
  s.v_halfwidth = meta[1];
  s.time = meta[2];
  if (s.nx > (1u << 20) || s.nv > (1u << 20))
    throw IoError("'" + path + "' declares implausible dimensions");
  s.values.resize(static_cast<std::size_t>(s.nx) * s.nv);
  in.read(reinterpret_cast<char*>(s.values.data()),
          static_cast<std::streamsize>(s.values.size() * sizeof(double)));
  if (!in) throw IoError("'" + path + "' is truncated");
  return s;
}

inline void write_series_csv(const std::string& path,
                             const std::vector<std::string>& columns,
                             const std::vector<std::vector<double>>& rows) {
  std::string s;
  for (std::size_t c = 0; c < columns.size(); ++c)
    s += (c ? "," : "") + columns[c];
  s += "\n";
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      s += (c ? "," : "") + format_double(row[c]);
    s += "\n";
  }
  write_text(path, s);
}

// gnuplot-friendly whitespace table; the header line documents the columns.
inline void write_dat(const std::string& path,
                      const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows) {
  std::string s = "#";
  for (const auto& c : columns) s += " " + c;
  s += "\n";
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) s += (c ? " " : "") + format_double(row[c]);
    s += "\n";
  }
  write_text(path, s);
}

// gnuplot splot blocks: x v value triples with a blank line between x rows.
inline void write_field_dat(const std::string& path, const PhaseField& f) {
  std::string s = "# x v value\n";
  for (int i = 0; i < f.grid.nx; ++i) {
    for (int j = 0; j < f.grid.nv; ++j)
      s += format_double(f.grid.x(i)) + " " + format_double(f.grid.v(j)) + " " +
           format_double(f.at(i, j)) + "\n";
    s += "\n";
  }
  write_text(path, s);
}

inline ordered_json norm_value_json(const NormValue& v) {
  return ordered_json{{"value", static_cast<double>(v.value)},
                      {"tail_bound", static_cast<double>(v.tail_bound)},
                      {"tail_ratio", static_cast<double>(v.tail_ratio)},
                      {"divergent", v.divergent}};
}

inline ordered_json norm_report_json(const std::string& name, double lambda, int n,
                                     const NormValue& v, bool pass) {
  ordered_json j = norm_value_json(v);
  j["pass"] = pass;
  ordered_json out{{"name", name}, {"lambda", lambda}, {"n", n}};
  out.update(j);
  return out;
}

inline ordered_json gate_json(const GateReport& g) {
  ordered_json conditions = ordered_json::array();
  for (const auto& c : g.conditions)
    conditions.push_back(ordered_json{{"name", c.name},
                                      {"value", c.value},
                                      {"margin", c.margin},
                                      {"pass", c.pass}});
  return ordered_json{{"alpha0", g.alpha0},
                      {"kappa", g.kappa_value},
                      {"f0_norm", g.f0_norm},
                      {"f0_bound", g.f0_bound},
                      {"conditions", conditions},
                      {"pass", g.pass}};
}

inline ordered_json membership_json(const MembershipReport& m) {
  return ordered_json{{"value", m.value},
                      {"tail_bound", m.tail_bound},
                      {"M", m.M},
                      {"pass", m.pass}};
}

}  // namespace vbl

#endif
