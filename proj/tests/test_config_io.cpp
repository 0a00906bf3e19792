#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "vbl/config.hpp"
#include "vbl/io.hpp"

using namespace vbl;
using Catch::Matchers::ContainsSubstring;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("vbl_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("empty config text yields the documented defaults", "[config]") {
  const RunConfig cfg = parse_config_text("# nothing but a comment\n", "empty.cfg");
  CHECK(cfg.nx == 128);
  CHECK(cfg.nv == 128);
  CHECK(cfg.x_period == 2.0 * pi);
  CHECK(cfg.v_halfwidth == 16.0);
  CHECK_FALSE(cfg.dt.has_value());
  CHECK_FALSE(cfg.T.has_value());
  CHECK_FALSE(cfg.t_final.has_value());
  CHECK(cfg.lambda0 == 0.5);
  CHECK(cfg.K == 40.0);
  CHECK_FALSE(cfg.M.has_value());
  CHECK(cfg.q == 0);
  CHECK(cfg.picard_tol == 1e-9);
  CHECK(cfg.max_iter == 40);
  CHECK(cfg.profile == "gauss_v_trig_x");
  CHECK_FALSE(cfg.amplitude.has_value());
  CHECK(cfg.epsilon == 0.1);
  CHECK(cfg.mode == 1);
  CHECK(cfg.out == "out");
  CHECK(cfg.seed == 42);
  CHECK(cfg.pairs == 20);
  CHECK(cfg.drift_form == "conservative");
  CHECK(cfg.horizon() == 0.01);
  CHECK(cfg.step() == 0.01 / 16.0);
  CHECK(cfg.grid().steps() == 16);
}

TEST_CASE("full config parses values, comments, and auto markers", "[config]") {
  const std::string text =
      "[grid]\n"
      "nx = 64   # inline comment\n"
      "nv = 32\n"
      "x_period = 6.0\n"
      "v_halfwidth = 8\n"
      "dt = 0.0005\n"
      "\n"
      "[params]\n"
      "lambda0 = 0.4\n"
      "K = 30\n"
      "T = 0.008\n"
      "M = auto\n"
      "q = 2\n"
      "picard_tol = 1e-10\n"
      "max_iter = 25\n"
      "\n"
      "[initial]\n"
      "profile = gauss_v_trig_x\n"
      "amplitude = auto\n"
      "epsilon = 0.25\n"
      "mode = 3\n"
      "\n"
      "[run]\n"
      "out = scratch\n"
      "seed = 18446744073709551615\n"
      "pairs = 5\n"
      "drift_form = direct\n";
  const RunConfig cfg = parse_config_text(text, "full.cfg");
  CHECK(cfg.nx == 64);
  CHECK(cfg.nv == 32);
  CHECK(cfg.x_period == 6.0);
  CHECK(cfg.v_halfwidth == 8.0);
  CHECK(cfg.dt == 0.0005);
  CHECK(cfg.lambda0 == 0.4);
  CHECK(cfg.K == 30.0);
  CHECK(cfg.T == 0.008);
  CHECK_FALSE(cfg.M.has_value());         // auto -> scan later
  CHECK(cfg.q == 2);
  CHECK(cfg.picard_tol == 1e-10);
  CHECK(cfg.max_iter == 25);
  CHECK_FALSE(cfg.amplitude.has_value());  // auto -> gate bound later
  CHECK(cfg.epsilon == 0.25);
  CHECK(cfg.mode == 3);
  CHECK(cfg.out == "scratch");
  CHECK(cfg.seed == UINT64_MAX);
  CHECK(cfg.pairs == 5);
  CHECK(cfg.drift_form == "direct");
  CHECK(cfg.horizon() == 0.008);
  CHECK(cfg.grid().steps() == 16);
}

TEST_CASE("config rejections carry file and line", "[config]") {
  auto reject = [](const std::string& text, const std::string& needle) {
    REQUIRE_THROWS_WITH(parse_config_text(text, "t.cfg"), ContainsSubstring(needle));
  };

  reject("[misc]\n", "t.cfg:1: unknown section [misc]");
  reject("[grid]\nfoo = 1\n", "t.cfg:2: unknown key 'foo' in [grid]");
  reject("[grid]\nnx = banana\n", "expects an integer");
  reject("[params]\nlambda0 = fast\n", "expects a number");
  reject("[grid]\nnx = 64\nnx = 128\n", "t.cfg:3: duplicate key 'nx' in [grid] (first at line 2)");
  reject("nx = 64\n", "before any [section]");
  reject("[grid]\nnx =\n", "empty value");
  reject("[grid\nnx = 64\n", "malformed section header");
  reject("[grid]\nnx 64\n", "expected 'key = value'");
  reject("[run]\nseed = -1\n", "unsigned");
  reject("[run]\ndrift_form = upwind\n", "conservative");
  reject("[params]\nT = 0.01\n[grid]\nt_final = 0.02\n", "disagree");
  reject("[initial]\nprofile = maxwell\n", "unknown initial profile");
  reject("[initial]\nprofile = file\n", "requires initial.file");
  reject("[params]\nq = -1\n", "q must be >= 0");
  reject("[run]\npairs = 0\n", "pairs must be >= 1");
  reject("[grid]\nnx = 100\n", "power of two");
  reject("[grid]\ndt = 0.003\n", "divide");  // 0.01 / 0.003 is not integral

  // Matching horizon names are fine.
  const RunConfig ok = parse_config_text("[params]\nT = 0.02\n[grid]\nt_final = 0.02\n", "t.cfg");
  CHECK(ok.horizon() == 0.02);
}

TEST_CASE("config file loader reports unopenable paths", "[config]") {
  REQUIRE_THROWS_WITH(parse_config_file("/nonexistent/vbl.cfg"),
                      ContainsSubstring("cannot open config file"));

  const auto path = temp_file("roundtrip.cfg");
  write_text(path.string(), "[grid]\nnx = 32\nnv = 32\n[params]\nT = 0.01\n");
  const RunConfig cfg = parse_config_file(path.string());
  CHECK(cfg.nx == 32);
  CHECK(cfg.T == 0.01);
  std::filesystem::remove(path);
}

TEST_CASE("snapshot files round-trip bitwise", "[io]") {
  const GridSpec g = GridSpec::make(32, 16, 2.0 * pi, 4.0, 0.001, 0.01);
  PhaseField f = PhaseField::zeros(g);
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.nv; ++j)
      f.at(i, j) = std::sin(0.1 + i) * std::cos(1.0 + j) / 7.0;

  const auto path = temp_file("snapshot.vbl");
  write_field_vbl(path.string(), f, 0.375);

  const SnapshotFile s = read_field_vbl(path.string());
  REQUIRE(s.nx == 32);
  REQUIRE(s.nv == 16);
  CHECK(s.x_period == g.x_period);
  CHECK(s.v_halfwidth == g.v_halfwidth);
  CHECK(s.time == 0.375);
  REQUIRE(s.values.size() == f.values.size());
  for (std::size_t k = 0; k < s.values.size(); ++k) REQUIRE(s.values[k] == f.values[k]);

  // Writing the same field again produces identical bytes.
  const std::string once = slurp(path);
  write_field_vbl(path.string(), f, 0.375);
  CHECK(slurp(path) == once);
  CHECK(once.size() == 4 + 4 + 4 + 3 * 8 + f.values.size() * 8);
  std::filesystem::remove(path);
}

TEST_CASE("snapshot reader rejects foreign and truncated files", "[io]") {
  REQUIRE_THROWS_AS(read_field_vbl("/nonexistent/f.vbl"), IoError);

  const auto bad = temp_file("bad.vbl");
  write_text(bad.string(), "JUNKJUNKJUNKJUNKJUNKJUNKJUNKJUNK");
  REQUIRE_THROWS_WITH(read_field_vbl(bad.string()), ContainsSubstring("not a VBL1 snapshot"));

  // Valid header that promises more payload than the file holds.
  {
    std::ofstream out(bad, std::ios::binary);
    out.write("VBL1", 4);
    const std::uint32_t nx = 32, nv = 16;
    out.write(reinterpret_cast<const char*>(&nx), 4);
    out.write(reinterpret_cast<const char*>(&nv), 4);
    const double meta[3] = {6.28, 4.0, 0.0};
    out.write(reinterpret_cast<const char*>(meta), sizeof meta);
    const double few[5] = {1, 2, 3, 4, 5};
    out.write(reinterpret_cast<const char*>(few), sizeof few);
  }
  REQUIRE_THROWS_WITH(read_field_vbl(bad.string()), ContainsSubstring("truncated"));

  // Implausible dimensions are refused before allocation.
  {
    std::ofstream out(bad, std::ios::binary);
    out.write("VBL1", 4);
    const std::uint32_t nx = 1u << 24, nv = 1u << 24;
    out.write(reinterpret_cast<const char*>(&nx), 4);
    out.write(reinterpret_cast<const char*>(&nv), 4);
    const double meta[3] = {6.28, 4.0, 0.0};
    out.write(reinterpret_cast<const char*>(meta), sizeof meta);
  }
  REQUIRE_THROWS_WITH(read_field_vbl(bad.string()), ContainsSubstring("implausible"));
  std::filesystem::remove(bad);
}

TEST_CASE("double formatting is shortest-exact and deterministic", "[io]") {
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(-2.25) == "-2.25");

  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-80, 80);
  for (int k = 0; k < 500; ++k) {
    const double x = mant(rng) * std::pow(10.0, expo(rng));
    REQUIRE(std::stod(format_double(x)) == x);
  }
}

TEST_CASE("json writer preserves key order and ends with newline", "[io]") {
  ordered_json j;
  j["zulu"] = 1;
  j["alpha"] = 2;
  j["nested"] = ordered_json{{"m", 0.5}, {"k", true}};

  const auto path = temp_file("report.json");
  write_json(path.string(), j);
  const std::string text = slurp(path);
  CHECK(text.back() == '\n');
  CHECK(text.find("zulu") < text.find("alpha"));
  CHECK(text.find("\"m\"") < text.find("\"k\""));

  write_json(path.string(), j);
  CHECK(slurp(path) == text);
  std::filesystem::remove(path);
}

TEST_CASE("series and dat writers emit the documented layout", "[io]") {
  const auto csv = temp_file("series.csv");
  write_series_csv(csv.string(), {"t", "mass"}, {{0.0, 1.0}, {0.5, 2.0}});
  CHECK(slurp(csv) == "t,mass\n0,1\n0.5,2\n");

  const auto dat = temp_file("series.dat");
  write_dat(dat.string(), {"t", "mass"}, {{0.0, 1.0}, {0.5, 2.0}});
  CHECK(slurp(dat) == "# t mass\n0 1\n0.5 2\n");

  const GridSpec g = GridSpec::make(16, 16, 2.0 * pi, 2.0, 0.001, 0.01);
  PhaseField f = PhaseField::zeros(g);
  f.at(0, 0) = 3.0;
  const auto fdat = temp_file("field.dat");
  write_field_dat(fdat.string(), f);
  const std::string text = slurp(fdat);
  CHECK(text.rfind("# x v value\n", 0) == 0);
  CHECK(text.find("\n\n") != std::string::npos);  // blank line between x rows

  const auto fcsv = temp_file("field.csv");
  write_field_csv(fcsv.string(), f);
  const std::string csv_text = slurp(fcsv);
  CHECK(csv_text.rfind("x,v,value\n", 0) == 0);
  CHECK(csv_text.find(",3\n") != std::string::npos);

  for (const auto& p : {csv, dat, fdat, fcsv}) std::filesystem::remove(p);
}

TEST_CASE("report serializers expose values and pass flags", "[io]") {
  NormValue v;
  v.value = 2.5L;
  v.tail_bound = 1e-8L;
  v.tail_ratio = 4e-9L;
  v.divergent = false;
  const ordered_json nv = norm_value_json(v);
  CHECK(nv["value"] == 2.5);
  CHECK(nv["divergent"] == false);

  const ordered_json nr = norm_report_json("h_norm", 0.5, 1, v, true);
  CHECK(nr["name"] == "h_norm");
  CHECK(nr["lambda"] == 0.5);
  CHECK(nr["n"] == 1);
  CHECK(nr["pass"] == true);

  GateReport g;
  g.alpha0 = 2.8;
  g.kappa_value = 0.96;
  g.conditions.push_back({"contraction_factor", 0.96, 0.04, true});
  g.conditions.push_back({"norm_gap", -2.5, -3.5, false});
  g.pass = false;
  const ordered_json gj = gate_json(g);
  REQUIRE(gj["conditions"].size() == 2);
  CHECK(gj["conditions"][0]["name"] == "contraction_factor");
  CHECK(gj["conditions"][1]["pass"] == false);
  CHECK(gj["pass"] == false);

  MembershipReport m;
  m.value = 0.1;
  m.tail_bound = 1e-9;
  m.M = 0.25;
  m.pass = true;
  const ordered_json mj = membership_json(m);
  CHECK(mj["M"] == 0.25);
  CHECK(mj["pass"] == true);
}

TEST_CASE("ensure_dir creates nested directories and write_text reports failures", "[io]") {
  const auto root = temp_file("dirs");
  std::filesystem::remove_all(root);
  ensure_dir((root / "a" / "b").string());
  CHECK(std::filesystem::is_directory(root / "a" / "b"));
  std::filesystem::remove_all(root);

  REQUIRE_THROWS_AS(write_text("/nonexistent_dir_vbl/x.txt", "hi"), IoError);
}
