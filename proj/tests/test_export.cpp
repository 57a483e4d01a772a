#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "vibcav/errors.hpp"
#include "vibcav/export.hpp"

using namespace vibcav;

namespace {

const Provenance kProv{"scan --tau 1", {{"tau", "1"}, {"rho", "0.001"}}};

int count_data_lines(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') ++n;
  }
  return n;
}

ScanResult random_scan(std::size_t n, std::uint64_t seed) {
  auto g = oracle::rng(seed);
  ScanResult s;
  for (std::size_t i = 0; i < n; ++i) {
    s.rows.push_back({oracle::log_uniform(g, 1e-3, 1e12), oracle::log_uniform(g, 1e-300, 1e300),
                      oracle::uniform(g, -1.0, 1.0), static_cast<int>(i % 7),
                      static_cast<int>(i % 5), static_cast<std::uint32_t>(i % 16), {}});
  }
  return s;
}

void check_same(const ScanResult& a, const ScanResult& b) {
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const auto& x = a.rows[i];
    const auto& y = b.rows[i];
    CHECK(x.x == y.x);
    if (std::isnan(x.flux_total)) {
      CHECK(std::isnan(y.flux_total));
    } else {
      CHECK(x.flux_total == y.flux_total);
    }
    if (std::isnan(x.flux_nonresonant)) {
      CHECK(std::isnan(y.flux_nonresonant));
    } else {
      CHECK(x.flux_nonresonant == y.flux_nonresonant);
    }
    CHECK(x.dominant_k == y.dominant_k);
    CHECK(x.dominant_kp == y.dominant_kp);
    CHECK(x.flags == y.flags);
    CHECK(x.error == y.error);
  }
}

}  // namespace

TEST_CASE("format_exact") {
  CHECK(format_exact(1.0) == "1.0000000000000000e+00");
  CHECK(format_exact(std::numeric_limits<double>::quiet_NaN()) == "nan");
  auto g = oracle::rng(41);
  for (int i = 0; i < 10000; ++i) {
    const double v = oracle::log_uniform(g, 1e-300, 1e300) * (i % 2 ? -1.0 : 1.0);
    CHECK(std::stod(format_exact(v)) == v);
  }
}

TEST_CASE("scan CSV layout") {
  std::ostringstream empty;
  write_csv(ScanResult{}, kProv, empty);
  CHECK(count_data_lines(empty.str()) == 1);
  CHECK(empty.str().find("# param rho=0.001") != std::string::npos);
  CHECK(empty.str().find("omega,flux_total,flux_nonresonant,dominant_k,dominant_kp,flags,error") !=
        std::string::npos);

  std::ostringstream three;
  write_csv(random_scan(3, 1), kProv, three);
  CHECK(count_data_lines(three.str()) == 4);
}

TEST_CASE("scan round trips") {
  auto scan = random_scan(50, 43);
  scan.rows[3].flux_total = std::numeric_limits<double>::quiet_NaN();
  scan.rows[3].flux_nonresonant = std::numeric_limits<double>::quiet_NaN();
  scan.rows[3].error = "quadrature did not converge, depth 60";
  scan.rows[7].flux_total = 0.0;

  std::stringstream csv;
  write_csv(scan, kProv, csv);
  check_same(scan, read_scan_csv(csv));

  std::stringstream js;
  write_json(scan, kProv, js);
  CHECK(js.str().find("\"schema_version\": 1") != std::string::npos);
  CHECK(js.str().find("null") != std::string::npos);
  check_same(scan, read_scan_json(js));
}

TEST_CASE("spectrum round trips") {
  SpectrumTable t;
  auto g = oracle::rng(47);
  for (int i = 0; i < 100; ++i) {
    t.omega_grid.push_back(0.1 * i + oracle::uniform(g, 0.0, 0.01));
    t.density.push_back(oracle::log_uniform(g, 1e-20, 1e20));
  }
  t.peaks = {{1.5, 2.5, 0.01}, {3.25, 1e-7, 3.3e-4}};
  for (int fmt = 0; fmt < 2; ++fmt) {
    std::stringstream s;
    fmt ? write_json(t, kProv, s) : write_csv(t, kProv, s);
    const auto back = fmt ? read_spectrum_json(s) : read_spectrum_csv(s);
    CHECK(back.omega_grid == t.omega_grid);
    CHECK(back.density == t.density);
    REQUIRE(back.peaks.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(back.peaks[i].center == t.peaks[i].center);
      CHECK(back.peaks[i].height == t.peaks[i].height);
      CHECK(back.peaks[i].fwhm == t.peaks[i].fwhm);
    }
  }
}

TEST_CASE("malformed input is rejected") {
  std::istringstream bad_header("# tool: vibcav\nomega,flux\n1,2\n");
  CHECK_THROWS_AS(read_scan_csv(bad_header), IoError);
  std::istringstream bad_number(
      "omega,flux_total,flux_nonresonant,dominant_k,dominant_kp,flags,error\n1,abc,0,0,0,0,\n");
  CHECK_THROWS_AS(read_scan_csv(bad_number), IoError);
  std::istringstream bad_json("{\"kind\": \"spectrum\"");
  CHECK_THROWS_AS(read_scan_json(bad_json), IoError);
}

TEST_CASE("file destinations") {
  const auto dir = std::filesystem::temp_directory_path() / "vibcav_export_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "scan.json").string();
  const auto scan = random_scan(5, 53);
  export_result(scan, ExportFormat::Json, path, kProv);
  std::ifstream in(path);
  check_same(scan, read_scan_json(in));

  const std::string missing = (dir / "no_such_dir" / "scan.csv").string();
  try {
    export_result(scan, ExportFormat::Csv, missing, kProv);
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find(missing) != std::string::npos);
  }
  std::filesystem::remove_all(dir);
}
