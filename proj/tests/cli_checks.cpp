// End-to-end checks of the command-line tool. Takes the binary path as
// argv[1], drives it through temp files, and verifies outputs and exit codes.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "tropline/frame_io.hpp"
#include "tropline/isotopy.hpp"
#include "tropline/phase_tropical.hpp"

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << what << "\n";
  if (!ok) ++failures;
}

int run(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return -1;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_checks <path-to-cli>\n";
    return 64;
  }
  const std::string cli = argv[1];
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "tropline_cli_checks";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto path = [&](const char* name) { return (dir / name).string(); };
  const std::string quiet = " > /dev/null 2>&1";

  using namespace tropline;

  // sample: determinism and row validity.
  check(run(cli + " sample --strategy coamoeba --n 20 --out " + path("a.csv") + quiet) == 0,
        "sample exits 0");
  check(run(cli + " sample --strategy coamoeba --n 20 --out " + path("b.csv") + quiet) == 0,
        "sample twice exits 0");
  check(slurp(path("a.csv")) == slurp(path("b.csv")),
        "identical flags produce identical files");
  {
    const auto rows = read_frame_file(path("a.csv"));
    bool on_line = !rows.empty();
    for (const FrameRow& r : rows) {
      const AmbientPoint p{r.x, r.y, normalize_angle(r.phi), normalize_angle(r.psi)};
      on_line = on_line && r.t == 0.0 && line_residual(p) < 1e-9;
    }
    check(on_line, "sampled rows are on the line with t = 0");
  }
  check(run(cli + " sample --strategy coamoeba --n 0 --out " + path("zero.csv") + quiet) == 2,
        "sample --n 0 is a usage error (exit 2)");
  check(run(cli + " sample --strategy nonsense --n 5 --out " + path("x.csv") + quiet) == 2,
        "unknown strategy is a usage error (exit 2)");

  // deform: t = 0 is the identity up to tolerance, t = 1 lands on the
  // tropical line.
  check(run(cli + " deform --in " + path("a.csv") + " --t 0 --out " + path("t0.csv") + quiet) == 0,
        "deform --t 0 exits 0");
  {
    const auto before = read_frame_file(path("a.csv"));
    const auto after = read_frame_file(path("t0.csv"));
    bool same = before.size() == after.size();
    for (std::size_t i = 0; same && i < before.size(); ++i) {
      same = std::fabs(before[i].x - after[i].x) < 1e-12 &&
             std::fabs(before[i].y - after[i].y) < 1e-12 &&
             circle_distance(normalize_angle(before[i].phi),
                             normalize_angle(after[i].phi)) < 1e-12 &&
             circle_distance(normalize_angle(before[i].psi),
                             normalize_angle(after[i].psi)) < 1e-12 &&
             after[i].t == 0.0;
    }
    check(same, "deform --t 0 reproduces the input rows");
  }
  check(run(cli + " deform --in " + path("a.csv") + " --t 1 --out " + path("t1.csv") + quiet) == 0,
        "deform --t 1 exits 0");
  {
    const auto rows = read_frame_file(path("t1.csv"));
    bool landed = !rows.empty();
    for (const FrameRow& r : rows) {
      const AmbientPoint p{r.x, r.y, normalize_angle(r.phi), normalize_angle(r.psi)};
      landed = landed && htrop_distance(p).distance < 1e-8;
    }
    check(landed, "deform --t 1 rows are on the phase tropical line");
  }
  {
    // A row off the line is skipped with a warning, not silently mapped.
    std::ofstream out(path("bad.csv"));
    out << kFrameHeader << "\n";
    out << "0,0,0,0,0,h3,,\n";  // arguments (0,0): residual 3
    out.close();
    check(run(cli + " deform --in " + path("bad.csv") + " --t 0.5 --out " +
              path("bad_out.csv") + quiet) == 0,
          "deform skips off-line rows and exits 0");
    check(read_frame_file(path("bad_out.csv")).empty(),
          "off-line rows are dropped from the output");
  }

  {
    // The origin-fiber row is a fixed point of the deformation.
    std::ofstream out(path("fiber.csv"));
    out << kFrameHeader << "\n";
    const AmbientPoint o{0.0, 0.0, normalize_angle(2.0 * kPi / 3.0),
                         normalize_angle(4.0 * kPi / 3.0)};
    out << "0,0,0," << detail::format_double(o.phi.radians()) << ","
        << detail::format_double(o.psi.radians()) << ",h1|h2|h3,tri,lo\n";
    out.close();
    check(run(cli + " deform --in " + path("fiber.csv") + " --t 0.5 --out " +
              path("fiber_out.csv") + quiet) == 0,
          "deform on the origin fiber exits 0");
    const auto rows = read_frame_file(path("fiber_out.csv"));
    bool fixed = rows.size() == 1;
    if (fixed) {
      const AmbientPoint image{rows[0].x, rows[0].y, normalize_angle(rows[0].phi),
                               normalize_angle(rows[0].psi)};
      fixed = ambient_distance(image, o) < 1e-12;
    }
    check(fixed, "the origin-fiber row is unchanged at t = 0.5");
  }

  // frames: K+1 files, frame 0 equals the sample file.
  check(run(cli + " frames --steps 4 --n 12 --out-dir " + path("frames") + quiet) == 0,
        "frames exits 0");
  {
    bool all = true;
    for (int j = 0; j <= 4; ++j) {
      char name[32];
      std::snprintf(name, sizeof(name), "frames/frame_%03d.csv", j);
      all = all && std::filesystem::exists(dir / name);
    }
    check(all, "frames writes steps+1 files");
    check(run(cli + " sample --strategy coamoeba --n 12 --out " + path("s12.csv") + quiet) == 0,
          "matching sample run exits 0");
    check(slurp(path("s12.csv")) == slurp(dir / "frames/frame_000.csv"),
          "frame 0 equals the sample file byte for byte");
    check(!std::filesystem::exists(dir / "frames/frame_005.csv"),
          "frames writes no extra files");
    const auto f0 = read_frame_file(dir / "frames/frame_000.csv");
    const auto f4 = read_frame_file(dir / "frames/frame_004.csv");
    bool endpoint = f0.size() == f4.size() && !f4.empty();
    for (const FrameRow& r : f4) {
      const AmbientPoint p{r.x, r.y, normalize_angle(r.phi), normalize_angle(r.psi)};
      endpoint = endpoint && htrop_distance(p).distance < 1e-8 && r.t == 1.0;
    }
    check(endpoint, "final frame lands on the phase tropical line");
  }

  // verify: report schema, exit codes, fault injection.
  check(run(cli + " verify --n 24 --t-steps 2 --report " + path("report.json") + quiet) == 0,
        "verify exits 0 with default tolerances");
  {
    nlohmann::json j;
    std::ifstream in(path("report.json"));
    bool parsed = static_cast<bool>(in >> j);
    check(parsed && j.contains("checks") && j.contains("overall") &&
              j["overall"].get<bool>(),
          "verify report is schema-stable json with overall pass");
  }
  check(run(cli + " verify --n 24 --t-steps 2 --corrupt-lambda --report " +
            path("corrupt.json") + quiet) == 1,
        "corrupted order-3 map makes verify exit 1");
  {
    nlohmann::json j;
    std::ifstream in(path("corrupt.json"));
    bool order_failed = false;
    if (in >> j) {
      for (const auto& c : j["checks"]) {
        if (c["name"] == "lambda_order_three" && c["pass"] == false) {
          order_failed = true;
        }
      }
    }
    check(order_failed, "the order-3 check is the one that fails");
  }
  check(run(cli + " verify --n 24 --t-steps 1" + quiet) == 0,
        "the minimum time grid still checks both endpoints");
  check(run(cli + " verify --n 24 --report /nonexistent-dir/r.json" + quiet) == 2,
        "unwritable report path is an I/O error (exit 2)");

  std::filesystem::remove_all(dir);
  if (failures == 0) std::cout << "cli_checks: all pass\n";
  return failures;
}
