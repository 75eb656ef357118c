// Command-line front end: sample the line, deform samples toward the phase
// tropical line, emit animation frames, and run the verification suite.
//
// Exit codes: 0 success / all checks pass, 1 verification failure, 2 usage or
// I/O error.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tropline/frame_io.hpp"
#include "tropline/isotopy.hpp"
#include "tropline/sampling.hpp"
#include "tropline/verify.hpp"

namespace {

using namespace tropline;

const std::map<std::string, Strategy> kStrategies = {
    {"coamoeba", Strategy::CoamoebaGrid},
    {"amoeba", Strategy::AmoebaLift},
    {"chart", Strategy::ComplexChart},
    {"seams", Strategy::SeamCurves},
};

struct SampleArgs {
  std::string strategy = "coamoeba";
  int n = 100;
  std::uint64_t seed = 0;
  std::string out;
};

struct DeformArgs {
  std::string in;
  double t = 1.0;
  std::string out;
};

struct FramesArgs {
  std::string strategy = "coamoeba";
  int steps = 4;
  int n = 50;
  std::uint64_t seed = 0;
  std::string out_dir;
};

struct VerifyArgs {
  int n = 100;
  std::uint64_t seed = 0;
  int t_steps = 4;
  std::string report;
  bool corrupt_lambda = false;
};

int run_sample(const SampleArgs& args) {
  const SampleSet set = sample_line(kStrategies.at(args.strategy), args.n, args.seed);
  write_frame_file(args.out, frame_rows(set, 0.0));
  std::cout << "wrote " << set.points.size() << " samples to " << args.out << "\n";
  return 0;
}

int run_deform(const DeformArgs& args) {
  const std::vector<FrameRow> rows = read_frame_file(args.in);
  const IsotopyParams params;
  std::vector<FrameRow> mapped;
  mapped.reserve(rows.size());
  std::size_t skipped = 0;
  for (const FrameRow& r : rows) {
    const AmbientPoint p{r.x, r.y, normalize_angle(r.phi), normalize_angle(r.psi)};
    if (!(line_residual(p) < params.membership_tol)) {
      ++skipped;
      continue;
    }
    const AmbientPoint image = psi_t(p, args.t, params);
    FrameRow m = r;
    m.t = args.t;
    m.x = image.x;
    m.y = image.y;
    m.phi = image.phi.radians();
    m.psi = image.psi.radians();
    mapped.push_back(std::move(m));
  }
  if (skipped > 0) {
    std::cerr << "warning: skipped " << skipped
              << " rows that are not on the line\n";
  }
  write_frame_file(args.out, mapped);
  std::cout << "wrote " << mapped.size() << " rows at t=" << args.t << " to "
            << args.out << "\n";
  return 0;
}

int run_frames(const FramesArgs& args) {
  const SampleSet set = sample_line(kStrategies.at(args.strategy), args.n, args.seed);
  std::filesystem::create_directories(args.out_dir);
  const IsotopyParams params;
  for (int j = 0; j <= args.steps; ++j) {
    const double t = static_cast<double>(j) / args.steps;
    std::vector<FrameRow> rows;
    if (j == 0) {
      rows = frame_rows(set, 0.0);
    } else {
      rows.reserve(set.points.size());
      for (std::size_t i = 0; i < set.points.size(); ++i) {
        const AmbientPoint image = psi_t(set.points[i], t, params);
        const RegionTags& tags = set.tags[i];
        rows.push_back(FrameRow{t, image.x, image.y, image.phi.radians(),
                                image.psi.radians(), major_string(tags.major),
                                sub_string(tags.sub), side_string(tags.side)});
      }
    }
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%03d.csv", j);
    write_frame_file(std::filesystem::path(args.out_dir) / name, rows);
  }
  std::cout << "wrote " << args.steps + 1 << " frames to " << args.out_dir << "\n";
  return 0;
}

int run_verify(const VerifyArgs& args) {
  SuiteOptions opts;
  opts.seed = args.seed;
  opts.t_grid.clear();
  for (int j = 0; j <= args.t_steps; ++j) {
    opts.t_grid.push_back(static_cast<double>(j) / args.t_steps);
  }
  if (args.corrupt_lambda) opts.lambda_corruption = 1e-3;
  const std::vector<SampleSet> sets = {
      sample_line(Strategy::CoamoebaGrid, args.n, args.seed),
      sample_line(Strategy::SeamCurves, args.n, args.seed),
  };
  const VerificationReport report = run_suite(sets, opts);
  for (const CheckResult& c : report.checks) {
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name
              << " max_residual=" << c.max_residual << " tol=" << c.tolerance
              << " n=" << c.sample_count << "\n";
  }
  std::cout << (report.overall ? "overall: pass" : "overall: FAIL") << "\n";
  if (!args.report.empty()) write_report_file(args.report, report);
  return report.overall ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"The line 1 + z1 + z2 = 0, its phase tropical limit, and the "
               "deformation between them"};
  app.require_subcommand(1);

  SampleArgs sample_args;
  CLI::App* sample = app.add_subcommand("sample", "Sample the line and write a frame file");
  sample->add_option("--strategy", sample_args.strategy, "coamoeba | amoeba | chart | seams")
      ->check(CLI::IsMember({"coamoeba", "amoeba", "chart", "seams"}));
  sample->add_option("--n", sample_args.n, "grid resolution per axis / per curve")
      ->check(CLI::PositiveNumber);
  sample->add_option("--seed", sample_args.seed, "seed recorded with the set");
  sample->add_option("--out", sample_args.out, "output CSV path")->required();

  DeformArgs deform_args;
  CLI::App* deform = app.add_subcommand("deform", "Map a frame file by the deformation at time t");
  deform->add_option("--in", deform_args.in, "input frame file (t = 0 rows)")->required();
  deform->add_option("--t", deform_args.t, "deformation time in [0, 1]")
      ->check(CLI::Range(0.0, 1.0))
      ->required();
  deform->add_option("--out", deform_args.out, "output CSV path")->required();

  FramesArgs frames_args;
  CLI::App* frames = app.add_subcommand("frames", "Write frames at t = 0, 1/K, ..., 1");
  frames->add_option("--steps", frames_args.steps, "number of steps K")
      ->check(CLI::PositiveNumber);
  frames->add_option("--n", frames_args.n, "grid resolution")->check(CLI::PositiveNumber);
  frames->add_option("--seed", frames_args.seed, "seed recorded with the set");
  frames->add_option("--strategy", frames_args.strategy, "coamoeba | amoeba | chart | seams")
      ->check(CLI::IsMember({"coamoeba", "amoeba", "chart", "seams"}));
  frames->add_option("--out-dir", frames_args.out_dir, "output directory")->required();

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify", "Run the verification suite");
  verify->add_option("--n", verify_args.n, "grid resolution per axis")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", verify_args.seed, "seed for randomized sweeps");
  verify->add_option("--t-steps", verify_args.t_steps, "number of time steps")
      ->check(CLI::PositiveNumber);
  verify->add_option("--report", verify_args.report, "write the report as JSON");
  verify
      ->add_flag("--corrupt-lambda", verify_args.corrupt_lambda,
                 "fault injection: perturb the order-3 map inside its own "
                 "check (the run must then fail)")
      ->group("");  // self-test hook, hidden from --help

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (sample->parsed()) return run_sample(sample_args);
    if (deform->parsed()) return run_deform(deform_args);
    if (frames->parsed()) return run_frames(frames_args);
    if (verify->parsed()) return run_verify(verify_args);
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
