// minkprobe: command line front end for the reconstruction pipeline.
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "minkprobe/distances.hpp"
#include "minkprobe/errors.hpp"
#include "minkprobe/experiments.hpp"
#include "minkprobe/hausdorff.hpp"
#include "minkprobe/io.hpp"
#include "minkprobe/measure.hpp"
#include "minkprobe/minkowski.hpp"
#include "minkprobe/shapes.hpp"

namespace mp = minkprobe;

namespace {

const CLI::Validator kBodySpec(
    [](std::string& s) -> std::string {
      if (mp::is_named_body(s) || std::filesystem::is_regular_file(s)) return {};
      return "not a named body or an existing file: " + s;
    },
    "BODY");

std::string num(double x) { return fmt::format("{}", x); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex body reconstruction from sampled outer normals"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", std::string(MINKPROBE_CLI_VERSION));

  std::string body, measure_path, out_path, report_path, a_path, b_path, mode = "radial", which = "tv";
  std::string config_path, csv_path, kind = "scaling";
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double noise = 0.0, tol = 1e-6;
  bool min_translate = false;

  auto* sample = app.add_subcommand("sample", "Draw N outer normals of a body");
  sample->add_option("--body", body, "Named body or polytope JSON")->required()->check(kBodySpec);
  sample->add_option("--n", n, "Number of normals")->required();
  sample->add_option("--seed", seed, "Master seed")->required();
  sample->add_option("--noise", noise, "Noise radius")->check(CLI::NonNegativeNumber);
  sample->add_option("--out", out_path, "Output normals JSON")->required();

  auto* project = app.add_subcommand("project", "Zero-mean projection of a measure");
  project->add_option("--measure", measure_path)->required()->check(CLI::ExistingFile);
  project->add_option("--mode", mode)->check(CLI::IsMember({"radial", "tv"}));
  project->add_option("--out", out_path)->required();

  auto* reconstruct = app.add_subcommand("reconstruct", "Polytope with a given surface area measure");
  reconstruct->add_option("--measure", measure_path)->required()->check(CLI::ExistingFile);
  reconstruct->add_option("--tol", tol)->check(CLI::PositiveNumber);
  reconstruct->add_option("--out", out_path, "Output body JSON");
  reconstruct->add_option("--report", report_path, "Output report JSON");

  auto* distance = app.add_subcommand("distance", "Distance between two measures");
  distance->add_option("--a", a_path)->required()->check(CLI::ExistingFile);
  distance->add_option("--b", b_path)->required()->check(CLI::ExistingFile);
  distance->add_option("--which", which)->check(CLI::IsMember({"tv", "bl", "cd"}));
  distance->add_option("--out", out_path, "Output report JSON");

  auto* hausdorff = app.add_subcommand("hausdorff", "Hausdorff distance between two polytopes");
  hausdorff->add_option("--a", a_path)->required()->check(kBodySpec);
  hausdorff->add_option("--b", b_path)->required()->check(kBodySpec);
  hausdorff->add_flag("--min-translate", min_translate, "Minimize over translations of A");

  auto* experiment = app.add_subcommand("experiment", "Run a configured study");
  experiment->add_option("--config", config_path)->required()->check(CLI::ExistingFile);

  auto* plot = app.add_subcommand("plot", "Render a study CSV as SVG");
  plot->add_option("--csv", csv_path)->required()->check(CLI::ExistingFile);
  plot->add_option("--kind", kind)->check(CLI::IsMember({"scaling", "tail"}));
  plot->add_option("--out", out_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sample->parsed()) {
      const mp::Polytope P = mp::load_body(body);
      mp::write_json_file(out_path, mp::normals_to_json(P.dim(), mp::sample_normals(P, n, seed, noise)));
    } else if (project->parsed()) {
      const auto mu = mp::measure_from_json(mp::read_json_file(measure_path));
      const auto projected =
          mode == "radial" ? mp::zero_mean_project_radial(mu) : mp::zero_mean_project_tv(mu).measure;
      mp::write_json_file(out_path, mp::measure_to_json(projected));
    } else if (reconstruct->parsed()) {
      const auto mu = mp::measure_from_json(mp::read_json_file(measure_path));
      mp::SolverOptions options;
      options.tol = tol;
      const auto report = mp::reconstruct(mu, options);
      if (!out_path.empty()) mp::write_json_file(out_path, mp::polytope_to_json(report.body));
      if (!report_path.empty()) mp::write_json_file(report_path, mp::report_to_json(report));
      std::cout << fmt::format("residual {} iterations {} converged {}\n", num(report.residual), report.iterations,
                               report.converged);
    } else if (distance->parsed()) {
      const auto mu = mp::measure_from_json(mp::read_json_file(a_path));
      const auto nu = mp::measure_from_json(mp::read_json_file(b_path));
      const auto k = which == "tv"   ? mp::DistanceKind::TotalVariation
                     : which == "bl" ? mp::DistanceKind::BoundedLipschitz
                                     : mp::DistanceKind::Convex;
      const auto report = mp::distance_report(mu, nu, k);
      if (!out_path.empty()) mp::write_json_file(out_path, report);
      if (k == mp::DistanceKind::TotalVariation)
        std::cout << num(report["d_tv"].get<double>()) << "\n";
      else if (k == mp::DistanceKind::BoundedLipschitz)
        std::cout << num(report["d_bl"].get<double>()) << "\n";
      else
        std::cout << num(report["d_c"]["lower"].get<double>()) << " " << num(report["d_c"]["upper"].get<double>())
                  << "\n";
    } else if (hausdorff->parsed()) {
      const mp::Polytope A = mp::load_body(a_path);
      const mp::Polytope B = mp::load_body(b_path);
      std::cout << num(min_translate ? mp::min_translate_hausdorff(A, B).value : mp::hausdorff(A, B)) << "\n";
    } else if (experiment->parsed()) {
      const std::string text = mp::read_text_file(config_path);
      const auto cfg = mp::parse_config(text, std::filesystem::path(config_path).parent_path());
      const auto body_info = mp::prepare_body(cfg.body);
      std::cerr << fmt::format("body {} rescaled to unit surface area by factor {}\n", body_info.id,
                               num(body_info.scale));
      const auto result = mp::run_experiment(cfg, text, &std::cerr);
      std::cout << result.summary << "\n";
      for (const auto& f : result.files) std::cout << f.string() << "\n";
    } else if (plot->parsed()) {
      mp::emit_plot(csv_path, kind == "scaling" ? mp::PlotKind::Scaling : mp::PlotKind::Tail, out_path);
    }
  } catch (const mp::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "MalformedInput: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
