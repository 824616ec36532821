#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "minkprobe/measure.hpp"
#include "minkprobe/polytope.hpp"

namespace minkprobe {

enum class ProjectionMode { Radial, TotalVariation };

std::string_view projection_name(ProjectionMode mode);

struct ExperimentConfig {
  std::string body = "square";             // named body or polytope JSON path
  std::vector<std::size_t> n_schedule;     // strictly increasing
  int trials = 1;
  std::uint64_t seed = 0;
  double noise_radius = 0.0;
  ProjectionMode projection = ProjectionMode::Radial;
  double tol = 1e-6;
  std::filesystem::path out_dir = "out";
  std::string study = "trials";            // trials | scaling | tail
  std::vector<double> epsilons;            // tail study thresholds
  std::size_t threads = 0;                 // 0: MINKPROBE_THREADS / hardware

  void validate() const;
};

// TOML keys: body, N_schedule, trials, seed, noise_radius, projection, tol,
// out_dir; optional study, epsilon, threads. Relative paths (out_dir, body
// files) are resolved against `base_dir`.
ExperimentConfig parse_config(const std::string& toml_text, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

// Body rescaled to unit surface area.
struct PreparedBody {
  std::string id;
  Polytope body;
  DiscreteSphericalMeasure measure;
  double scale = 1.0;  // applied factor mass^{-1/(d-1)}
};

PreparedBody prepare_body(const std::string& spec);

struct TrialRecord {
  std::string body;
  std::size_t n = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  double noise_radius = 0.0;
  double mean_norm = 0.0;
  double d_tv = 0.0;
  double d_bl = 0.0;
  double d_c_lower = 0.0;
  double residual = 0.0;
  double eta = 0.0;  // min-translate Hausdorff error; NaN when no body was produced
  bool converged = false;
  std::string status = "ok";  // or the error name
  double wall_time = 0.0;     // seconds; kept out of results.csv
};

std::uint64_t trial_seed(std::uint64_t master, std::size_t n, int trial);

// sample -> empirical measure -> zero-mean projection -> reconstruction ->
// min-translate Hausdorff against the unit-area body.
TrialRecord run_trial(const PreparedBody& body, const ExperimentConfig& cfg, std::size_t n, int trial);

// All (N, trial) pairs of the schedule, sorted by (N, trial).
std::vector<TrialRecord> run_trials(const PreparedBody& body, const ExperimentConfig& cfg);

std::string results_csv(const std::vector<TrialRecord>& records);
std::string timings_csv(const std::vector<TrialRecord>& records);

struct ScalingPoint {
  std::size_t n = 0;
  double median_eta = 0.0;
  int samples = 0;
  double guarantee_eta = 0.0;  // one-sided general-theorem bound with the fitted constant
  bool within_guarantee = true;
};

struct ScalingResult {
  std::vector<TrialRecord> records;
  std::vector<ScalingPoint> points;
  double slope = 0.0;
  double intercept = 0.0;
  double ci_low = 0.0;  // 95% interval for the slope
  double ci_high = 0.0;
  double predicted_slope = 0.0;  // -1/(2(d-1)) for polytopes
  double general_exponent = 0.0;  // d(1-d)/2 - 2d
};

// Least-squares slope of log(median eta) against log N. Needs >= 3 N values
// and >= 20 trials.
ScalingResult scaling_study(const PreparedBody& body, const ExperimentConfig& cfg);
ScalingResult fit_scaling(int dim, std::vector<TrialRecord> records);

struct TailRow {
  std::size_t n = 0;
  double epsilon = 0.0;
  int trials = 0;
  int exceed_tv = 0;
  double freq_tv = 0.0;
  double bound = 0.0;  // 3 exp(-N eps^2 / 25)
  double sigma = 0.0;  // binomial standard deviation at the bound
  bool applicable = false;  // eps >= sqrt(20 k / N)
  bool holds = true;        // freq_tv <= bound + 3 sigma where applicable
  int exceed_dc = 0;
  double freq_dc = 0.0;
};

std::vector<TailRow> tail_study(const PreparedBody& body, const ExperimentConfig& cfg);
std::string tail_csv(const std::vector<TailRow>& rows);

struct ChengYauRow {
  std::string body;
  int dim = 2;
  double inradius = 0.0;
  double circumradius = 0.0;
  double mass = 0.0;
  double rotundity = 0.0;
  double ratio_outer = 0.0;  // R * rotund / mass^{d/(d-1)}
  double ratio_inner = 0.0;  // r * mass^d / rotund^d
};

ChengYauRow cheng_yau_row(const std::string& name, const Polytope& body);
std::string cheng_yau_csv(const std::vector<ChengYauRow>& rows);

// FNV-1a 64-bit hash as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

struct StudyOutputs {
  std::vector<std::filesystem::path> files;
  std::string summary;  // short human-readable line
};

// Runs cfg.study and writes results.csv (and tail.csv / plots), timings.csv
// and manifest.json into cfg.out_dir. One line per N goes to `log` if given.
StudyOutputs run_experiment(const ExperimentConfig& cfg, const std::string& config_bytes, std::ostream* log = nullptr);

enum class PlotKind { Scaling, Tail };

// Standalone SVG; a pure function of the CSV text.
std::string render_plot(const std::string& csv_text, PlotKind kind);
void emit_plot(const std::filesystem::path& csv_path, PlotKind kind, const std::filesystem::path& svg_path);

}  // namespace minkprobe
