#include "minkprobe/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include <fmt/format.h>
#include <toml.hpp>

#include "minkprobe/balls.hpp"
#include "minkprobe/distances.hpp"
#include "minkprobe/errors.hpp"
#include "minkprobe/hausdorff.hpp"
#include "minkprobe/io.hpp"
#include "minkprobe/minkowski.hpp"
#include "minkprobe/parallel.hpp"
#include "minkprobe/random.hpp"
#include "minkprobe/shapes.hpp"
#include <nlohmann/json.hpp>

#ifndef MINKPROBE_VERSION
#define MINKPROBE_VERSION "unknown"
#endif

namespace minkprobe {

std::string_view projection_name(ProjectionMode mode) {
  return mode == ProjectionMode::Radial ? "radial" : "tv";
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be at least 1");
  for (std::size_t i = 1; i < n_schedule.size(); ++i)
    if (n_schedule[i] <= n_schedule[i - 1]) throw Error(ErrorCode::InvalidArgument, "N_schedule must be strictly increasing");
  if (!(noise_radius >= 0.0)) throw Error(ErrorCode::InvalidArgument, "noise_radius must be non-negative");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  if (study != "trials" && study != "scaling" && study != "tail")
    throw Error(ErrorCode::InvalidArgument, "study must be trials, scaling or tail");
  if (study == "tail" && epsilons.empty()) throw Error(ErrorCode::InvalidArgument, "tail study needs 'epsilon'");
}

ExperimentConfig parse_config(const std::string& toml_text, const std::filesystem::path& base_dir) {
  toml::table tbl;
  try {
    tbl = toml::parse(toml_text);
  } catch (const toml::parse_error& e) {
    throw Error(ErrorCode::MalformedInput, std::string("config is not valid TOML: ") + std::string(e.description()));
  }
  auto bad = [](const std::string& key) { throw Error(ErrorCode::MalformedInput, "config key '" + key + "' has the wrong type"); };
  ExperimentConfig cfg;
  for (const char* key : {"body", "N_schedule", "trials", "seed"})
    if (!tbl.contains(key)) throw Error(ErrorCode::MalformedInput, std::string("config is missing '") + key + "'");

  if (auto v = tbl["body"].value<std::string>())
    cfg.body = *v;
  else
    bad("body");
  if (!is_named_body(cfg.body) && !base_dir.empty() && std::filesystem::path(cfg.body).is_relative())
    cfg.body = (base_dir / cfg.body).string();

  if (auto* arr = tbl["N_schedule"].as_array()) {
    for (const auto& el : *arr) {
      auto n = el.value<std::int64_t>();
      if (!n || *n < 0) bad("N_schedule");
      cfg.n_schedule.push_back(static_cast<std::size_t>(*n));
    }
  } else {
    bad("N_schedule");
  }
  if (auto v = tbl["trials"].value<std::int64_t>())
    cfg.trials = static_cast<int>(*v);
  else
    bad("trials");
  if (auto v = tbl["seed"].value<std::int64_t>(); v && *v >= 0)
    cfg.seed = static_cast<std::uint64_t>(*v);
  else
    bad("seed");
  if (tbl.contains("noise_radius")) {
    if (auto v = tbl["noise_radius"].value<double>())
      cfg.noise_radius = *v;
    else
      bad("noise_radius");
  }
  if (tbl.contains("projection")) {
    const auto v = tbl["projection"].value<std::string>();
    if (v == "radial")
      cfg.projection = ProjectionMode::Radial;
    else if (v == "tv")
      cfg.projection = ProjectionMode::TotalVariation;
    else
      bad("projection");
  }
  if (tbl.contains("tol")) {
    if (auto v = tbl["tol"].value<double>())
      cfg.tol = *v;
    else
      bad("tol");
  }
  if (tbl.contains("out_dir")) {
    if (auto v = tbl["out_dir"].value<std::string>())
      cfg.out_dir = *v;
    else
      bad("out_dir");
  }
  if (!base_dir.empty() && cfg.out_dir.is_relative()) cfg.out_dir = base_dir / cfg.out_dir;
  if (tbl.contains("study")) {
    if (auto v = tbl["study"].value<std::string>())
      cfg.study = *v;
    else
      bad("study");
  }
  if (tbl.contains("epsilon")) {
    if (auto* arr = tbl["epsilon"].as_array()) {
      for (const auto& el : *arr) {
        auto e = el.value<double>();
        if (!e) bad("epsilon");
        cfg.epsilons.push_back(*e);
      }
    } else if (auto v = tbl["epsilon"].value<double>()) {
      cfg.epsilons.push_back(*v);
    } else {
      bad("epsilon");
    }
  }
  if (tbl.contains("threads")) {
    auto v = tbl["threads"].value<std::int64_t>();
    if (!v || *v < 0) bad("threads");
    cfg.threads = static_cast<std::size_t>(*v);
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_text_file(path), path.parent_path());
}

PreparedBody prepare_body(const std::string& spec) {
  const Polytope raw = load_body(spec);
  const double mass = surface_area(raw);
  const double scale = std::pow(mass, -1.0 / (raw.dim() - 1));
  PreparedBody out{is_named_body(spec) ? spec : std::filesystem::path(spec).stem().string(), raw.scaled(scale), {}, scale};
  out.measure = surface_area_measure(out.body);
  return out;
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t n, int trial) {
  return derive_seed(master, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(trial));
}

TrialRecord run_trial(const PreparedBody& body, const ExperimentConfig& cfg, std::size_t n, int trial) {
  const auto start = std::chrono::steady_clock::now();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  TrialRecord r;
  r.body = body.id;
  r.n = n;
  r.trial = trial;
  r.seed = trial_seed(cfg.seed, n, trial);
  r.noise_radius = cfg.noise_radius;
  r.mean_norm = r.d_tv = r.d_bl = r.d_c_lower = r.residual = r.eta = nan;
  try {
    const auto normals = sample_normals(body.body, n, r.seed, cfg.noise_radius);
    const auto empirical = empirical_measure(body.body.dim(), normals);
    r.mean_norm = empirical.mean().norm();
    r.d_tv = d_tv(empirical, body.measure);
    r.d_bl = d_bl(empirical, body.measure);
    r.d_c_lower = d_c_lower(empirical, body.measure).value;
    if (support_in_hyperplane(empirical))
      throw Error(ErrorCode::DegenerateSupport, "sampled normals lie in a hyperplane");
    const DiscreteSphericalMeasure projected = cfg.projection == ProjectionMode::Radial
                                                   ? zero_mean_project_radial(empirical)
                                                   : zero_mean_project_tv(empirical).measure;
    SolverOptions options;
    options.tol = cfg.tol;
    const ReconstructionReport rep = reconstruct(projected, options);
    r.residual = rep.residual;
    r.converged = rep.converged;
    if (!rep.converged) r.status = "MaxIterations";
    r.eta = min_translate_hausdorff(body.body, rep.body).value;
  } catch (const Error& e) {
    r.status = std::string(e.name());
    r.converged = false;
  }
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<TrialRecord> run_trials(const PreparedBody& body, const ExperimentConfig& cfg) {
  std::vector<std::pair<std::size_t, int>> tasks;
  for (std::size_t n : cfg.n_schedule)
    for (int t = 0; t < cfg.trials; ++t) tasks.emplace_back(n, t);
  std::vector<TrialRecord> records(tasks.size());
  parallel_for(tasks.size(), cfg.threads,
               [&](std::size_t i) { records[i] = run_trial(body, cfg, tasks[i].first, tasks[i].second); });
  return records;
}

namespace {

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  return fmt::format("{}", x);
}

void log_per_n(const std::vector<TrialRecord>& records, std::ostream* log) {
  if (!log) return;
  for (std::size_t i = 0; i < records.size();) {
    std::size_t j = i;
    std::vector<double> etas;
    int failures = 0;
    double seconds = 0.0;
    for (; j < records.size() && records[j].n == records[i].n; ++j) {
      if (std::isnan(records[j].eta))
        ++failures;
      else
        etas.push_back(records[j].eta);
      seconds += records[j].wall_time;
    }
    double median = std::numeric_limits<double>::quiet_NaN();
    if (!etas.empty()) {
      std::sort(etas.begin(), etas.end());
      const std::size_t m = etas.size();
      median = m % 2 ? etas[m / 2] : 0.5 * (etas[m / 2 - 1] + etas[m / 2]);
    }
    *log << fmt::format("N={} trials={} failed={} median_eta={:.6g} cpu={:.2f}s\n", records[i].n, j - i, failures,
                        median, seconds);
    i = j;
  }
}

}  // namespace

std::string results_csv(const std::vector<TrialRecord>& records) {
  std::string out = "body,N,trial,seed,noise_radius,mean_norm,d_tv,d_bl,d_c_lower,residual,eta,converged,status\n";
  for (const auto& r : records) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.body, r.n, r.trial, r.seed,
                       num(r.noise_radius), num(r.mean_norm),
                       num(r.d_tv), num(r.d_bl), num(r.d_c_lower), num(r.residual), num(r.eta),
                       r.converged ? "true" : "false", r.status);
  }
  return out;
}

std::string timings_csv(const std::vector<TrialRecord>& records) {
  std::string out = "body,N,trial,wall_time_s\n";
  for (const auto& r : records) out += fmt::format("{},{},{},{:.6f}\n", r.body, r.n, r.trial, r.wall_time);
  return out;
}

ChengYauRow cheng_yau_row(const std::string& name, const Polytope& body) {
  ChengYauRow row;
  row.body = name;
  row.dim = body.dim();
  row.inradius = inradius(body);
  row.circumradius = circumradius(body);
  row.mass = surface_area(body);
  row.rotundity = rotundity(surface_area_measure(body)).value;
  const double d = body.dim();
  row.ratio_outer = row.circumradius * row.rotundity / std::pow(row.mass, d / (d - 1.0));
  row.ratio_inner = row.inradius * std::pow(row.mass, d) / std::pow(row.rotundity, d);
  return row;
}

std::string cheng_yau_csv(const std::vector<ChengYauRow>& rows) {
  std::string out = "body,dim,inradius,circumradius,mass,rotundity,ratio_outer,ratio_inner\n";
  for (const auto& r : rows)
    out += fmt::format("{},{},{},{},{},{},{},{}\n", r.body, r.dim, num(r.inradius), num(r.circumradius), num(r.mass),
                       num(r.rotundity), num(r.ratio_outer), num(r.ratio_inner));
  return out;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

StudyOutputs run_experiment(const ExperimentConfig& cfg, const std::string& config_bytes, std::ostream* log) {
  cfg.validate();
  const PreparedBody body = prepare_body(cfg.body);
  StudyOutputs out;
  using json = nlohmann::json;
  json manifest;
  manifest["config_hash"] = fnv1a_hex(config_bytes);
  manifest["library_version"] = MINKPROBE_VERSION;
  manifest["study"] = cfg.study;
  manifest["body"] = body.id;
  manifest["body_scale"] = body.scale;
  manifest["projection"] = std::string(projection_name(cfg.projection));

  auto write = [&](const std::string& name, const std::string& text) {
    const auto path = cfg.out_dir / name;
    write_text_file(path, text);
    out.files.push_back(path);
  };

  if (cfg.study == "tail") {
    const auto rows = tail_study(body, cfg);
    const std::string csv = tail_csv(rows);
    write("tail.csv", csv);
    if (!rows.empty()) write("tail.svg", render_plot(csv, PlotKind::Tail));
    int violations = 0, applicable = 0;
    for (const auto& r : rows) {
      applicable += r.applicable;
      violations += r.applicable && !r.holds;
    }
    manifest["summary"] = {{"applicable_cells", applicable}, {"violations", violations}};
    out.summary = fmt::format("tail study: {} applicable cells, {} violations", applicable, violations);
  } else if (cfg.study == "scaling") {
    const ScalingResult res = scaling_study(body, cfg);
    log_per_n(res.records, log);
    const std::string csv = results_csv(res.records);
    write("results.csv", csv);
    write("timings.csv", timings_csv(res.records));
    write("scaling.svg", render_plot(csv, PlotKind::Scaling));
    json points = json::array();
    for (const auto& p : res.points)
      points.push_back({{"N", p.n},
                        {"median_eta", p.median_eta},
                        {"samples", p.samples},
                        {"guarantee_eta", p.guarantee_eta},
                        {"within_guarantee", p.within_guarantee}});
    manifest["summary"] = {{"slope", res.slope},
                           {"ci", {res.ci_low, res.ci_high}},
                           {"predicted_slope", res.predicted_slope},
                           {"general_exponent", res.general_exponent},
                           {"points", points}};
    out.summary = fmt::format("scaling slope {:.4f} (95% CI [{:.4f}, {:.4f}], predicted {:.4f})", res.slope,
                              res.ci_low, res.ci_high, res.predicted_slope);
  } else {
    const auto records = run_trials(body, cfg);
    log_per_n(records, log);
    write("results.csv", results_csv(records));
    write("timings.csv", timings_csv(records));
    int converged = 0;
    for (const auto& r : records) converged += r.converged;
    manifest["summary"] = {{"trials", records.size()}, {"converged", converged}};
    out.summary = fmt::format("{} trials, {} converged", records.size(), converged);
  }
  json files = json::array();
  for (const auto& f : out.files) files.push_back(f.filename().string());
  files.push_back("manifest.json");
  manifest["outputs"] = files;
  // Timings depend on the machine; the manifest must not.
  write("manifest.json", manifest.dump(2) + "\n");
  return out;
}

}  // namespace minkprobe
