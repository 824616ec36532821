#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <boost/math/distributions/students_t.hpp>
#include <fmt/format.h>

#include "minkprobe/distances.hpp"
#include "minkprobe/errors.hpp"
#include "minkprobe/experiments.hpp"
#include "minkprobe/parallel.hpp"

namespace minkprobe {

namespace {

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size();
  return m % 2 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  return fmt::format("{}", x);
}

}  // namespace

ScalingResult fit_scaling(int dim, std::vector<TrialRecord> records) {
  std::map<std::size_t, std::vector<double>> by_n;
  std::map<std::size_t, int> trials_per_n;
  for (const auto& r : records) {
    ++trials_per_n[r.n];
    if (std::isfinite(r.eta)) by_n[r.n].push_back(r.eta);
  }
  if (trials_per_n.size() < 3) throw Error(ErrorCode::InsufficientTrials, "scaling fit needs at least 3 values of N");
  for (const auto& [n, t] : trials_per_n)
    if (t < 20) throw Error(ErrorCode::InsufficientTrials, "scaling fit needs at least 20 trials per N");

  ScalingResult res;
  res.records = std::move(records);
  res.predicted_slope = -1.0 / (2.0 * (dim - 1));
  res.general_exponent = dim * (1.0 - dim) / 2.0 - 2.0 * dim;

  std::vector<double> xs, ys;
  for (const auto& [n, etas] : by_n) {
    ScalingPoint p;
    p.n = n;
    p.samples = static_cast<int>(etas.size());
    p.median_eta = etas.empty() ? std::numeric_limits<double>::quiet_NaN() : median_of(etas);
    res.points.push_back(p);
    if (n > 0 && p.median_eta > 0.0) {
      xs.push_back(std::log(static_cast<double>(n)));
      ys.push_back(std::log(p.median_eta));
    }
  }
  if (xs.size() < 3) throw Error(ErrorCode::InsufficientTrials, "fewer than 3 N values produced positive errors");

  const double k = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  res.slope = sxy / sxx;
  res.intercept = my - res.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - res.intercept - res.slope * xs[i];
    sse += e * e;
  }
  const double se = std::sqrt(sse / (k - 2.0) / sxx);
  const boost::math::students_t t(k - 2.0);
  const double q = boost::math::quantile(boost::math::complement(t, 0.025));
  res.ci_low = res.slope - q * se;
  res.ci_high = res.slope + q * se;

  // N = C eta^e with C fitted at the smallest usable N.
  const ScalingPoint* anchor = nullptr;
  for (const auto& p : res.points)
    if (p.n > 0 && p.median_eta > 0.0) {
      anchor = &p;
      break;
    }
  for (auto& p : res.points) {
    if (p.n == 0 || !(p.median_eta > 0.0)) continue;
    p.guarantee_eta =
        anchor->median_eta * std::pow(static_cast<double>(p.n) / anchor->n, 1.0 / res.general_exponent);
    p.within_guarantee = p.median_eta <= p.guarantee_eta * (1.0 + 1e-12);
  }
  return res;
}

ScalingResult scaling_study(const PreparedBody& body, const ExperimentConfig& cfg) {
  if (cfg.n_schedule.size() < 3) throw Error(ErrorCode::InsufficientTrials, "scaling study needs at least 3 values of N");
  if (cfg.trials < 20) throw Error(ErrorCode::InsufficientTrials, "scaling study needs at least 20 trials");
  return fit_scaling(body.body.dim(), run_trials(body, cfg));
}

std::vector<TailRow> tail_study(const PreparedBody& body, const ExperimentConfig& cfg) {
  struct Sample {
    double tv = 0.0;
    double dc = 0.0;
  };
  std::vector<std::pair<std::size_t, int>> tasks;
  for (std::size_t n : cfg.n_schedule)
    if (n > 0)
      for (int t = 0; t < cfg.trials; ++t) tasks.emplace_back(n, t);
  std::vector<Sample> samples(tasks.size());
  const int dim = body.body.dim();
  parallel_for(tasks.size(), cfg.threads, [&](std::size_t i) {
    const auto [n, t] = tasks[i];
    const auto normals = sample_normals(body.body, n, trial_seed(cfg.seed, n, t), cfg.noise_radius);
    const auto emp = empirical_measure(dim, normals);
    samples[i] = {d_tv(emp, body.measure), d_c_lower(emp, body.measure).value};
  });

  const double k = static_cast<double>(body.measure.atoms().size());
  std::vector<TailRow> rows;
  std::size_t base = 0;
  for (std::size_t n : cfg.n_schedule) {
    if (n == 0) continue;
    for (double eps : cfg.epsilons) {
      TailRow row;
      row.n = n;
      row.epsilon = eps;
      row.trials = cfg.trials;
      for (int t = 0; t < cfg.trials; ++t) {
        row.exceed_tv += samples[base + t].tv >= eps;
        row.exceed_dc += samples[base + t].dc >= eps;
      }
      row.freq_tv = static_cast<double>(row.exceed_tv) / cfg.trials;
      row.freq_dc = static_cast<double>(row.exceed_dc) / cfg.trials;
      row.bound = 3.0 * std::exp(-static_cast<double>(n) * eps * eps / 25.0);
      const double p = std::min(row.bound, 1.0);
      row.sigma = std::sqrt(p * (1.0 - p) / cfg.trials);
      row.applicable = eps >= std::sqrt(20.0 * k / static_cast<double>(n)) * (1.0 - 1e-12);
      row.holds = !row.applicable || row.freq_tv <= row.bound + 3.0 * row.sigma;
      rows.push_back(row);
    }
    base += cfg.trials;
  }
  return rows;
}

std::string tail_csv(const std::vector<TailRow>& rows) {
  std::string out = "N,epsilon,trials,exceed_tv,freq_tv,bound,sigma,applicable,holds,exceed_dc,freq_dc\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", r.n, num(r.epsilon), r.trials, r.exceed_tv,
                       num(r.freq_tv), num(r.bound), num(r.sigma),
                       r.applicable ? "true" : "false",
                       !r.applicable ? "bound not applicable" : r.holds ? "true" : "false", r.exceed_dc,
                       num(r.freq_dc));
  }
  return out;
}

}  // namespace minkprobe
