#include "hoferlab/quasiflat.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hoferlab/chords.hpp"
#include "hoferlab/floer.hpp"
#include "hoferlab/numerics.hpp"

namespace hoferlab::quasiflat {

namespace {

double inf_norm_diff(const std::vector<double>& a,
                     const std::vector<double>& b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    out = std::max(out, std::abs(a[i] - b[i]));
  return out;
}

double one_norm_diff(const std::vector<double>& a,
                     const std::vector<double>& b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) out += std::abs(a[i] - b[i]);
  return out;
}

}  // namespace

double osc_profile(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return *hi - *lo;
}

std::vector<double> hamiltonian_profile(const model::ModelConfig& config,
                                        const std::vector<double>& u) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(config.bands()) + 2);
  out.push_back(config.hamiltonian_value(0.0, u));
  for (int b = 0; b <= config.bands(); ++b)
    out.push_back(config.hamiltonian_value(config.partition().hhat(b), u));
  return out;
}

std::vector<double> sigma_map(const std::vector<double>& v) {
  std::vector<double> out;
  out.reserve(2 * v.size());
  for (double x : v) {
    out.push_back(x);
    out.push_back(-x);
  }
  return out;
}

double hofer_upper_plain(const model::ModelConfig& config,
                         const std::vector<double>& v,
                         const std::vector<double>& w) {
  if (v.size() != w.size())
    throw model_error("profiles must have equal length");
  if (static_cast<int>(v.size()) > config.bands())
    throw model_error("profile is longer than the configuration has bands");
  double total = 0.0;
  for (std::size_t b = 0; b < v.size(); ++b) {
    std::vector<double> single(v.size(), 0.0);
    single[b] = w[b] - v[b];
    total += osc_profile(hamiltonian_profile(config, single));
  }
  if (total > 2.0 * one_norm_diff(v, w) + 1e-9)
    throw model_error("band-by-band bound exceeded its 1-norm ceiling");
  return total;
}

double hofer_upper_sigma(const model::ModelConfig& sigma_cfg,
                         const std::vector<double>& v,
                         const std::vector<double>& w) {
  if (!sigma_cfg.sigma_mode())
    throw model_error(
        "the sign-alternated bound needs a doubled (sigma mode) "
        "configuration");
  if (v.size() != w.size())
    throw model_error("profiles must have equal length");
  if (static_cast<int>(2 * v.size()) != sigma_cfg.bands())
    throw model_error(
        "doubled configuration size does not match the profile length");
  std::vector<double> sv = sigma_map(v), sw = sigma_map(w);
  std::vector<double> diff(sv.size());
  for (std::size_t i = 0; i < sv.size(); ++i) diff[i] = sw[i] - sv[i];
  const double osc = osc_profile(hamiltonian_profile(sigma_cfg, diff));
  if (osc > 2.0 * inf_norm_diff(v, w) + 1e-9)
    throw model_error("combined bound exceeded its sup-norm ceiling");
  return osc;
}

QuasiflatReport sandwich(const model::ModelConfig& config,
                         std::vector<double> v, std::vector<double> w,
                         std::optional<int> k) {
  const std::size_t len = std::max(v.size(), w.size());
  v.resize(len, 0.0);
  w.resize(len, 0.0);
  if (static_cast<int>(len) > config.bands())
    throw model_error("profile is longer than the configuration has bands");

  QuasiflatReport report;
  report.v_nudged = chords::nudge_profile(v, config);
  report.w_nudged = chords::nudge_profile(w, config);
  report.v = v;
  report.w = w;
  report.exact_inf_norm = inf_norm_diff(v, w);
  report.exact_one_norm = one_norm_diff(v, w);

  const int k0 = floer::k_threshold(v, w);
  const int kk = k.value_or(k0);
  if (kk < k0) {
    std::ostringstream msg;
    msg << "twist power " << kk << " is below the admissible threshold k0 = "
        << k0 << " for this pair";
    throw model_error(msg.str());
  }

  double gap = 0.0;
  for (int i = 0; i < config.bands(); ++i) {
    const double ai_v = floer::spectral_a(config, i, v, kk);
    const double ai_w = floer::spectral_a(config, i, w, kk);
    gap = std::max(gap, std::abs(ai_v - ai_w));
  }
  report.lower = 0.5 * gap;
  // The spectral differences shift by exactly the coefficient differences,
  // so the lower bound must agree with half the sup distance on the nose.
  if (std::abs(report.lower - 0.5 * report.exact_inf_norm) > 1e-9)
    throw model_error(
        "spectral lower bound drifted away from half the sup distance");

  report.upper_plain = hofer_upper_plain(config, v, w);
  model::ModelConfig doubled = model::sigma_config(
      config.n(), config.delta(), static_cast<int>(len));
  report.upper_sigma = hofer_upper_sigma(doubled, v, w);
  return report;
}

}  // namespace hoferlab::quasiflat
