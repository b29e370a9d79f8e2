#include "hoferlab/local_model.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace hoferlab::model {

namespace {

using num::kPi;
using num::kTwoPi;

// Guard band for tangency detection in the level solvers.
constexpr double kTangencyTol = 1e-9;

// F(u) = u - 4u^(2p+1)/(2p+1) + 6u^(4p+1)/(4p+1) - 4u^(6p+1)/(6p+1)
//      + u^(8p+1)/(8p+1), the antiderivative of (1 - u^(2p))^4; odd in u.
double bump_poly_antiderivative(double u, int p) {
  const double au = std::abs(u);
  const double f = au
      - 4.0 * std::pow(au, 2 * p + 1) / (2 * p + 1)
      + 6.0 * std::pow(au, 4 * p + 1) / (4 * p + 1)
      - 4.0 * std::pow(au, 6 * p + 1) / (6 * p + 1)
      + std::pow(au, 8 * p + 1) / (8 * p + 1);
  return u < 0 ? -f : f;
}

}  // namespace

RadialPartition::RadialPartition(std::vector<double> shells)
    : shells_(std::move(shells)) {
  if (shells_.size() < 4 || shells_.size() % 2 != 0)
    throw model_error("partition: shell list must have even length >= 4");
  d_ = static_cast<int>(shells_.size() / 2) - 1;
  if (!(shells_.front() > 0.0) || !(shells_.back() < 1.0))
    throw model_error("partition: shells must lie strictly inside (0, 1)");
  for (std::size_t i = 1; i < shells_.size(); ++i)
    if (!(shells_[i - 1] < shells_[i]))
      throw model_error("partition: shells must strictly increase");
  hbar_ = 2.0;
  for (int b = 1; b <= d_; ++b) hbar_ = std::min(hbar_, hhat(b) - hcheck(b));
  eps_ = 2.0;
  for (int i = 0; i <= d_; ++i) eps_ = std::min(eps_, hcheck(i + 1) - hhat(i));
}

double RadialPartition::hhat(int i) const {
  if (i < 0 || i > d_) throw model_error("partition: hhat index out of range");
  return shells_[static_cast<std::size_t>(2 * i)];
}

double RadialPartition::hcheck(int i) const {
  if (i < 1 || i > d_ + 1) throw model_error("partition: hcheck index out of range");
  return shells_[static_cast<std::size_t>(2 * i - 1)];
}

RadialPartition default_partition(int d) {
  // Band widths leaving room for a unit-mass bump of height 2*pi; the mass
  // constraint forces width > 1/(2*pi) ~ 0.159, which caps d at 6.
  static constexpr double kWidths[] = {0.42, 0.30, 0.20, 0.17, 0.165, 0.161};
  if (d < 1 || d > 6)
    throw model_error("default_partition: band count must be in 1..6 "
                      "(a unit-mass bump of height 2*pi needs width > 1/(2*pi))");
  const double w = kWidths[d - 1];
  const double g = (0.998 - d * w) / (d + 2);
  std::vector<double> shells;
  shells.push_back(g);  // hhat(0)
  for (int b = 1; b <= d; ++b) {
    shells.push_back(shells.back() + g);  // hcheck(b)
    shells.push_back(shells.back() + w);  // hhat(b)
  }
  shells.push_back(shells.back() + g);  // hcheck(d+1)
  return RadialPartition(std::move(shells));
}

int BumpProfile::auto_flatness(double width) {
  static constexpr int kLadder[] = {1,  2,  3,  4,   6,   8,   12,  16,
                                    24, 32, 48, 64,  96,  128, 192, 256};
  const double margin = std::max(1e-4, 1e-3 * width);
  for (int p : kLadder) {
    const double mass = 2.0 * bump_poly_antiderivative(1.0, p);  // integral of (1-u^2p)^4
    const double a = 1.0 / (kTwoPi * mass);
    if (0.5 * width - a >= margin) return p;
  }
  throw model_error("bump: band width too small for a unit-mass profile of height 2*pi");
}

BumpProfile::BumpProfile(double width, int flatness) : width_(width) {
  if (!(width > 0.0)) throw model_error("bump: width must be positive");
  p_ = flatness > 0 ? flatness : auto_flatness(width);
  const double mass = 2.0 * bump_poly_antiderivative(1.0, p_);
  a_ = 1.0 / (kTwoPi * mass);  // unit total mass at height 2*pi
  iota_ = 0.5 * width_ - a_;
  if (!(iota_ > 0.0))
    throw model_error("bump: chosen flatness exponent does not fit the width");
}

double BumpProfile::value(double t) const {
  const double u = (t - center()) / a_;
  if (std::abs(u) >= 1.0) return 0.0;
  const double b = 1.0 - std::pow(std::abs(u), 2 * p_);
  const double b2 = b * b;
  return kTwoPi * b2 * b2;
}

double BumpProfile::derivative(double t) const {
  const double u = (t - center()) / a_;
  if (std::abs(u) >= 1.0) return 0.0;
  const double b = 1.0 - std::pow(std::abs(u), 2 * p_);
  const double upow = std::pow(std::abs(u), 2 * p_ - 1) * (u < 0 ? -1.0 : 1.0);
  return -kTwoPi * 8.0 * p_ * upow * b * b * b / a_;
}

double BumpProfile::antiderivative(double t) const {
  const double u = (t - center()) / a_;
  if (u <= -1.0) return 0.0;
  if (u >= 1.0) return 1.0;  // unit mass by normalization
  return kTwoPi * a_ *
         (bump_poly_antiderivative(u, p_) + bump_poly_antiderivative(1.0, p_));
}

TwistProfile::TwistProfile(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!(lo < hi)) throw model_error("twist: window must have positive width");
}

double TwistProfile::value(double r) const {
  if (r <= lo_) return kPi;
  if (r >= hi_) return 0.0;
  const double x = (r - lo_) / (hi_ - lo_);
  return kPi * (1.0 - x * x * (3.0 - 2.0 * x));
}

double TwistProfile::antiderivative(double r) const {
  if (r <= lo_) return kPi * r;
  const double len = hi_ - lo_;
  if (r >= hi_) return kPi * lo_ + 0.5 * kPi * len;  // window mean is pi/2
  const double x = (r - lo_) / len;
  // integral of pi * (1 - 3x^2 + 2x^3) dx over [0, x], scaled by the width
  return kPi * lo_ + kPi * len * (x - x * x * x + 0.5 * x * x * x * x);
}

double TwistProfile::full_integral() const {
  return kPi * lo_ + 0.5 * kPi * (hi_ - lo_);
}

ModelConfig::ModelConfig(int n, double delta, RadialPartition partition,
                         int flatness, num::PiecewiseLinear ambient_offset,
                         bool sigma_mode)
    : n_(n),
      delta_(delta),
      partition_(std::move(partition)),
      bump_(partition_.hbar(), flatness),
      ambient_(std::move(ambient_offset)),
      sigma_mode_(sigma_mode) {
  // n = 1 is accepted only for the explicit disk-pairing differential rule;
  // the index formulas are degenerate there (all degree steps collapse).
  if (n_ < 1) throw model_error("config: sphere dimension must be >= 1");
  if (!(delta_ > 0.0 && delta_ < kPi))
    throw model_error("config: fiber separation angle must lie in (0, pi)");
  const double eps = partition_.epsilon();
  for (int i = 0; i <= partition_.bands(); ++i)
    twists_.emplace_back(partition_.hhat(i) + eps / 3.0,
                         partition_.hhat(i) + eps / 2.0);
}

const TwistProfile& ModelConfig::twist(int i) const {
  if (i < 0 || i > bands()) throw model_error("config: twist index out of range");
  return twists_[static_cast<std::size_t>(i)];
}

double ModelConfig::theta_v(double t, const std::vector<double>& v) const {
  if (static_cast<int>(v.size()) > bands())
    throw model_error("theta_v: more coefficients than bands");
  double sum = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j)
    if (v[j] != 0.0)
      sum += v[j] * bump_.value(t - partition_.hcheck(static_cast<int>(j) + 1));
  return sum;
}

double ModelConfig::theta_v_prime(double t, const std::vector<double>& v) const {
  if (static_cast<int>(v.size()) > bands())
    throw model_error("theta_v_prime: more coefficients than bands");
  double sum = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j)
    if (v[j] != 0.0)
      sum += v[j] * bump_.derivative(t - partition_.hcheck(static_cast<int>(j) + 1));
  return sum;
}

double ModelConfig::hamiltonian_value(double r, const std::vector<double>& v) const {
  if (static_cast<int>(v.size()) > bands())
    throw model_error("hamiltonian_value: more coefficients than bands");
  double sum = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j)
    if (v[j] != 0.0)
      sum += v[j] * bump_.antiderivative(r - partition_.hcheck(static_cast<int>(j) + 1));
  return sum;
}

std::vector<double> ModelConfig::solve_bump_level(int band, double coeff,
                                                  double level) const {
  if (band < 1 || band > bands())
    throw model_error("solve_bump_level: band index out of range");
  if (coeff == 0.0) throw model_error("solve_bump_level: zero coefficient");
  const double q = level / coeff;  // reduced level against one unit bump
  if (std::abs(q - kTwoPi) <= kTangencyTol)
    throw non_transverse_error("solve_bump_level: level tangent to the bump peak");
  if (q <= 0.0 || q > kTwoPi) return {};
  const double lo = partition_.hcheck(band);
  const double mid = lo + bump_.center();
  const auto f = [&](double t) { return bump_.value(t - lo) - q; };
  const double left = num::bisect(f, lo, mid);
  const double right = num::bisect(f, mid, lo + bump_.width());
  return {left, right};
}

double ModelConfig::solve_twist_level(int i, int k, double level) const {
  if (k < 1) throw model_error("solve_twist_level: twist power must be >= 1");
  const double top = kTwoPi * k;
  if (level <= kTangencyTol || level >= top - kTangencyTol)
    throw non_transverse_error(
        "solve_twist_level: level at the twist range endpoints");
  const TwistProfile& tw = twist(i);
  const auto f = [&](double t) { return 2.0 * k * tw.value(t) - level; };
  return num::bisect(f, tw.window_lo(), tw.window_hi());
}

ModelConfig default_config(int n, double delta, int d) {
  return ModelConfig(n, delta, default_partition(d));
}

ModelConfig sigma_config(int n, double delta, int d_source) {
  if (d_source < 1 || d_source > 3)
    throw model_error("sigma_config: source dimension must be in 1..3 "
                      "(the doubled layout needs 2*d bands, at most 6)");
  return ModelConfig(n, delta, default_partition(2 * d_source), 0, {}, true);
}

ModelConfig config_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw model_error(std::string("config JSON: ") + e.what());
  }
  if (!doc.is_object()) throw model_error("config JSON: expected an object");
  const int n = doc.value("n", 2);
  const double delta = doc.value("delta", kPi / 3.0);
  RadialPartition partition = [&] {
    if (doc.contains("shells")) {
      if (!doc["shells"].is_array())
        throw model_error("config JSON: \"shells\" must be an array");
      return RadialPartition(doc["shells"].get<std::vector<double>>());
    }
    return default_partition(doc.value("d", 3));
  }();
  num::PiecewiseLinear ambient;
  if (doc.contains("ambient_offset")) {
    const auto& amb = doc["ambient_offset"];
    if (!amb.is_object() || !amb.contains("r") || !amb.contains("f"))
      throw model_error("config JSON: \"ambient_offset\" needs \"r\" and \"f\" arrays");
    ambient = num::PiecewiseLinear(amb["r"].get<std::vector<double>>(),
                                   amb["f"].get<std::vector<double>>());
  }
  return ModelConfig(n, delta, std::move(partition), doc.value("flatness", 0),
                     std::move(ambient), doc.value("sigma_mode", false));
}

std::string config_to_json(const ModelConfig& config) {
  nlohmann::json doc;
  doc["n"] = config.n();
  doc["delta"] = config.delta();
  doc["d"] = config.bands();
  doc["shells"] = config.partition().shells();
  doc["flatness"] = config.bump().flatness();
  doc["sigma_mode"] = config.sigma_mode();
  if (!config.ambient_offset().is_zero()) {
    doc["ambient_offset"]["r"] = config.ambient_offset().xs();
    doc["ambient_offset"]["f"] = config.ambient_offset().ys();
  }
  return doc.dump(2);
}

}  // namespace hoferlab::model
