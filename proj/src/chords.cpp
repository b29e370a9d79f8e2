#include "hoferlab/chords.hpp"

#include <cmath>
#include <cstdio>

namespace hoferlab::chords {

namespace {

using num::kPi;
using num::kTwoPi;

constexpr double kResidualTol = 1e-9;

int sign_of(double x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

void check_residual(double actual, double expected, const char* what) {
  if (std::abs(actual - expected) > kResidualTol)
    throw model_error(std::string(what) + ": solved root fails its defining "
                      "equation beyond tolerance");
}

// floor(|angle|/pi) from the exact winding data of a band-sector chord:
// |theta_v(r)| = delta + 2*pi*m gives 2m, (2*pi - delta) + 2*pi*m gives 2m+1.
int phi_half_turns(const Chord& c) {
  const bool same_sign = c.theta_sign == static_cast<int>(c.branch);
  return 2 * c.m + (same_sign ? 0 : 1);
}

}  // namespace

std::string Chord::id() const {
  char buf[64];
  if (sector == Sector::Tau) {
    std::snprintf(buf, sizeof buf, "t%d.w%d.%c", band, m,
                  branch == Branch::Plus ? 'p' : 'n');
  } else {
    std::snprintf(buf, sizeof buf, "b%d.w%d.%c.%s", band, m,
                  branch == Branch::Plus ? 'p' : 'n',
                  theta_prime_sign * theta_sign > 0 ? "lo" : "hi");
  }
  return buf;
}

bool is_transverse(const std::vector<double>& v,
                   const model::ModelConfig& config) {
  const double delta = config.delta();
  for (double coeff : v) {
    const double resid = num::wrap_angle(kTwoPi * coeff);
    if (std::abs(num::wrap_angle(resid - delta)) <= kResidualTol ||
        std::abs(num::wrap_angle(resid + delta)) <= kResidualTol)
      return false;
  }
  return true;
}

bool nudge_profile(std::vector<double>& v, const model::ModelConfig& config) {
  const double delta = config.delta();
  const auto stuck = [&](double x) {
    const double resid = num::wrap_angle(kTwoPi * x);
    return std::abs(num::wrap_angle(resid - delta)) <= kResidualTol ||
           std::abs(num::wrap_angle(resid + delta)) <= kResidualTol;
  };
  bool moved = false;
  for (int round = 0; round < 8; ++round) {
    bool any = false;
    for (double& c : v)
      if (stuck(c)) {
        c += 1e-6;
        any = moved = true;
      }
    if (!any) return moved;
  }
  throw model_error("nudge_profile: could not leave the branch locus");
}

std::vector<Chord> enumerate_tau_chords(const model::ModelConfig& config, int i,
                                        int k) {
  if (k < 1) throw model_error("enumerate_tau_chords: twist power must be >= 1");
  const double delta = config.delta();
  const model::TwistProfile& tw = config.twist(i);
  std::vector<Chord> out;
  const auto emit = [&](int m, Branch branch) {
    const double level = kTwoPi * m + static_cast<int>(branch) * delta;
    Chord c;
    c.sector = Sector::Tau;
    c.band = i;
    c.m = m;
    c.branch = branch;
    c.r = config.solve_twist_level(i, k, level);
    c.s = static_cast<int>(branch) * c.r;
    check_residual(2.0 * k * tw.value(c.r), level, "tau chord");
    c.index = maslov_index(config, c, i, k);
    // Twist-side action value (the v = 0 action): 2k * P_i(r) - level * r.
    c.action = 2.0 * k * tw.antiderivative(c.r) - level * c.r;
    out.push_back(c);
  };
  for (int m = 0; m < k; ++m) emit(m, Branch::Plus);
  for (int m = 1; m <= k; ++m) emit(m, Branch::Minus);
  return out;
}

std::vector<Chord> enumerate_phi_chords(const model::ModelConfig& config,
                                        const std::vector<double>& v, int i,
                                        int k) {
  const double delta = config.delta();
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double resid = num::wrap_angle(kTwoPi * v[j]);
    if (std::abs(num::wrap_angle(resid - delta)) <= kResidualTol ||
        std::abs(num::wrap_angle(resid + delta)) <= kResidualTol)
      throw non_transverse_error(
          "enumerate_phi_chords: band " + std::to_string(j + 1) +
          " has 2*pi*v within 1e-9 of +-delta (mod 2*pi)");
  }

  std::vector<Chord> out;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double coeff = v[j];
    if (coeff == 0.0) continue;
    const int b = static_cast<int>(j) + 1;
    const int ts = sign_of(coeff);
    // Levels congruent to branch * delta mod 2*pi on the side of the axis
    // reachable by this band's bump (the sign of coeff).
    const auto emit_levels = [&](Branch branch) {
      // First admissible magnitude on the coeff side for this branch.
      const bool same_sign = ts == static_cast<int>(branch);
      const double base = same_sign ? delta : kTwoPi - delta;
      for (int m = 0;; ++m) {
        const double level = ts * (base + kTwoPi * m);
        const auto roots = config.solve_bump_level(b, coeff, level);
        if (roots.empty()) break;
        for (int side = 0; side < 2; ++side) {
          Chord c;
          c.sector = Sector::Phi;
          c.band = b;
          c.m = m;
          c.branch = branch;
          c.r = roots[static_cast<std::size_t>(side)];
          c.s = static_cast<int>(branch) * c.r;
          c.theta_sign = ts;
          c.theta_prime_sign = side == 0 ? ts : -ts;
          c.outer = b > i;
          check_residual(config.theta_v(c.r, v), level, "band chord");
          c.index = maslov_index(config, c, i, k);
          c.action = action(config, c, i, k, v);
          out.push_back(c);
        }
      }
    };
    emit_levels(Branch::Plus);
    emit_levels(Branch::Minus);
  }
  return out;
}

bool geodesic_transport_oracle(const model::ModelConfig& config, const Chord& c,
                               const std::vector<double>& v) {
  if (c.sector != Sector::Phi)
    throw model_error("geodesic_transport_oracle: band-sector chords only");
  const double angle = config.theta_v(c.r, v);
  const double target = static_cast<int>(c.branch) * config.delta();
  return std::abs(num::wrap_angle(angle - target)) <= 1e-8;
}

int tau_maslov_m(const Chord& c) {
  if (c.sector != Sector::Tau)
    throw model_error("tau_maslov_m: twist-sector chords only");
  return c.branch == Branch::Plus ? 2 * c.m : 2 * c.m - 1;
}

int maslov_index(const model::ModelConfig& config, const Chord& c, int i,
                 int k) {
  const int n = config.n();
  if (c.sector == Sector::Tau) {
    return n + (2 * k - 1 - tau_maslov_m(c)) * (n - 1);
  }
  const int m = phi_half_turns(c);
  int idx;
  if (c.theta_sign > 0)
    idx = c.theta_prime_sign > 0 ? n + (n - 1) * m : n + (n - 1) * m - 1;
  else
    idx = c.theta_prime_sign > 0 ? 1 - (n - 1) * m : -(n - 1) * m;
  if (c.outer) idx += 2 * k * (n - 1);
  (void)i;
  return idx;
}

int maslov_oracle(const model::ModelConfig& config, const Chord& c,
                  const std::vector<double>& v, int k) {
  const int n = config.n();
  if (c.sector == Sector::Tau) {
    // The twist acts on the other factor, so the straightened angle runs with
    // reversed orientation: interior half-turn crossings count +(n-1) each
    // and the endpoint half-crossing contributes (n - (-1) - (n-1))/2 = 1.
    const double angle = 2.0 * k * config.twist(c.band).value(c.r);
    int crossings = 0;
    while ((crossings + 1) * kPi < angle) ++crossings;
    if (std::abs(angle - std::round(angle / kPi) * kPi) <= kResidualTol)
      throw model_error("maslov_oracle: twist angle lies on a half turn");
    return 2 * k * (n - 1) + 1 - (n - 1) * crossings;
  }
  // Band sector: straighten t -> t * theta_v(r) for t in (0, 1]; each interior
  // crossing of a half turn contributes sign(theta) * (n-1); the t -> 0
  // half-crossing contributes (sign(theta') + sign(theta)(n-1))/2.
  const double angle = config.theta_v(c.r, v);
  const double mag = std::abs(angle);
  if (std::abs(mag - std::round(mag / kPi) * kPi) <= kResidualTol)
    throw model_error("maslov_oracle: band angle lies on a half turn");
  const int ts = sign_of(angle);
  const int tps = sign_of(config.theta_v_prime(c.r, v));
  if (tps == 0)
    throw model_error("maslov_oracle: vanishing slope at the chord radius");
  int crossings = 0;
  while ((crossings + 1) * kPi < mag) ++crossings;
  const int numerator = n + tps + ts * (n - 1);
  if (numerator % 2 != 0)
    throw model_error("maslov_oracle: half-crossing parity violated");
  int idx = numerator / 2 + ts * (n - 1) * crossings;
  if (c.outer) idx += 2 * k * (n - 1);
  return idx;
}

double action(const model::ModelConfig& config, const Chord& c, int i, int k,
              const std::vector<double>& v) {
  const double r = c.r;
  const double f = config.ambient_offset()(r);
  const double band_primitive =
      config.theta_v(r, v) * r + f - config.hamiltonian_value(r, v);
  double twist_primitive = f;
  if (k != 0) {
    if (k < 0) throw model_error("action: negative twist power");
    const model::TwistProfile& tw = config.twist(i);
    twist_primitive += 2.0 * k * tw.value(r) * r - 2.0 * k * tw.antiderivative(r);
  }
  return band_primitive - twist_primitive;
}

}  // namespace hoferlab::chords
