#pragma once

#include <string>
#include <vector>

#include "hoferlab/numerics.hpp"

namespace hoferlab::model {

// Radial shell data on (0, 1): an increasing list
//   0 < hhat(0) < hcheck(1) < hhat(1) < ... < hcheck(d) < hhat(d) < hcheck(d+1) < 1.
// Band b (b = 1..d) is the interval (hcheck(b), hhat(b)) and carries one bump;
// gap i (i = 0..d) is (hhat(i), hcheck(i+1)) and carries one twist window.
class RadialPartition {
 public:
  // `shells` is the full interleaved list hhat0, hcheck1, hhat1, ...,
  // hcheckd, hhatd, hcheck(d+1); its length is 2d + 2.
  explicit RadialPartition(std::vector<double> shells);

  int bands() const { return d_; }
  double hhat(int i) const;    // i in [0, d]
  double hcheck(int i) const;  // i in [1, d+1]
  double band_lo(int b) const { return hcheck(b); }
  double band_hi(int b) const { return hhat(b); }
  // Minimal band width: every bump has this width.
  double hbar() const { return hbar_; }
  // Minimal gap width: every twist window is placed eps/3 .. eps/2 into its gap.
  double epsilon() const { return eps_; }
  const std::vector<double>& shells() const { return shells_; }

 private:
  std::vector<double> shells_;
  int d_ = 0;
  double hbar_ = 0.0, eps_ = 0.0;
};

// Equal-width default layout with d bands.  Band widths are chosen so that a
// unit-mass bump with maximum 2*pi fits strictly inside each band; this caps
// d at 6 (the mass/height constraint forces width > 1/(2*pi)).
RadialPartition default_partition(int d);

// The bump profile: theta(t) = 2*pi * (1 - u^(2p))^4 with u = (t - w/2)/a,
// supported on [iota, w - iota] inside a band of width w, where the half
// width a is fixed by unit mass (integral 1) and iota = w/2 - a.  Larger
// flatness exponents p concentrate less mass at the peak, letting the bump
// fit into narrower bands while keeping maximum exactly 2*pi and mass 1.
class BumpProfile {
 public:
  // flatness = 0 picks the smallest feasible exponent automatically.
  explicit BumpProfile(double width, int flatness = 0);

  // Smallest exponent (from a fixed ladder) whose normalized bump fits into
  // the given width with a positive margin; throws when none does.
  static int auto_flatness(double width);

  double value(double t) const;          // theta(t), relative to the band start
  double derivative(double t) const;     // theta'(t)
  double antiderivative(double t) const; // integral of theta over [0, t]

  double width() const { return width_; }
  int flatness() const { return p_; }
  double half_width() const { return a_; }   // support is [iota, width - iota]
  double iota() const { return iota_; }
  double center() const { return 0.5 * width_; }

 private:
  double width_ = 0.0;
  int p_ = 1;
  double a_ = 0.0, iota_ = 0.0;
};

// The twist profile: a cubic smoothstep from pi down to 0 across the window
// [lo, hi], constantly pi below and 0 above.  Monotone by construction.
class TwistProfile {
 public:
  TwistProfile() = default;
  TwistProfile(double lo, double hi);

  double value(double r) const;           // rho(r) in [0, pi]
  double antiderivative(double r) const;  // integral of rho over [0, r]
  // The antiderivative's constant value for all r >= hi.
  double full_integral() const;
  double window_lo() const { return lo_; }
  double window_hi() const { return hi_; }

 private:
  double lo_ = 0.0, hi_ = 1.0;
};

// Immutable geometric configuration: sphere dimension n, fiber separation
// angle delta in (0, pi), the shell partition, one shared bump profile, one
// twist profile per gap, and an optional bounded offset added to both
// primitives (a function of radius; it cancels in every action difference).
class ModelConfig {
 public:
  ModelConfig(int n, double delta, RadialPartition partition, int flatness = 0,
              num::PiecewiseLinear ambient_offset = {}, bool sigma_mode = false);

  int n() const { return n_; }
  double delta() const { return delta_; }
  const RadialPartition& partition() const { return partition_; }
  const BumpProfile& bump() const { return bump_; }
  const TwistProfile& twist(int i) const;  // i in [0, bands()]
  const num::PiecewiseLinear& ambient_offset() const { return ambient_; }
  bool sigma_mode() const { return sigma_mode_; }
  int bands() const { return partition_.bands(); }

  // theta_v(t) = sum_b v_b * theta(t - hcheck(b)): the weighted bump sum.
  // v may be shorter than bands(); missing coefficients are zero.
  double theta_v(double t, const std::vector<double>& v) const;
  double theta_v_prime(double t, const std::vector<double>& v) const;
  // Integral of theta_v over [0, r]; band b contributes v_b once r passes it.
  double hamiltonian_value(double r, const std::vector<double>& v) const;

  // Roots of coeff * theta(t - hcheck(band)) = level, one on each side of the
  // band maximum, by bisection; ordered pair, or empty when the level exceeds
  // the peak.  A level within 1e-9 of the peak (tangency) is non-transverse.
  std::vector<double> solve_bump_level(int band, double coeff, double level) const;

  // The unique root of 2k * rho_i(t) = level for level in (0, 2*pi*k), on the
  // strictly decreasing stretch of the twist window.  Levels within 1e-9 of
  // the endpoints are non-transverse.
  double solve_twist_level(int i, int k, double level) const;

 private:
  int n_;
  double delta_;
  RadialPartition partition_;
  BumpProfile bump_;
  std::vector<TwistProfile> twists_;
  num::PiecewiseLinear ambient_;
  bool sigma_mode_;
};

// Default configuration with the equal-width layout.
ModelConfig default_config(int n, double delta, int d);

// Layout for the sign-alternating doubling: 2 * d_source bands, flagged
// sigma_mode, so that coordinate i of a source vector occupies bands
// 2i-1 and 2i with opposite signs.
ModelConfig sigma_config(int n, double delta, int d_source);

// JSON round trip.  Schema (shells, flatness, ambient_offset, sigma_mode
// optional):
//   {"n":2, "delta":1.0471975512, "d":3, "shells":[...], "sigma_mode":false,
//    "flatness":0, "ambient_offset":{"r":[0.0,1.0],"f":[0.0,0.0]}}
ModelConfig config_from_json(const std::string& text);
std::string config_to_json(const ModelConfig& config);

}  // namespace hoferlab::model
