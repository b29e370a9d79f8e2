#pragma once

#include <string>
#include <vector>

#include "hoferlab/local_model.hpp"

namespace hoferlab::chords {

enum class Sector { Phi, Tau };

// Which fiber angle the chord realizes: +delta or -delta (mod 2*pi).
enum class Branch : int { Plus = +1, Minus = -1 };

// An intersection point of the twisted zero-section fiber with the band-mapped
// fiber, reduced to the invariant great circle: a signed radius plus the
// combinatorial data that determines its grading and action.
struct Chord {
  Sector sector = Sector::Phi;
  // Phi: the band b >= 1 whose bump produced the root.
  // Tau: the twist index i >= 0 whose window produced the root.
  int band = 0;
  double s = 0.0;  // signed radial parameter; s > 0 exactly on the +delta branch
  double r = 0.0;  // |s|
  // Winding count, >= 0.  Phi: |theta_v(r)| = delta + 2*pi*m (same-sign
  // branch) or (2*pi - delta) + 2*pi*m (opposite-sign branch).
  // Tau: 2k*rho_i(r) = 2*pi*m + delta (Plus) or 2*pi*m - delta (Minus).
  int m = 0;
  Branch branch = Branch::Plus;
  int theta_sign = 0;        // Phi only: sign of theta_v(r)
  int theta_prime_sign = 0;  // Phi only: sign of theta_v'(r)
  bool outer = false;        // Phi only: radius above the twist window (band > i)
  int index = 0;             // Maslov grading
  double action = 0.0;

  // Stable generator id for complexes and reports.
  std::string id() const;
};

// True iff no band coefficient is resonant: 2*pi*v_b stays 1e-9 away from
// +-delta (mod 2*pi) for every b.  Resonant coefficients put the bump peak
// exactly on a chord level (a tangent, non-transverse intersection).
bool is_transverse(const std::vector<double>& v, const model::ModelConfig& config);

// Shift every coefficient sitting on the branch locus by +1e-6 (repeating if
// the shift lands on the locus again) until is_transverse holds.  Returns
// true if anything moved.
bool nudge_profile(std::vector<double>& v, const model::ModelConfig& config);

// All 2k chords of the 2k-fold twist at gap i against the untwisted fiber:
// winding m = 0..k-1 on the Plus branch and m = 1..k on the Minus branch.
// Radii lie in the twist window; solved residuals are checked to 1e-9.
// The action field holds the twist-side value (the v = 0 action).
std::vector<Chord> enumerate_tau_chords(const model::ModelConfig& config, int i,
                                        int k);

// All band-sector chords of theta_v against fiber separation delta for the
// scenario twisted at gap i with power k (i, k only affect the inner/outer
// classification and gradings).  For each band b and winding m, the two roots
// of v_b * theta_b = level for every admissible level +-delta (mod 2*pi).
// Throws non_transverse_error naming the offending band when v is resonant.
std::vector<Chord> enumerate_phi_chords(const model::ModelConfig& config,
                                        const std::vector<double>& v, int i,
                                        int k);

// Independent check that a band-sector chord is geometric: transport along
// the great circle by the evaluated angle theta_v(r) must land on the other
// fiber's base point, i.e. the angle must equal branch * delta mod 2*pi
// within 1e-8.
bool geodesic_transport_oracle(const model::ModelConfig& config, const Chord& c,
                               const std::vector<double>& v);

// Closed-form Maslov grading from the chord's combinatorial tags.
// Band sector, radius below the twist window, with m = floor(|theta_v(r)|/pi):
//   (theta, theta') = (+,+): n + (n-1)m        (+,-): n + (n-1)m - 1
//                     (-,+): 1 - (n-1)m        (-,-):    -(n-1)m
// Radius above the twist window: the same plus 2k(n-1).
// Twist sector: n + (2k - 1 - j)(n - 1) with j the half-turn count of
// tau_maslov_m below.
int maslov_index(const model::ModelConfig& config, const Chord& c, int i, int k);

// Independent grading computation: walk the straightened angle from 0 to its
// endpoint value, count interior half-turn crossings (each contributes n-1
// with the orientation sign), and add the endpoint half-crossing.  The
// endpoint itself must be 1e-9 clear of a half turn, else the chord is not
// transverse and a model_error is thrown.  Twist-sector chords traverse the
// angle with the opposite orientation.
int maslov_oracle(const model::ModelConfig& config, const Chord& c,
                  const std::vector<double>& v, int k);

// Half-turn count of a twist-sector chord: the unique j >= 0 with
// 2k*rho = pi*j + delta (Plus) or pi*(j+1) - delta (Minus); bijective with
// the (m, branch) winding data: Plus -> j = 2m, Minus -> j = 2m - 1.
int tau_maslov_m(const Chord& c);

// Action of a chord: the difference of the two primitives at the same point,
//   [theta_v(r)*r + f(r) - Theta_v(r)] - [2k*rho_i(r)*r + f(r) - 2k*P_i(r)],
// where Theta_v and P_i are the stored antiderivatives and f is the
// configured ambient offset (it cancels identically at the shared point).
double action(const model::ModelConfig& config, const Chord& c, int i, int k,
              const std::vector<double>& v);

}  // namespace hoferlab::chords
