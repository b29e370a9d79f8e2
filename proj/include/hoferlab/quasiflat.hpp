#pragma once

#include <optional>
#include <vector>

#include "hoferlab/local_model.hpp"

namespace hoferlab::quasiflat {

// Two-sided comparison between the spectral lower bound and the displacement
// energy upper bounds for a pair of band profiles v, w.
struct QuasiflatReport {
  std::vector<double> v;  // the profiles actually used (after any nudge)
  std::vector<double> w;
  double lower = 0.0;        // half the largest spectral difference gap
  double upper_plain = 0.0;  // band-by-band oscillation sum
  double upper_sigma = 0.0;  // oscillation of the sign-alternated profile
  double exact_inf_norm = 0.0;
  double exact_one_norm = 0.0;
  bool v_nudged = false;  // true if a coefficient sat on the branch locus
  bool w_nudged = false;
  // The Hamiltonians compared here are the absolutely normalized ones (no
  // ambient radial offset); the spectral side is offset-invariant anyway.
  bool ham_absolute = true;
};

// max(values) - min(values).
double osc_profile(const std::vector<double>& values);

// Values of the normalized Hamiltonian of u at radius 0 and at every band's
// outer shell.  The Hamiltonian is monotone across each band, so these
// breakpoints carry its full range.
std::vector<double> hamiltonian_profile(const model::ModelConfig& config,
                                        const std::vector<double>& u);

// Sign-alternated doubling (v1, -v1, v2, -v2, ...): moving each coordinate in
// and immediately back out makes the partial sums telescope.
std::vector<double> sigma_map(const std::vector<double>& v);

// Move the bands one at a time: sum of the per-band oscillations.  Equals the
// 1-norm of v - w and is checked against twice that as a sanity ceiling.
double hofer_upper_plain(const model::ModelConfig& config,
                         const std::vector<double>& v,
                         const std::vector<double>& w);

// Move all bands in one combined step on the doubled configuration: the
// oscillation of the sigma-difference profile, at most 2 * |v - w|_inf.
// `sigma_cfg` must have been built in sigma mode.
double hofer_upper_sigma(const model::ModelConfig& sigma_cfg,
                         const std::vector<double>& v,
                         const std::vector<double>& w);

// Full comparison: pads v and w to a common length, nudges coefficients off
// the branch locus if needed, evaluates the spectral lower bound with twist
// power k (default: the admissible threshold for the pair), and both upper
// bounds.  The doubled configuration for the sigma bound is derived from
// `config`'s n and delta.
QuasiflatReport sandwich(const model::ModelConfig& config,
                         std::vector<double> v, std::vector<double> w,
                         std::optional<int> k = std::nullopt);

}  // namespace hoferlab::quasiflat
