#pragma once

#include <vector>

#include "hoferlab/chords.hpp"
#include "hoferlab/filtered_complex.hpp"
#include "hoferlab/local_model.hpp"

namespace hoferlab::floer {

// One intersection Floer complex: the 2k-fold twist at gap i against the
// band map of v.  k = 0 means no twist at all (pure band chords); `ell` is a
// pass-through label used by divergence sweeps and reports.
struct FloerScenario {
  int i = 0;
  int k = 1;  // twist power: the twist is applied 2k times
  int ell = 0;
  std::vector<double> v;
  model::ModelConfig config;
};

// How the differential is filled in:
//  - DegreeVanishing (n >= 3): a boundary hit is accepted only when the
//    target is the unique lower-action generator one degree below its source;
//    gaps force everything else to zero.  When neither applies the complex is
//    combinatorially undetermined and a model_error is raised.
//  - DiskPairing (any n, designed for n = 1): each level pair of band roots
//    is connected by the explicit strip between them; nothing else connects.
//  - SymmetryReduced (n = 2 only): inherits the DiskPairing pairs; the
//    reduction of the n = 2 count to the n = 1 strips is an imported
//    assumption, not an independent computation here, and is labeled as such
//    in CLI output.
// Under every rule the twist-sector generators carry zero differential among
// themselves (their gradings for n >= 3, and the full homology rank 2k for
// n = 2, force this).
enum class DifferentialRule { DegreeVanishing, DiskPairing, SymmetryReduced };

const char* rule_name(DifferentialRule rule);

// Assemble generators (twist chords + band chords, actions evaluated for the
// scenario's v), fill the differential per the rule, and validate.
fc::FilteredComplex build_complex(const FloerScenario& scenario,
                                  DifferentialRule rule);

// Smallest admissible twist power for the spectral difference: 2*(ceil of the
// sup norm + 3).  Guarantees the degree gap that isolates the distinguished
// twist generator.
int k_threshold(const std::vector<double>& v);
int k_threshold(const std::vector<double>& v, const std::vector<double>& w);

// The spectral difference a_i(v): the action of the unique twist-sector
// generator of degree n + k(n-1) at gap i+1 minus the one at gap i, with all
// actions evaluated against v.  Enforces k >= k_threshold(v).
double spectral_a(const model::ModelConfig& config, int i,
                  const std::vector<double>& v, int k);

struct DepthResult {
  double beta = 0.0;         // boundary depth of the scenario barcode
  double lower_bound = 0.0;  // certified growth bound, linear in k
};

// The divergence scenario: band coefficient k on band 1 against the 2*ell
// fold twist at gap 0.  beta is the longest finite bar of the reduced
// complex; lower_bound is
//   k * (integral of theta_1 between the two level-delta roots)
//   - delta * (root distance) - 2 * max|ambient offset| over the bump support.
DepthResult boundary_depth_scenario(const model::ModelConfig& config, int k,
                                    int ell, DifferentialRule rule);

}  // namespace hoferlab::floer
