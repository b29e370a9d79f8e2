#include "hoferlab/floer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hoferlab/numerics.hpp"
#include "hoferlab/persistence.hpp"

namespace hoferlab::floer {

namespace {

// Key identifying the two band-sector roots cut out by one level line.
using PairKey = std::tuple<int, int, int>;  // (band, branch, winding)

PairKey pair_key(const chords::Chord& c) {
  return {c.band, static_cast<int>(c.branch), c.m};
}

struct LevelPair {
  const chords::Chord* source = nullptr;  // increasing-slope root
  const chords::Chord* target = nullptr;  // decreasing-slope root
};

// Group band-sector chords into level pairs and orient each pair so the
// boundary goes from the higher-action root to the lower-action one.
std::map<PairKey, LevelPair> collect_pairs(
    const std::vector<chords::Chord>& phi) {
  std::map<PairKey, LevelPair> pairs;
  for (const chords::Chord& c : phi) {
    LevelPair& p = pairs[pair_key(c)];
    (c.theta_prime_sign > 0 ? p.source : p.target) = &c;
  }
  for (const auto& [key, p] : pairs) {
    if (p.source == nullptr || p.target == nullptr)
      throw model_error("level pair is missing one of its two roots");
    if (p.source->index != p.target->index + 1)
      throw model_error("level pair " + p.source->id() + " / " +
                        p.target->id() + " is not an adjacent-degree pair");
    if (!(p.source->action > p.target->action))
      throw model_error("level pair " + p.source->id() + " / " +
                        p.target->id() + " does not decrease the action");
  }
  return pairs;
}

}  // namespace

const char* rule_name(DifferentialRule rule) {
  switch (rule) {
    case DifferentialRule::DegreeVanishing:
      return "degree-vanishing";
    case DifferentialRule::DiskPairing:
      return "disk-pairing";
    case DifferentialRule::SymmetryReduced:
      return "symmetry-reduced";
  }
  return "unknown";
}

fc::FilteredComplex build_complex(const FloerScenario& scenario,
                                  DifferentialRule rule) {
  const model::ModelConfig& cfg = scenario.config;
  const int n = cfg.n();
  if (scenario.k < 0) throw model_error("twist power must be >= 0");
  if (rule == DifferentialRule::DegreeVanishing && n < 3)
    throw model_error(
        "the degree-vanishing rule needs n >= 3; indices are too crowded "
        "below that");
  if (rule == DifferentialRule::SymmetryReduced && n != 2)
    throw model_error("the symmetry-reduced rule is specific to n = 2");

  std::vector<chords::Chord> tau;
  if (scenario.k > 0)
    tau = chords::enumerate_tau_chords(cfg, scenario.i, scenario.k);
  std::vector<chords::Chord> phi =
      chords::enumerate_phi_chords(cfg, scenario.v, scenario.i, scenario.k);

  // Actions evaluated against this scenario's v: the twist-sector values
  // pick up the total bump weight below the gap radius.
  std::vector<fc::Generator> gens;
  std::map<std::string, const chords::Chord*> by_id;
  auto add = [&](const chords::Chord& c) {
    fc::Generator g;
    g.id = c.id();
    g.degree = c.index;
    g.action = chords::action(cfg, c, scenario.i, scenario.k, scenario.v);
    gens.push_back(g);
    if (!by_id.emplace(g.id, &c).second)
      throw model_error("duplicate chord id " + g.id);
  };
  for (const chords::Chord& c : tau) add(c);
  for (const chords::Chord& c : phi) add(c);

  std::map<std::string, std::vector<std::string>> boundary;
  std::map<PairKey, LevelPair> pairs = collect_pairs(phi);

  if (rule == DifferentialRule::DiskPairing ||
      rule == DifferentialRule::SymmetryReduced) {
    // Explicit strips between the two roots of each level; everything else
    // (twist-twist, twist-band) carries no rigid strip in this model.
    for (const auto& [key, p] : pairs)
      boundary[p.source->id()] = {p.target->id()};
  } else {
    // Degree-vanishing rule: a differential entry g -> h needs
    // deg h = deg g - 1 and action(h) < action(g).  For n >= 3 the index
    // spacing leaves at most the level-pair strips; whenever some other
    // candidate survives the degree test the complex is combinatorially
    // undetermined and we refuse to guess.
    std::map<std::string, std::string> partner_of;  // source id -> target id
    std::map<std::string, std::string> source_of;   // target id -> source id
    for (const auto& [key, p] : pairs) {
      partner_of[p.source->id()] = p.target->id();
      source_of[p.target->id()] = p.source->id();
    }
    for (const fc::Generator& g : gens) {
      std::vector<std::string> candidates;
      for (const fc::Generator& h : gens)
        if (h.degree == g.degree - 1 && h.action < g.action)
          candidates.push_back(h.id);
      if (candidates.empty()) continue;  // zero by filtration and degree
      auto src = partner_of.find(g.id);
      if (src != partner_of.end() && candidates.size() == 1 &&
          candidates[0] == src->second) {
        boundary[g.id] = {src->second};
        continue;
      }
      if (source_of.count(g.id)) {
        // g is hit by its level partner, whose boundary is exactly g, so
        // d(g) = 0 follows from d^2 = 0 no matter what sits below it.
        continue;
      }
      std::ostringstream msg;
      msg << "degree-vanishing rule cannot settle d(" << g.id << "): "
          << candidates.size()
          << " candidate target(s) of degree " << (g.degree - 1)
          << " sit below action " << g.action
          << "; this scenario needs disk data, not just degrees";
      throw model_error(msg.str());
    }
  }

  fc::FilteredComplex complex(std::move(gens), std::move(boundary));
  fc::ValidationReport report = fc::validate(complex);
  if (!report.ok) throw model_error("assembled complex is invalid: " + report.message);
  return complex;
}

int k_threshold(const std::vector<double>& v) {
  double sup = 0.0;
  for (double x : v) sup = std::max(sup, std::abs(x));
  return 2 * (static_cast<int>(std::ceil(sup)) + 3);
}

int k_threshold(const std::vector<double>& v, const std::vector<double>& w) {
  return std::max(k_threshold(v), k_threshold(w));
}

namespace {

// The distinguished twist-sector generator: the chord of degree n + k(n-1),
// i.e. the one whose level line sits just under the k-th full turn.
chords::Chord xi_chord(const model::ModelConfig& cfg, int gap, int k) {
  const int want = k - 1;  // half-turn count of the distinguished chord
  for (const chords::Chord& c : chords::enumerate_tau_chords(cfg, gap, k))
    if (chords::tau_maslov_m(c) == want) return c;
  throw model_error("twist sector is missing its distinguished chord");
}

}  // namespace

double spectral_a(const model::ModelConfig& config, int i,
                  const std::vector<double>& v, int k) {
  const int d = config.bands();
  if (i < 0 || i >= d)
    throw model_error("spectral difference needs a gap index in [0, bands)");
  const int k0 = k_threshold(v);
  if (k < k0) {
    std::ostringstream msg;
    msg << "twist power " << k << " is below the admissible threshold k0 = "
        << k0 << " for this profile";
    throw model_error(msg.str());
  }
  if (!chords::is_transverse(v, config))
    throw non_transverse_error(
        "profile has a band coefficient on the branch locus");

  chords::Chord hi = xi_chord(config, i + 1, k);
  chords::Chord lo = xi_chord(config, i, k);
  const double a_hi = chords::action(config, hi, i + 1, k, v);
  const double a_lo = chords::action(config, lo, i, k, v);
  return a_hi - a_lo;
}

DepthResult boundary_depth_scenario(const model::ModelConfig& config, int k,
                                    int ell, DifferentialRule rule) {
  if (k < 1) throw model_error("band coefficient k must be >= 1");
  if (ell < 0) throw model_error("twist power ell must be >= 0");
  FloerScenario scenario{0, ell, ell, {static_cast<double>(k)}, config};

  DepthResult out;
  out.beta =
      persistence::boundary_depth(fc::reduce_to_barcode(build_complex(scenario, rule)));

  // Certified growth: restrict the widest level pair to the k = 1 roots of
  // the same level.  The bump integral between those fixed roots grows
  // linearly in k while the subtracted terms stay put.
  const model::RadialPartition& part = config.partition();
  std::vector<double> roots = config.solve_bump_level(1, 1.0, config.delta());
  if (roots.size() != 2)
    throw model_error("level delta does not cut the unit bump twice");
  const model::BumpProfile& bump = config.bump();
  const double lo = part.band_lo(1);
  const double primitive =
      bump.antiderivative(roots[1] - lo) - bump.antiderivative(roots[0] - lo);
  const double ambient_sup = config.ambient_offset().max_abs_on(
      lo + bump.iota(), lo + part.hbar() - bump.iota());
  out.lower_bound = k * primitive - config.delta() * (roots[1] - roots[0]) -
                    2.0 * ambient_sup;
  return out;
}

}  // namespace hoferlab::floer
