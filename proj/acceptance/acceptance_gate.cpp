// Acceptance gate: runs every advertised guarantee of the library at its
// stated tolerance, prints one PASS/FAIL line per criterion, and exits
// nonzero if any criterion fails.  Failures never stop the remaining
// criteria from running.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hoferlab/chords.hpp"
#include "hoferlab/filtered_complex.hpp"
#include "hoferlab/floer.hpp"
#include "hoferlab/local_model.hpp"
#include "hoferlab/persistence.hpp"
#include "hoferlab/quasiflat.hpp"
#include "test_oracles.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

struct check_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define GATE_CHECK(cond, detail)                                          \
  do {                                                                    \
    if (!(cond)) {                                                        \
      std::ostringstream oss_;                                            \
      oss_ << __FILE__ << ":" << __LINE__ << " check (" #cond ") failed " \
           << detail;                                                     \
      throw check_failure(oss_.str());                                    \
    }                                                                     \
  } while (0)

using hoferlab::chords::Chord;
using hoferlab::floer::DifferentialRule;
using hoferlab::floer::FloerScenario;
using hoferlab::model::default_config;
using hoferlab::model::ModelConfig;
using hoferlab::num::Rng;

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

// --------------------------------------------------------------------------
// 1. Spectral difference identity: a_i(v) - a_i(w) = w_i - v_i to 1e-9,
//    100 random transverse pairs with sup norm <= 4, every gap, under 10 s.
// --------------------------------------------------------------------------
void criterion_spectral_identity() {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = trial % 2 == 0 ? 2 : 3;
    const ModelConfig config = default_config(n, kPi / 3.0, 3);
    std::vector<double> v(3), w(3);
    for (auto& x : v) x = rng.uniform(-3.999, 3.999);
    for (auto& x : w) x = rng.uniform(-3.999, 3.999);
    hoferlab::chords::nudge_profile(v, config);
    hoferlab::chords::nudge_profile(w, config);
    const int k = hoferlab::floer::k_threshold(v, w);
    for (int i = 0; i < config.bands(); ++i) {
      const double av = hoferlab::floer::spectral_a(config, i, v, k);
      const double aw = hoferlab::floer::spectral_a(config, i, w, k);
      const double expected = w[static_cast<std::size_t>(i)] -
                              v[static_cast<std::size_t>(i)];
      GATE_CHECK(std::abs((av - aw) - expected) <= 1e-9,
                 "trial " << trial << " gap " << i << ": got " << (av - aw)
                          << ", expected " << expected);
    }
  }
  const double secs = elapsed_seconds(start);
  GATE_CHECK(secs < 10.0, "took " << secs << " s, budget 10 s");
}

// --------------------------------------------------------------------------
// 2. Twist chord census: exactly 2k generators whose grading multiset is
//    {n + j(n-1) : j = 0..2k-1}, each exactly once, k <= 32, n in {2,3,5}.
// --------------------------------------------------------------------------
void criterion_twist_census() {
  for (const int n : {2, 3, 5}) {
    const ModelConfig config = default_config(n, kPi / 3.0, 3);
    for (int k = 1; k <= 32; ++k) {
      for (const int gap : {0, 1}) {
        const auto chords =
            hoferlab::chords::enumerate_tau_chords(config, gap, k);
        GATE_CHECK(chords.size() == static_cast<std::size_t>(2 * k),
                   "n=" << n << " k=" << k << " gap=" << gap << ": "
                        << chords.size() << " chords");
        std::multiset<int> indices;
        for (const Chord& c : chords) indices.insert(c.index);
        std::multiset<int> expected;
        for (int j = 0; j < 2 * k; ++j) expected.insert(n + j * (n - 1));
        GATE_CHECK(indices == expected,
                   "n=" << n << " k=" << k << ": grading multiset mismatch");
      }
    }
  }
}

// --------------------------------------------------------------------------
// 3. Grading oracle agreement: closed-form Maslov index equals the
//    crossing-count oracle on every chord of 200 random scenarios, exactly.
// --------------------------------------------------------------------------
void criterion_index_oracle() {
  Rng rng(303);
  const int ns[] = {2, 3, 5};
  for (int trial = 0; trial < 200; ++trial) {
    const int n = ns[rng.uniform_int(0, 2)];
    const ModelConfig config = default_config(n, kPi / 3.0, 3);
    std::vector<double> v(3);
    for (auto& x : v) x = rng.uniform(-4.0, 4.0);
    hoferlab::chords::nudge_profile(v, config);
    const int i = static_cast<int>(rng.uniform_int(0, 3));
    const int k = static_cast<int>(rng.uniform_int(1, 6));
    for (const Chord& c : hoferlab::chords::enumerate_tau_chords(config, i, k))
      GATE_CHECK(hoferlab::chords::maslov_index(config, c, i, k) ==
                     hoferlab::chords::maslov_oracle(config, c, {}, k),
                 "twist chord " << c.id() << " trial " << trial);
    for (const Chord& c :
         hoferlab::chords::enumerate_phi_chords(config, v, i, k))
      GATE_CHECK(hoferlab::chords::maslov_index(config, c, i, k) ==
                     hoferlab::chords::maslov_oracle(config, c, v, k),
                 "band chord " << c.id() << " trial " << trial);
  }
}

// --------------------------------------------------------------------------
// 4. Degree gap: at the admissible twist power every inner band chord sits
//    strictly below n + k(n-1) and every outer one strictly above, exactly.
// --------------------------------------------------------------------------
void criterion_degree_gap() {
  Rng rng(404);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = trial % 2 == 0 ? 2 : 3;
    const ModelConfig config = default_config(n, kPi / 3.0, 3);
    std::vector<double> v(3);
    for (auto& x : v) {
      x = rng.uniform(0.3, 4.0);
      if (rng.coin()) x = -x;
    }
    hoferlab::chords::nudge_profile(v, config);
    const int k = hoferlab::floer::k_threshold(v);
    const int mid = n + k * (n - 1);
    const int i = 1;
    for (const Chord& c :
         hoferlab::chords::enumerate_phi_chords(config, v, i, k)) {
      if (c.outer) {
        GATE_CHECK(c.index > mid, "outer chord " << c.id() << " index "
                                                 << c.index << " vs " << mid);
      } else {
        GATE_CHECK(c.index < mid, "inner chord " << c.id() << " index "
                                                 << c.index << " vs " << mid);
      }
    }
  }
}

// --------------------------------------------------------------------------
// 5. Oscillation identities: each sign-alternated stage oscillates by
//    exactly the coefficient move (1e-9), and the plain stage total is
//    bounded by twice the 1-norm.
// --------------------------------------------------------------------------
void criterion_oscillation() {
  const ModelConfig sigma = hoferlab::model::sigma_config(2, kPi / 3.0, 3);
  const ModelConfig plain = default_config(2, kPi / 3.0, 3);
  Rng rng(505);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(3), w(3);
    for (auto& x : v) x = rng.uniform(-4.0, 4.0);
    for (auto& x : w) x = rng.uniform(-4.0, 4.0);
    double one = 0.0;
    for (int i = 0; i < 3; ++i) {
      const std::size_t ui = static_cast<std::size_t>(i);
      one += std::abs(v[ui] - w[ui]);
      // Stage i of the alternating interpolation moves only coordinate i.
      std::vector<double> step(3, 0.0);
      step[ui] = w[ui] - v[ui];
      const auto profile = hoferlab::quasiflat::hamiltonian_profile(
          sigma, hoferlab::quasiflat::sigma_map(step));
      GATE_CHECK(std::abs(hoferlab::quasiflat::osc_profile(profile) -
                          std::abs(w[ui] - v[ui])) <= 1e-9,
                 "stage " << i << " trial " << trial);
    }
    const double total = hoferlab::quasiflat::hofer_upper_plain(plain, v, w);
    GATE_CHECK(total <= 2.0 * one + 1e-9,
               "plain stage total " << total << " vs 2*" << one);
  }
}

// --------------------------------------------------------------------------
// 6. Sandwich bounds: half the sup distance equals the spectral lower bound
//    (1e-9) and the alternating upper bound stays within twice the sup
//    distance, 500 random pairs, under 30 s.
// --------------------------------------------------------------------------
void criterion_sandwich() {
  const auto start = std::chrono::steady_clock::now();
  const ModelConfig config = default_config(2, kPi / 3.0, 3);
  Rng rng(606);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> v(3), w(3);
    for (auto& x : v) x = rng.uniform(-4.0, 4.0);
    for (auto& x : w) x = rng.uniform(-4.0, 4.0);
    const auto rep = hoferlab::quasiflat::sandwich(config, v, w);
    GATE_CHECK(std::abs(rep.lower - 0.5 * rep.exact_inf_norm) <= 1e-9,
               "trial " << trial << ": lower " << rep.lower << " vs half norm "
                        << 0.5 * rep.exact_inf_norm);
    GATE_CHECK(rep.lower <= rep.upper_sigma + 1e-9,
               "trial " << trial << ": lower exceeds upper");
    GATE_CHECK(rep.upper_sigma <= 2.0 * rep.exact_inf_norm + 1e-9,
               "trial " << trial << ": upper " << rep.upper_sigma
                        << " vs 2*norm " << 2.0 * rep.exact_inf_norm);
  }
  const double secs = elapsed_seconds(start);
  GATE_CHECK(secs < 30.0, "took " << secs << " s, budget 30 s");
}

// --------------------------------------------------------------------------
// 7. Boundary depth divergence: beta(k) >= k * (band primitive) - delta *
//    (root distance) to 1e-8 for k = 1..64 under all three differential
//    rules, with strict growth beta(64) > beta(32) > beta(16).
// --------------------------------------------------------------------------
void criterion_boundary_depth() {
  struct Setup {
    int n;
    DifferentialRule rule;
  };
  for (const Setup setup : {Setup{1, DifferentialRule::DiskPairing},
                            Setup{2, DifferentialRule::SymmetryReduced},
                            Setup{3, DifferentialRule::DegreeVanishing}}) {
    const ModelConfig config = default_config(setup.n, kPi / 3.0, 1);
    // Independent form of the certified bound from the unit-coefficient
    // roots at level delta.
    const auto roots = config.solve_bump_level(1, 1.0, config.delta());
    GATE_CHECK(roots.size() == 2, "unit level-delta roots");
    const double lo = config.partition().band_lo(1);
    const double primitive =
        config.bump().antiderivative(roots[1] - lo) -
        config.bump().antiderivative(roots[0] - lo);
    const double width_term = config.delta() * (roots[1] - roots[0]);
    for (const int ell : {0, 1, 2}) {
      double beta16 = 0.0, beta32 = 0.0, beta64 = 0.0;
      for (int k = 1; k <= 64; ++k) {
        const auto res = hoferlab::floer::boundary_depth_scenario(
            config, k, ell, setup.rule);
        GATE_CHECK(res.beta >= k * primitive - width_term - 1e-8,
                   "n=" << setup.n << " ell=" << ell << " k=" << k << ": beta "
                        << res.beta << " vs bound "
                        << k * primitive - width_term);
        if (k == 16) beta16 = res.beta;
        if (k == 32) beta32 = res.beta;
        if (k == 64) beta64 = res.beta;
      }
      GATE_CHECK(beta64 > beta32 && beta32 > beta16,
                 "n=" << setup.n << " ell=" << ell << ": depth not divergent ("
                      << beta16 << ", " << beta32 << ", " << beta64 << ")");
    }
  }
}

// --------------------------------------------------------------------------
// 8. Bottleneck distance equals the exhaustive minimax oracle to 1e-9 over
//    1000 random barcode pairs of at most five bar copies each.
// --------------------------------------------------------------------------
void criterion_bottleneck_oracle() {
  Rng rng(808);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto b = testutil::random_barcode(rng, 5);
    const auto c = testutil::random_barcode(rng, 5);
    const double fast = hoferlab::persistence::bottleneck_distance(b, c);
    const double slow = testutil::exhaustive_bottleneck(b, c);
    if (slow == hoferlab::persistence::kInf) {
      GATE_CHECK(fast == hoferlab::persistence::kInf,
                 "trial " << trial << ": oracle infinite, got " << fast);
    } else {
      GATE_CHECK(std::abs(fast - slow) <= 1e-9,
                 "trial " << trial << ": got " << fast << ", oracle " << slow);
    }
  }
}

// --------------------------------------------------------------------------
// 9. Column reduction reproduces the rank-function barcode exactly
//    (endpoints and multiplicities) on 200 random complexes of <= 8 cells.
// --------------------------------------------------------------------------
void criterion_reduction_oracle() {
  Rng rng(909);
  for (int trial = 0; trial < 200; ++trial) {
    const auto cx = testutil::random_complex(rng);
    const auto fast = hoferlab::fc::reduce_to_barcode(cx);
    const auto slow = testutil::rank_barcode(cx);
    GATE_CHECK(testutil::same_barcode(fast, slow),
               "trial " << trial << " with " << cx.size() << " generators");
  }
}

// --------------------------------------------------------------------------
// 10. Stability: a 0.01 order-preserving perturbation of every action moves
//     the barcode by at most 0.01 in bottleneck distance, 100 trials.
// --------------------------------------------------------------------------
void criterion_stability() {
  Rng rng(1010);
  const double eps = 0.01;
  for (int trial = 0; trial < 100; ++trial) {
    const auto cx = testutil::random_complex(rng);
    std::vector<hoferlab::fc::Generator> gens = cx.generators();
    std::map<std::string, std::vector<std::string>> boundary;
    for (const auto& g : gens)
      if (!cx.boundary_of(g.id).empty())
        boundary[g.id] = cx.boundary_of(g.id);
    for (auto& g : gens) g.action += rng.uniform(-eps, eps);
    const hoferlab::fc::FilteredComplex moved(std::move(gens),
                                              std::move(boundary));
    const double d = hoferlab::persistence::bottleneck_distance(
        hoferlab::fc::reduce_to_barcode(cx),
        hoferlab::fc::reduce_to_barcode(moved));
    GATE_CHECK(d <= eps + 1e-12,
               "trial " << trial << ": moved " << d << " > " << eps);
  }
}

// --------------------------------------------------------------------------
// 11. Homology rank ladder: the standard twist scenario has rank exactly one
//     in degrees n + j(n-1), j = 0..2k-1, and zero elsewhere, k <= 8.
// --------------------------------------------------------------------------
void criterion_rank_ladder() {
  for (const int n : {2, 3}) {
    const ModelConfig config = default_config(n, kPi / 3.0, 2);
    const DifferentialRule rule = n == 2 ? DifferentialRule::SymmetryReduced
                                         : DifferentialRule::DegreeVanishing;
    for (int k = 1; k <= 8; ++k) {
      const FloerScenario scenario{1, k, 0, {}, config};
      const auto cx = hoferlab::floer::build_complex(scenario, rule);
      std::set<int> ladder;
      for (int j = 0; j < 2 * k; ++j) ladder.insert(n + j * (n - 1));
      const int top = n + (2 * k - 1) * (n - 1);
      for (int deg = -3; deg <= top + 3; ++deg) {
        const int expected = ladder.count(deg) ? 1 : 0;
        GATE_CHECK(hoferlab::fc::homology_rank(cx, deg) == expected,
                   "n=" << n << " k=" << k << " degree " << deg << ": rank "
                        << hoferlab::fc::homology_rank(cx, deg) << " vs "
                        << expected);
      }
    }
  }
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<void()> run;
  };
  const std::vector<Criterion> criteria = {
      {"spectral difference identity", criterion_spectral_identity},
      {"twist chord census", criterion_twist_census},
      {"grading oracle agreement", criterion_index_oracle},
      {"degree gap at the admissible twist power", criterion_degree_gap},
      {"interpolation oscillation identities", criterion_oscillation},
      {"quasi-isometry sandwich bounds", criterion_sandwich},
      {"boundary depth divergence", criterion_boundary_depth},
      {"bottleneck distance vs exhaustive oracle", criterion_bottleneck_oracle},
      {"column reduction vs rank oracle", criterion_reduction_oracle},
      {"perturbation stability", criterion_stability},
      {"homology rank ladder", criterion_rank_ladder},
  };

  int failed = 0;
  for (const auto& criterion : criteria) {
    try {
      criterion.run();
      std::printf("[PASS] %s\n", criterion.name);
    } catch (const std::exception& e) {
      ++failed;
      std::printf("[FAIL] %s\n       %s\n", criterion.name, e.what());
    }
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
