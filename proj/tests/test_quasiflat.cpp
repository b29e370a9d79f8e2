#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "hoferlab/chords.hpp"
#include "hoferlab/floer.hpp"
#include "hoferlab/local_model.hpp"
#include "hoferlab/quasiflat.hpp"
#include "test_oracles.hpp"

using hoferlab::model_error;
using hoferlab::floer::k_threshold;
using hoferlab::model::default_config;
using hoferlab::model::ModelConfig;
using hoferlab::model::sigma_config;
using hoferlab::num::Rng;
using hoferlab::quasiflat::hamiltonian_profile;
using hoferlab::quasiflat::hofer_upper_plain;
using hoferlab::quasiflat::hofer_upper_sigma;
using hoferlab::quasiflat::osc_profile;
using hoferlab::quasiflat::QuasiflatReport;
using hoferlab::quasiflat::sandwich;
using hoferlab::quasiflat::sigma_map;

namespace {
constexpr double kPi = 3.14159265358979323846;

double inf_norm(const std::vector<double>& a, const std::vector<double>& b) {
  double out = 0.0;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    const double x = i < a.size() ? a[i] : 0.0;
    const double y = i < b.size() ? b[i] : 0.0;
    out = std::max(out, std::abs(x - y));
  }
  return out;
}

double one_norm(const std::vector<double>& a, const std::vector<double>& b) {
  double out = 0.0;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    const double x = i < a.size() ? a[i] : 0.0;
    const double y = i < b.size() ? b[i] : 0.0;
    out += std::abs(x - y);
  }
  return out;
}
}  // namespace

TEST_CASE("profile oscillation") {
  CHECK(osc_profile({}) == 0.0);
  CHECK(osc_profile({3.0}) == 0.0);
  CHECK(osc_profile({1.0, -2.0, 5.0}) == 7.0);
  CHECK(osc_profile({-1.0, -4.0}) == 3.0);
}

TEST_CASE("normalized Hamiltonian breakpoint profile") {
  const ModelConfig config = default_config(2, kPi / 3.0, 3);
  const std::vector<double> v = {1.5, -2.0, 0.25};
  const auto profile = hamiltonian_profile(config, v);
  // r = 0, the top of the core band, then one value per coefficient band.
  REQUIRE(profile.size() == 5);
  CHECK(profile[0] == 0.0);
  CHECK(profile[1] == 0.0);  // the core band carries no coefficient
  double partial = 0.0;
  for (std::size_t b = 0; b < 3; ++b) {
    partial += v[b];
    CHECK(std::abs(profile[b + 2] - partial) <= 1e-12);
  }
  // The breakpoints carry the whole range: the Hamiltonian is monotone
  // across each band, so its oscillation is the breakpoint oscillation.
  double lo = 0.0, hi = 0.0;
  for (int s = 0; s <= 400; ++s) {
    const double h = config.hamiltonian_value(s / 400.0, v);
    lo = std::min(lo, h);
    hi = std::max(hi, h);
  }
  CHECK(std::abs(osc_profile(profile) - (hi - lo)) <= 1e-9);
}

TEST_CASE("sign-alternating doubling of a band vector") {
  CHECK(sigma_map({}).empty());
  CHECK(sigma_map({1.0, 2.0}) ==
        std::vector<double>{1.0, -1.0, 2.0, -2.0});
  CHECK(sigma_map({-0.5}) == std::vector<double>{-0.5, 0.5});
}

TEST_CASE("stage-by-stage cost of the plain interpolation") {
  const ModelConfig config = default_config(2, kPi / 3.0, 3);
  CHECK(hofer_upper_plain(config, {1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}) == 0.0);
  const std::vector<double> v = {0.0, 1.0, -0.5};
  const std::vector<double> w = {1.0, -1.0, 0.0};
  const double cost = hofer_upper_plain(config, v, w);
  // Each stage moves one band monotonically, so it costs exactly the
  // coefficient move, summing to the 1-norm of the difference.
  CHECK(std::abs(cost - one_norm(v, w)) <= 1e-12);
  CHECK(cost <= 2.0 * one_norm(v, w) + 1e-9);
  // Length mismatches are rejected rather than silently padded.
  CHECK_THROWS_AS(hofer_upper_plain(config, {2.0}, {}), model_error);
  CHECK(std::abs(hofer_upper_plain(config, {2.0}, {0.0}) - 2.0) <= 1e-12);
}

TEST_CASE("plain cost scales absolutely") {
  const ModelConfig config = default_config(2, kPi / 3.0, 3);
  Rng rng(1001);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> v(3), w(3);
    for (auto& x : v) x = rng.uniform(-4.0, 4.0);
    for (auto& x : w) x = rng.uniform(-4.0, 4.0);
    const double c = rng.uniform(-3.0, 3.0);
    std::vector<double> cv = v, cw = w;
    for (auto& x : cv) x *= c;
    for (auto& x : cw) x *= c;
    CHECK(std::abs(hofer_upper_plain(config, cv, cw) -
                   std::abs(c) * hofer_upper_plain(config, v, w)) <= 1e-9);
  }
}

TEST_CASE("sign-alternated cost collapses to the sup norm scale") {
  const ModelConfig sig = sigma_config(2, kPi / 3.0, 2);
  CHECK(hofer_upper_sigma(sig, {1.0, 2.0}, {1.0, 2.0}) == 0.0);

  const double cost = hofer_upper_sigma(sig, {0.0, 0.0}, {3.0, 1.0});
  CHECK(std::abs(cost - 3.0) <= 1e-9);
  CHECK(cost <= 2.0 * 3.0 + 1e-9);

  // Opposite signs add the two one-sided maxima.
  const double mixed = hofer_upper_sigma(sig, {0.0, 1.0}, {3.0, -1.0});
  CHECK(std::abs(mixed - (3.0 + 2.0)) <= 1e-9);

  Rng rng(2002);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<double> v(2), w(2);
    for (auto& x : v) x = rng.uniform(-4.0, 4.0);
    for (auto& x : w) x = rng.uniform(-4.0, 4.0);
    double up = 0.0, down = 0.0;
    for (int i = 0; i < 2; ++i) {
      up = std::max(up, w[static_cast<std::size_t>(i)] -
                            v[static_cast<std::size_t>(i)]);
      down = std::max(down, v[static_cast<std::size_t>(i)] -
                                w[static_cast<std::size_t>(i)]);
    }
    const double expected = std::max(0.0, up) + std::max(0.0, down);
    const double got = hofer_upper_sigma(sig, v, w);
    CHECK(std::abs(got - expected) <= 1e-9);
    CHECK(got <= 2.0 * inf_norm(v, w) + 1e-9);
  }

  // The alternating construction needs the doubled layout.
  const ModelConfig plain = default_config(2, kPi / 3.0, 2);
  CHECK_THROWS_AS(hofer_upper_sigma(plain, {1.0}, {2.0}), model_error);
  CHECK_THROWS_AS(hofer_upper_sigma(sig, {1.0, 2.0, 3.0}, {0.0, 0.0, 0.0}),
                  model_error);
}

TEST_CASE("sandwich report on equal profiles") {
  const ModelConfig config = default_config(2, kPi / 3.0, 3);
  const QuasiflatReport rep =
      sandwich(config, {1.0, 2.0, 0.5}, {1.0, 2.0, 0.5});
  CHECK(rep.lower == 0.0);
  CHECK(rep.upper_plain == 0.0);
  CHECK(rep.upper_sigma == 0.0);
  CHECK(rep.exact_inf_norm == 0.0);
  CHECK(rep.exact_one_norm == 0.0);
  CHECK(!rep.v_nudged);
  CHECK(!rep.w_nudged);
  CHECK(rep.ham_absolute);
}

TEST_CASE("sandwich: the lower recovers exactly half the sup distance") {
  const ModelConfig config = default_config(2, kPi / 3.0, 3);
  const QuasiflatReport rep = sandwich(config, {1.0, -0.5, 0.25},
                                       {-1.0, 0.75, 0.25});
  CHECK(std::abs(rep.exact_inf_norm - 2.0) <= 1e-9);
  CHECK(std::abs(rep.lower - 1.0) <= 1e-9);
  CHECK(rep.lower <= rep.upper_sigma + 1e-9);
  CHECK(rep.upper_sigma <= 2.0 * rep.exact_inf_norm + 1e-9);
}

TEST_CASE("sandwich holds on random profile pairs") {
  const ModelConfig config = default_config(2, kPi / 3.0, 3);
  Rng rng(3003);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(3), w(3);
    for (auto& x : v) x = rng.uniform(-4.0, 4.0);
    for (auto& x : w) x = rng.uniform(-4.0, 4.0);
    const QuasiflatReport rep = sandwich(config, v, w);
    // Norms are reported for the profiles actually used.
    CHECK(rep.exact_inf_norm == inf_norm(rep.v, rep.w));
    CHECK(rep.exact_one_norm == one_norm(rep.v, rep.w));
    CHECK(std::abs(rep.lower - 0.5 * rep.exact_inf_norm) <= 1e-9);
    CHECK(rep.lower <= rep.upper_sigma + 1e-9);
    CHECK(rep.upper_sigma <= 2.0 * rep.exact_inf_norm + 1e-9);
    CHECK(rep.upper_plain <= 2.0 * rep.exact_one_norm + 1e-9);
    CHECK(rep.lower <= rep.upper_plain + 1e-9);
    CHECK(rep.ham_absolute);
  }
}

TEST_CASE("sandwich pads, nudges, and validates its inputs") {
  const ModelConfig config = default_config(2, kPi / 3.0, 3);

  SUBCASE("length padding") {
    const QuasiflatReport rep = sandwich(config, {1.0}, {0.5, 2.0});
    CHECK(rep.v.size() == 2);
    CHECK(rep.w.size() == 2);
    CHECK(rep.v[1] == 0.0);
    CHECK(std::abs(rep.exact_inf_norm - 2.0) <= 1e-9);
  }
  SUBCASE("resonant coordinates are nudged and flagged") {
    const double resonant = config.delta() / (2.0 * kPi);
    const QuasiflatReport rep = sandwich(config, {resonant, 1.0}, {2.0, 1.0});
    CHECK(rep.v_nudged);
    CHECK(!rep.w_nudged);
    CHECK(rep.v[0] != resonant);
    CHECK(std::abs(rep.v[0] - resonant) <= 1e-5);
    CHECK(hoferlab::chords::is_transverse(rep.v, config));
  }
  SUBCASE("an explicit twist power below the threshold is refused") {
    CHECK_THROWS_AS(sandwich(config, {3.0}, {0.5}, 5), model_error);
    const QuasiflatReport rep = sandwich(config, {3.0}, {0.5}, 20);
    CHECK(std::abs(rep.lower - 0.5 * 2.5) <= 1e-9);
  }
  SUBCASE("profiles longer than the layout are refused") {
    CHECK_THROWS_AS(sandwich(config, {1.0, 2.0, 3.0, 4.0}, {}), model_error);
  }
}

TEST_CASE("the lower bound ignores the ambient radial offset") {
  const hoferlab::num::PiecewiseLinear ambient({0.0, 0.5, 1.0},
                                               {0.02, -0.04, 0.01});
  const ModelConfig plain = default_config(2, kPi / 3.0, 3);
  const ModelConfig offset(2, kPi / 3.0,
                           hoferlab::model::default_partition(3), 0, ambient,
                           false);
  const std::vector<double> v = {2.0, -1.0, 0.5};
  const std::vector<double> w = {-0.5, 1.5, 1.0};
  const QuasiflatReport a = sandwich(plain, v, w);
  const QuasiflatReport b = sandwich(offset, v, w);
  CHECK(std::abs(a.lower - b.lower) <= 1e-12);
  CHECK(std::abs(a.upper_plain - b.upper_plain) <= 1e-12);
}
