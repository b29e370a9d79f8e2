#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace hoferlab {

// Inputs left the model's validity domain: bad shell data, inconsistent
// complexes, malformed matchings, thresholds not met, ...
struct model_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A transversality requirement failed: a level tangent to a profile maximum,
// a coefficient resonant with the fiber separation angle, ...
struct non_transverse_error : model_error {
  using model_error::model_error;
};

namespace num {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647692;

// Deterministic uniform variates built from the raw mt19937_64 stream.
// std::uniform_real_distribution is implementation-defined, so its output is
// not reproducible across standard libraries; (x >> 11) * 2^-53 is.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  // Uniform integer in [lo, hi], both inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1u;
    return lo + static_cast<std::int64_t>(gen_() % span);
  }
  bool coin() { return (gen_() & 1u) != 0; }

 private:
  std::mt19937_64 gen_;
};

// Bisection for a sign change of f on [lo, hi]. Requires f(lo) and f(hi) of
// opposite sign (either may be zero). Shrinks the bracket until its width
// drops below tol — by default all the way to floating-point resolution,
// which keeps residuals small even where f has steep slopes — and returns
// the midpoint.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double tol = 0.0);

// Piecewise-linear function of one variable given by tabulated breakpoints,
// extended by its end values outside the table. The empty table is the zero
// function. Models the configurable bounded offset added to both primitives.
class PiecewiseLinear {
 public:
  PiecewiseLinear() = default;
  PiecewiseLinear(std::vector<double> xs, std::vector<double> ys);

  double operator()(double x) const;
  // max |f| over [lo, hi]; attained at a breakpoint or an interval end.
  double max_abs_on(double lo, double hi) const;
  bool is_zero() const { return xs_.empty(); }
  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& ys() const { return ys_; }

 private:
  std::vector<double> xs_, ys_;
};

// Wrap an angle to (-pi, pi].
double wrap_angle(double x);

}  // namespace num
}  // namespace hoferlab
