#include "hoferlab/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace hoferlab::num {

double bisect(const std::function<double(double)>& f, double lo, double hi,
              double tol) {
  if (!(lo < hi)) throw model_error("bisect: empty bracket");
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw model_error("bisect: no sign change on the bracket");
  for (int it = 0; it < 200 && (hi - lo) > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at floating-point resolution
    const double fmid = f(mid);
    if (fmid == 0.0) return mid;
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

PiecewiseLinear::PiecewiseLinear(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.size() != ys_.size())
    throw model_error("piecewise-linear table: mismatched column lengths");
  for (std::size_t i = 1; i < xs_.size(); ++i)
    if (!(xs_[i - 1] < xs_[i]))
      throw model_error("piecewise-linear table: abscissae must increase");
}

double PiecewiseLinear::operator()(double x) const {
  if (xs_.empty()) return 0.0;
  if (x <= xs_.front()) return ys_.front();
  if (x >= xs_.back()) return ys_.back();
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  const std::size_t j = static_cast<std::size_t>(it - xs_.begin());
  const double t = (x - xs_[j - 1]) / (xs_[j] - xs_[j - 1]);
  return ys_[j - 1] + t * (ys_[j] - ys_[j - 1]);
}

double PiecewiseLinear::max_abs_on(double lo, double hi) const {
  if (xs_.empty()) return 0.0;
  if (hi < lo) std::swap(lo, hi);
  double best = std::max(std::abs((*this)(lo)), std::abs((*this)(hi)));
  for (std::size_t i = 0; i < xs_.size(); ++i)
    if (xs_[i] > lo && xs_[i] < hi)
      best = std::max(best, std::abs(ys_[i]));
  return best;
}

double wrap_angle(double x) {
  double y = std::fmod(x, kTwoPi);
  if (y <= -kPi) y += kTwoPi;
  if (y > kPi) y -= kTwoPi;
  return y;
}

}  // namespace hoferlab::num
