#pragma once

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hoferlab/numerics.hpp"

namespace hoferlab::persistence {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Half-open interval (left, right] with multiplicity; right may be +inf.
struct Bar {
  double left = 0.0;
  double right = kInf;
  long multiplicity = 1;

  bool is_finite() const { return right < kInf; }
  double length() const { return right - left; }
};

// Finite multiset of bars in canonical order: sorted by (left, right), equal
// endpoint pairs merged into one entry with summed multiplicity.
class Barcode {
 public:
  Barcode() = default;
  explicit Barcode(std::vector<Bar> bars);

  // Canonical merged representation.
  const std::vector<Bar>& bars() const& { return bars_; }
  // Rvalue overload: lets callers iterate bars() of a temporary barcode
  // without holding a reference into a destroyed object.
  std::vector<Bar> bars() && { return std::move(bars_); }
  // One entry per bar copy (multiplicities expanded), canonical order.
  std::vector<Bar> expanded() const;
  // Total number of bar copies.
  std::size_t size() const;
  bool empty() const { return bars_.empty(); }

 private:
  std::vector<Bar> bars_;
};

// Partial matching between bar copies of two barcodes: index pairs into the
// two expanded() lists. Each copy may be used at most once on each side.
struct Matching {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

// True iff every matched pair (a,b] ~ (c,d] satisfies |a-c| <= delta and
// |b-d| <= delta (with |inf-inf| = 0 and |finite-inf| = inf), and every
// unmatched bar (a,b] on either side satisfies b - a <= 2*delta.
// Throws model_error on out-of-range or repeated indices.
bool is_delta_matching(const Barcode& b, const Barcode& c, const Matching& mu,
                       double delta);

// Infimum over delta admitting a delta-matching. Returns +inf exactly when
// the two barcodes have different numbers of infinite bars (a convention:
// no finite delta can match them). The infimum is attained and is always one
// of the candidate values (an endpoint difference or a half-length), found by
// binary search with a bipartite-matching feasibility test.
double bottleneck_distance(const Barcode& b, const Barcode& c);

// A certificate matching for the given delta, if one exists.
std::optional<Matching> find_delta_matching(const Barcode& b, const Barcode& c,
                                            double delta);

// Length of the longest finite bar; 0 when there is none.
double boundary_depth(const Barcode& b);

// Left endpoints of the infinite bars, multiplicities expanded, ascending.
std::vector<double> spectral_invariants(const Barcode& b);

// JSON round trip.  Schema:
//   {"bars":[{"left":0.0,"right":3.0},{"left":5.0,"right":"inf"}]}
// Multiplicities are expanded on write and merged on read.
Barcode barcode_from_json(const std::string& text);
std::string barcode_to_json(const Barcode& b);

}  // namespace hoferlab::persistence
