#pragma once

#include <map>
#include <string>
#include <vector>

#include "hoferlab/persistence.hpp"

namespace hoferlab::fc {

// One basis element: an opaque id, an integer degree, a real action level.
struct Generator {
  std::string id;
  int degree = 0;
  double action = 0.0;
};

// A chain complex over F2 with integer degrees and a real action filtration.
// The boundary must lower degree by exactly one and strictly decrease action
// on every summand, and must square to zero; validate() checks all three.
class FilteredComplex {
 public:
  FilteredComplex() = default;
  // `boundary` maps a generator id to the F2 combination of ids forming its
  // boundary; listing an id twice cancels it.  Ids must be unique and every
  // referenced id must exist (structural errors throw model_error).
  FilteredComplex(std::vector<Generator> generators,
                  std::map<std::string, std::vector<std::string>> boundary);

  const std::vector<Generator>& generators() const { return generators_; }
  // Sorted unique ids of the boundary of `id` (empty when the boundary is 0).
  const std::vector<std::string>& boundary_of(const std::string& id) const;
  const Generator& generator(const std::string& id) const;
  std::size_t size() const { return generators_.size(); }

 private:
  std::vector<Generator> generators_;
  std::map<std::string, std::vector<std::string>> boundary_;
  std::map<std::string, std::size_t> position_;
};

struct ValidationReport {
  bool ok = true;
  std::string message;  // first violation, naming the generators involved
};

// Checks degree step, strict action decrease, and boundary-squared-zero.
ValidationReport validate(const FilteredComplex& complex);

// Barcode of the strict-sublevel persistence module: level lambda spans the
// generators with action < lambda.  A generator born at action a and killed
// at action b yields the bar (a, b]; survivors yield (a, inf).  Ties in
// action are broken by id order.  Throws model_error when validate() fails.
persistence::Barcode reduce_to_barcode(const FilteredComplex& complex);

// Dimension over F2 of the degree-d homology of the full complex.
int homology_rank(const FilteredComplex& complex, int degree);

// JSON round trip.  Schema:
//   {"generators":[{"id":"x","degree":1,"action":2.0}],"boundary":{"x":["y"]}}
FilteredComplex complex_from_json(const std::string& text);
std::string complex_to_json(const FilteredComplex& complex);

}  // namespace hoferlab::fc
