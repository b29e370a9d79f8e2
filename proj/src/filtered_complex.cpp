#include "hoferlab/filtered_complex.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "json.hpp"

namespace hoferlab::fc {

namespace {

const std::vector<std::string> kEmptyBoundary;

// XOR-cancel repeated ids, returning the sorted support of the F2 sum.
std::vector<std::string> canonical_f2(std::vector<std::string> ids) {
  std::sort(ids.begin(), ids.end());
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < ids.size()) {
    std::size_t j = i;
    while (j < ids.size() && ids[j] == ids[i]) ++j;
    if ((j - i) % 2 == 1) out.push_back(ids[i]);
    i = j;
  }
  return out;
}

// Order in which the reduction consumes generators: by action, ties by id.
std::vector<std::size_t> filtration_order(const std::vector<Generator>& gens) {
  std::vector<std::size_t> order(gens.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (gens[a].action != gens[b].action) return gens[a].action < gens[b].action;
    return gens[a].id < gens[b].id;
  });
  return order;
}

// Column reduction bookkeeping shared by reduce_to_barcode and homology_rank:
// pairs[j] = the position killed by position j (or npos), in filtration order.
struct Reduction {
  std::vector<std::size_t> order;              // filtration positions -> generator index
  std::vector<std::size_t> killer_of;          // per position: killer position or npos
  std::vector<char> has_killer;                // per position
  std::vector<char> column_empty;              // per position: reduced column vanished
};

Reduction run_reduction(const FilteredComplex& complex) {
  const auto& gens = complex.generators();
  Reduction red;
  red.order = filtration_order(gens);
  const std::size_t n = gens.size();
  std::vector<std::size_t> position_of(n);
  for (std::size_t p = 0; p < n; ++p) position_of[red.order[p]] = p;

  red.killer_of.assign(n, static_cast<std::size_t>(-1));
  red.has_killer.assign(n, 0);
  red.column_empty.assign(n, 0);

  std::map<std::string, std::size_t> index_of;
  for (std::size_t i = 0; i < n; ++i) index_of[gens[i].id] = i;

  // Columns as ascending position lists; the pivot is the largest entry.
  std::vector<std::vector<std::size_t>> columns(n);
  std::vector<std::size_t> owner(n, static_cast<std::size_t>(-1));
  for (std::size_t p = 0; p < n; ++p) {
    std::vector<std::size_t> col;
    for (const std::string& id : complex.boundary_of(gens[red.order[p]].id))
      col.push_back(position_of[index_of.at(id)]);
    std::sort(col.begin(), col.end());
    while (!col.empty()) {
      const std::size_t pivot = col.back();
      const std::size_t other = owner[pivot];
      if (other == static_cast<std::size_t>(-1)) break;
      // XOR with the column already owning this pivot.
      std::vector<std::size_t> merged;
      std::set_symmetric_difference(col.begin(), col.end(),
                                    columns[other].begin(), columns[other].end(),
                                    std::back_inserter(merged));
      col = std::move(merged);
    }
    if (col.empty()) {
      red.column_empty[p] = 1;
    } else {
      const std::size_t pivot = col.back();
      owner[pivot] = p;
      red.killer_of[pivot] = p;
      red.has_killer[pivot] = 1;
      columns[p] = std::move(col);
    }
  }
  return red;
}

}  // namespace

FilteredComplex::FilteredComplex(
    std::vector<Generator> generators,
    std::map<std::string, std::vector<std::string>> boundary)
    : generators_(std::move(generators)) {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (!position_.emplace(generators_[i].id, i).second)
      throw model_error("complex: duplicate generator id \"" + generators_[i].id + "\"");
  }
  for (auto& [id, combo] : boundary) {
    if (!position_.count(id))
      throw model_error("complex: boundary given for unknown id \"" + id + "\"");
    std::vector<std::string> support = canonical_f2(std::move(combo));
    for (const std::string& target : support)
      if (!position_.count(target))
        throw model_error("complex: boundary of \"" + id +
                          "\" references unknown id \"" + target + "\"");
    if (!support.empty()) boundary_.emplace(id, std::move(support));
  }
}

const std::vector<std::string>& FilteredComplex::boundary_of(
    const std::string& id) const {
  const auto it = boundary_.find(id);
  return it == boundary_.end() ? kEmptyBoundary : it->second;
}

const Generator& FilteredComplex::generator(const std::string& id) const {
  const auto it = position_.find(id);
  if (it == position_.end())
    throw model_error("complex: unknown generator id \"" + id + "\"");
  return generators_[it->second];
}

ValidationReport validate(const FilteredComplex& complex) {
  for (const Generator& g : complex.generators()) {
    for (const std::string& tid : complex.boundary_of(g.id)) {
      const Generator& t = complex.generator(tid);
      if (t.degree != g.degree - 1)
        return {false, "boundary of \"" + g.id + "\" hits \"" + tid +
                           "\" without dropping degree by exactly 1"};
      if (!(t.action < g.action))
        return {false, "boundary of \"" + g.id + "\" hits \"" + tid +
                           "\" without strictly decreasing action"};
    }
  }
  for (const Generator& g : complex.generators()) {
    std::vector<std::string> square;
    for (const std::string& tid : complex.boundary_of(g.id))
      for (const std::string& uid : complex.boundary_of(tid))
        square.push_back(uid);
    square = canonical_f2(std::move(square));
    if (!square.empty())
      return {false, "boundary applied twice to \"" + g.id +
                         "\" is nonzero (first residual: \"" + square.front() + "\")"};
  }
  return {true, ""};
}

persistence::Barcode reduce_to_barcode(const FilteredComplex& complex) {
  const ValidationReport report = validate(complex);
  if (!report.ok) throw model_error("reduce_to_barcode: " + report.message);

  const auto& gens = complex.generators();
  const Reduction red = run_reduction(complex);
  std::vector<persistence::Bar> bars;
  for (std::size_t p = 0; p < gens.size(); ++p) {
    const Generator& g = gens[red.order[p]];
    if (red.has_killer[p]) {
      const Generator& killer = gens[red.order[red.killer_of[p]]];
      bars.push_back({g.action, killer.action, 1});
    } else if (red.column_empty[p]) {
      bars.push_back({g.action, persistence::kInf, 1});
    }
  }
  return persistence::Barcode(std::move(bars));
}

int homology_rank(const FilteredComplex& complex, int degree) {
  const ValidationReport report = validate(complex);
  if (!report.ok) throw model_error("homology_rank: " + report.message);

  const auto& gens = complex.generators();
  const Reduction red = run_reduction(complex);
  int rank = 0;
  for (std::size_t p = 0; p < gens.size(); ++p)
    if (red.column_empty[p] && !red.has_killer[p] &&
        gens[red.order[p]].degree == degree)
      ++rank;
  return rank;
}

FilteredComplex complex_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw model_error(std::string("complex JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("generators") || !doc["generators"].is_array())
    throw model_error("complex JSON: expected an object with a \"generators\" array");
  std::vector<Generator> gens;
  for (const auto& item : doc["generators"]) {
    Generator g;
    if (!item.contains("id") || !item["id"].is_string())
      throw model_error("complex JSON: generator needs a string \"id\"");
    g.id = item["id"].get<std::string>();
    if (!item.contains("degree") || !item["degree"].is_number_integer())
      throw model_error("complex JSON: generator needs an integer \"degree\"");
    g.degree = item["degree"].get<int>();
    if (!item.contains("action") || !item["action"].is_number())
      throw model_error("complex JSON: generator needs a numeric \"action\"");
    g.action = item["action"].get<double>();
    gens.push_back(std::move(g));
  }
  std::map<std::string, std::vector<std::string>> boundary;
  if (doc.contains("boundary")) {
    if (!doc["boundary"].is_object())
      throw model_error("complex JSON: \"boundary\" must be an object");
    for (const auto& [id, arr] : doc["boundary"].items()) {
      if (!arr.is_array())
        throw model_error("complex JSON: boundary of \"" + id + "\" must be an array");
      std::vector<std::string> combo;
      for (const auto& t : arr) {
        if (!t.is_string())
          throw model_error("complex JSON: boundary entries must be id strings");
        combo.push_back(t.get<std::string>());
      }
      boundary.emplace(id, std::move(combo));
    }
  }
  return FilteredComplex(std::move(gens), std::move(boundary));
}

std::string complex_to_json(const FilteredComplex& complex) {
  nlohmann::json doc;
  doc["generators"] = nlohmann::json::array();
  for (const Generator& g : complex.generators()) {
    nlohmann::json item;
    item["id"] = g.id;
    item["degree"] = g.degree;
    item["action"] = g.action;
    doc["generators"].push_back(item);
  }
  doc["boundary"] = nlohmann::json::object();
  for (const Generator& g : complex.generators()) {
    const auto& combo = complex.boundary_of(g.id);
    if (!combo.empty()) doc["boundary"][g.id] = combo;
  }
  return doc.dump(2);
}

}  // namespace hoferlab::fc
