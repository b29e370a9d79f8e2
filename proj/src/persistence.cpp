#include "hoferlab/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "json.hpp"

namespace hoferlab::persistence {

namespace {

void check_bar(const Bar& bar) {
  if (!std::isfinite(bar.left)) throw model_error("bar: left endpoint must be finite");
  if (std::isnan(bar.right)) throw model_error("bar: right endpoint must not be NaN");
  if (!(bar.left < bar.right)) throw model_error("bar: requires left < right");
  if (bar.multiplicity < 1) throw model_error("bar: multiplicity must be >= 1");
}

// Matching cost between two bar copies: max endpoint displacement, with
// |inf - inf| = 0 and |finite - inf| = inf.
double pair_cost(const Bar& x, const Bar& y) {
  if (x.is_finite() != y.is_finite()) return kInf;
  const double dl = std::abs(x.left - y.left);
  if (!x.is_finite()) return dl;
  return std::max(dl, std::abs(x.right - y.right));
}

// Cost of leaving a bar copy unmatched: half its length.
double solo_cost(const Bar& x) { return x.is_finite() ? 0.5 * x.length() : kInf; }

// Bipartite feasibility for a fixed delta via augmenting paths.  Left nodes
// are the bars of B plus one slot per bar of C ("leave that C bar
// unmatched"); right nodes are the bars of C plus one slot per bar of B.
// Bar i of B may take bar j of C when pair_cost <= delta, or its own
// unmatched slot when solo_cost <= delta; slot-to-slot edges are free.  A
// perfect matching exists iff a delta-matching exists.
struct Assignment {
  std::vector<std::vector<int>> adj;  // left -> right candidates
  std::vector<int> right_owner;       // right -> left or -1

  bool try_augment(int u, std::vector<char>& seen) {
    for (int w : adj[static_cast<std::size_t>(u)]) {
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = 1;
      if (right_owner[static_cast<std::size_t>(w)] < 0 ||
          try_augment(right_owner[static_cast<std::size_t>(w)], seen)) {
        right_owner[static_cast<std::size_t>(w)] = u;
        return true;
      }
    }
    return false;
  }
};

std::optional<Matching> solve_matching(const std::vector<Bar>& eb,
                                       const std::vector<Bar>& ec,
                                       double delta) {
  const int nb = static_cast<int>(eb.size());
  const int nc = static_cast<int>(ec.size());
  Assignment as;
  as.adj.assign(static_cast<std::size_t>(nb + nc), {});
  as.right_owner.assign(static_cast<std::size_t>(nc + nb), -1);
  for (int i = 0; i < nb; ++i) {
    for (int j = 0; j < nc; ++j)
      if (pair_cost(eb[static_cast<std::size_t>(i)], ec[static_cast<std::size_t>(j)]) <= delta)
        as.adj[static_cast<std::size_t>(i)].push_back(j);
    if (solo_cost(eb[static_cast<std::size_t>(i)]) <= delta)
      as.adj[static_cast<std::size_t>(i)].push_back(nc + i);
  }
  for (int j = 0; j < nc; ++j) {
    auto& row = as.adj[static_cast<std::size_t>(nb + j)];
    if (solo_cost(ec[static_cast<std::size_t>(j)]) <= delta) row.push_back(j);
    for (int i = 0; i < nb; ++i) row.push_back(nc + i);  // slot pairs are free
  }
  int matched = 0;
  for (int u = 0; u < nb + nc; ++u) {
    std::vector<char> seen(static_cast<std::size_t>(nc + nb), 0);
    if (as.try_augment(u, seen)) ++matched;
  }
  if (matched != nb + nc) return std::nullopt;
  Matching mu;
  for (int j = 0; j < nc; ++j) {
    const int u = as.right_owner[static_cast<std::size_t>(j)];
    if (u >= 0 && u < nb)
      mu.pairs.emplace_back(static_cast<std::size_t>(u), static_cast<std::size_t>(j));
  }
  return mu;
}

}  // namespace

Barcode::Barcode(std::vector<Bar> bars) {
  for (const Bar& bar : bars) check_bar(bar);
  std::sort(bars.begin(), bars.end(), [](const Bar& a, const Bar& b) {
    if (a.left != b.left) return a.left < b.left;
    return a.right < b.right;
  });
  for (const Bar& bar : bars) {
    if (!bars_.empty() && bars_.back().left == bar.left &&
        bars_.back().right == bar.right) {
      bars_.back().multiplicity += bar.multiplicity;
    } else {
      bars_.push_back(bar);
    }
  }
}

std::vector<Bar> Barcode::expanded() const {
  std::vector<Bar> out;
  for (const Bar& bar : bars_)
    for (long c = 0; c < bar.multiplicity; ++c)
      out.push_back(Bar{bar.left, bar.right, 1});
  return out;
}

std::size_t Barcode::size() const {
  std::size_t total = 0;
  for (const Bar& bar : bars_) total += static_cast<std::size_t>(bar.multiplicity);
  return total;
}

bool is_delta_matching(const Barcode& b, const Barcode& c, const Matching& mu,
                       double delta) {
  if (delta < 0) throw model_error("is_delta_matching: delta must be >= 0");
  const std::vector<Bar> eb = b.expanded();
  const std::vector<Bar> ec = c.expanded();
  std::vector<char> used_b(eb.size(), 0), used_c(ec.size(), 0);
  for (const auto& [i, j] : mu.pairs) {
    if (i >= eb.size() || j >= ec.size())
      throw model_error("matching: index out of range");
    if (used_b[i] || used_c[j])
      throw model_error("matching: bar copy used twice");
    used_b[i] = used_c[j] = 1;
    if (!(pair_cost(eb[i], ec[j]) <= delta)) return false;
  }
  for (std::size_t i = 0; i < eb.size(); ++i)
    if (!used_b[i] && !(eb[i].length() <= 2 * delta)) return false;
  for (std::size_t j = 0; j < ec.size(); ++j)
    if (!used_c[j] && !(ec[j].length() <= 2 * delta)) return false;
  return true;
}

std::optional<Matching> find_delta_matching(const Barcode& b, const Barcode& c,
                                            double delta) {
  if (delta < 0) throw model_error("find_delta_matching: delta must be >= 0");
  return solve_matching(b.expanded(), c.expanded(), delta);
}

double bottleneck_distance(const Barcode& b, const Barcode& c) {
  const std::vector<Bar> eb = b.expanded();
  const std::vector<Bar> ec = c.expanded();
  const auto count_inf = [](const std::vector<Bar>& bars) {
    return std::count_if(bars.begin(), bars.end(),
                         [](const Bar& x) { return !x.is_finite(); });
  };
  if (count_inf(eb) != count_inf(ec)) return kInf;

  // The optimum is attained where some constraint becomes tight: at a
  // pairwise endpoint difference or at a half-length.
  std::set<double> candidates{0.0};
  for (const Bar& x : eb)
    for (const Bar& y : ec) {
      const double cost = pair_cost(x, y);
      if (std::isfinite(cost)) candidates.insert(cost);
    }
  for (const Bar& x : eb)
    if (x.is_finite()) candidates.insert(solo_cost(x));
  for (const Bar& y : ec)
    if (y.is_finite()) candidates.insert(solo_cost(y));

  const std::vector<double> cand(candidates.begin(), candidates.end());
  // Feasibility is monotone in delta: binary search for the first feasible.
  std::size_t lo = 0, hi = cand.size() - 1;
  if (!solve_matching(eb, ec, cand[hi]))
    throw model_error("bottleneck_distance: internal candidate set incomplete");
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (solve_matching(eb, ec, cand[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return cand[lo];
}

double boundary_depth(const Barcode& b) {
  double best = 0.0;
  for (const Bar& bar : b.bars())
    if (bar.is_finite()) best = std::max(best, bar.length());
  return best;
}

std::vector<double> spectral_invariants(const Barcode& b) {
  std::vector<double> out;
  for (const Bar& bar : b.bars())
    if (!bar.is_finite())
      for (long c = 0; c < bar.multiplicity; ++c) out.push_back(bar.left);
  std::sort(out.begin(), out.end());
  return out;
}

Barcode barcode_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw model_error(std::string("barcode JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("bars") || !doc["bars"].is_array())
    throw model_error("barcode JSON: expected an object with a \"bars\" array");
  std::vector<Bar> bars;
  for (const auto& item : doc["bars"]) {
    Bar bar;
    if (!item.contains("left") || !item["left"].is_number())
      throw model_error("barcode JSON: bar needs a numeric \"left\"");
    bar.left = item["left"].get<double>();
    if (!item.contains("right"))
      throw model_error("barcode JSON: bar needs a \"right\"");
    if (item["right"].is_string()) {
      if (item["right"].get<std::string>() != "inf")
        throw model_error("barcode JSON: non-numeric \"right\" must be \"inf\"");
      bar.right = kInf;
    } else if (item["right"].is_number()) {
      bar.right = item["right"].get<double>();
    } else {
      throw model_error("barcode JSON: \"right\" must be a number or \"inf\"");
    }
    bar.multiplicity = item.value("multiplicity", 1L);
    bars.push_back(bar);
  }
  return Barcode(std::move(bars));
}

std::string barcode_to_json(const Barcode& b) {
  nlohmann::json doc;
  doc["bars"] = nlohmann::json::array();
  for (const Bar& bar : b.expanded()) {
    nlohmann::json item;
    item["left"] = bar.left;
    if (bar.is_finite())
      item["right"] = bar.right;
    else
      item["right"] = "inf";
    doc["bars"].push_back(item);
  }
  return doc.dump(2);
}

}  // namespace hoferlab::persistence
