// hoferlab CLI: chord tables, Maslov indices, barcodes, Hofer-geometry
// bounds and boundary-depth sweeps for the twisted band model, as CSV/JSON.
//
// All numeric output uses %.17g and fixed row orders, so identical inputs
// (config + seed) produce byte-identical files regardless of HOFERLAB_THREADS.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hoferlab/chords.hpp"
#include "hoferlab/filtered_complex.hpp"
#include "hoferlab/floer.hpp"
#include "hoferlab/local_model.hpp"
#include "hoferlab/numerics.hpp"
#include "hoferlab/parallel.hpp"
#include "hoferlab/persistence.hpp"
#include "hoferlab/quasiflat.hpp"

namespace {

using namespace hoferlab;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string join(const std::vector<double>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += fmt(v[i]);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw model_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw model_error("cannot write " + path);
  out << text;
}

model::ModelConfig load_config(const std::string& path) {
  if (path.empty()) return model::default_config(2, num::kPi / 3.0, 3);
  return model::config_from_json(read_file(path));
}

// One-line config echo for CSV headers.
std::string config_line(const model::ModelConfig& config) {
  return nlohmann::json::parse(model::config_to_json(config)).dump();
}

floer::DifferentialRule parse_rule(const std::string& name, int n) {
  if (name == "degree-vanishing") return floer::DifferentialRule::DegreeVanishing;
  if (name == "disk-pairing") return floer::DifferentialRule::DiskPairing;
  if (name == "symmetry-reduced") return floer::DifferentialRule::SymmetryReduced;
  if (name == "auto") {
    if (n == 1) return floer::DifferentialRule::DiskPairing;
    if (n == 2) return floer::DifferentialRule::SymmetryReduced;
    return floer::DifferentialRule::DegreeVanishing;
  }
  throw model_error("unknown differential rule '" + name +
                    "' (expected degree-vanishing, disk-pairing, "
                    "symmetry-reduced, or auto)");
}

// The symmetry-reduced differential is an imported reduction argument, not
// an independent disk count; sweeps that rely on it say so in their header.
std::string rule_note(floer::DifferentialRule rule) {
  std::string line = std::string("# rule: ") + floer::rule_name(rule);
  if (rule == floer::DifferentialRule::SymmetryReduced)
    line += " (pairing imported from the n = 2 reduction argument, "
            "not an independent disk count)";
  return line + "\n";
}

void require_transverse_or_nudge(std::vector<double>& v,
                                 const model::ModelConfig& config, bool nudge,
                                 bool& nudged) {
  if (chords::is_transverse(v, config)) {
    nudged = false;
    return;
  }
  if (!nudge)
    throw non_transverse_error(
        "a band coefficient sits on the branch locus; rerun with --nudge to "
        "shift it by 1e-6");
  nudged = chords::nudge_profile(v, config);
}

std::vector<chords::Chord> gather_chords(const model::ModelConfig& config,
                                         const std::vector<double>& v, int i,
                                         int k) {
  std::vector<chords::Chord> all;
  if (k > 0) all = chords::enumerate_tau_chords(config, i, k);
  std::vector<chords::Chord> phi = chords::enumerate_phi_chords(config, v, i, k);
  all.insert(all.end(), phi.begin(), phi.end());
  return all;
}

int run_chords(const std::string& config_path, int i, int k,
               std::vector<double> v, bool nudge, bool with_oracle,
               const std::string& out) {
  model::ModelConfig config = load_config(config_path);
  bool nudged = false;
  require_transverse_or_nudge(v, config, nudge, nudged);
  std::vector<chords::Chord> all = gather_chords(config, v, i, k);

  std::ostringstream csv;
  csv << "# hoferlab " << (with_oracle ? "indices" : "chords") << "\n"
      << "# config: " << config_line(config) << "\n"
      << "# i: " << i << "\n# k: " << k << "\n"
      << "# v: " << join(v, ",") << "\n"
      << "# nudged: " << (nudged ? "true" : "false") << "\n";
  csv << "sector,s,m,branch,index,action";
  if (with_oracle) csv << ",oracle,match";
  csv << "\n";
  for (const chords::Chord& c : all) {
    csv << (c.sector == chords::Sector::Tau ? "tau" : "phi") << ','
        << fmt(c.s) << ',' << c.m << ','
        << (c.branch == chords::Branch::Plus ? "plus" : "minus") << ','
        << c.index << ',' << fmt(c.action);
    if (with_oracle) {
      const int oracle = chords::maslov_oracle(config, c, v, k);
      csv << ',' << oracle << ',' << (oracle == c.index ? "yes" : "NO");
    }
    csv << "\n";
  }
  write_output(out, csv.str());
  return 0;
}

int run_barcode(const std::string& config_path, const std::string& complex_path,
                int i, int k, std::vector<double> v, const std::string& rule_name,
                bool nudge, const std::string& out) {
  if (!complex_path.empty()) {
    fc::FilteredComplex complex = fc::complex_from_json(read_file(complex_path));
    write_output(out, persistence::barcode_to_json(fc::reduce_to_barcode(complex)) + "\n");
    return 0;
  }
  model::ModelConfig config = load_config(config_path);
  bool nudged = false;
  require_transverse_or_nudge(v, config, nudge, nudged);
  floer::DifferentialRule rule = parse_rule(rule_name, config.n());
  floer::FloerScenario scenario{i, k, 0, v, config};
  persistence::Barcode bc = fc::reduce_to_barcode(floer::build_complex(scenario, rule));
  write_output(out, persistence::barcode_to_json(bc) + "\n");
  return 0;
}

// Deterministic pair stream shared by `quasiflat` and `sweep`.
std::vector<std::pair<std::vector<double>, std::vector<double>>> make_pairs(
    const model::ModelConfig& config, int pairs, std::uint64_t seed) {
  const int dim = std::min(config.bands(), 3);
  num::Rng rng(seed);
  std::vector<std::pair<std::vector<double>, std::vector<double>>> out;
  out.reserve(static_cast<std::size_t>(pairs));
  for (int p = 0; p < pairs; ++p) {
    std::vector<double> v(static_cast<std::size_t>(dim)),
        w(static_cast<std::size_t>(dim));
    for (double& x : v) x = rng.uniform(-4.0, 4.0);
    for (double& x : w) x = rng.uniform(-4.0, 4.0);
    out.emplace_back(std::move(v), std::move(w));
  }
  return out;
}

int run_quasiflat(const std::string& config_path, int pairs, std::uint64_t seed,
                  std::optional<int> k, bool triples_only,
                  const std::string& out) {
  model::ModelConfig config = load_config(config_path);
  auto inputs = make_pairs(config, pairs, seed);
  std::vector<quasiflat::QuasiflatReport> reports(inputs.size());
  par::parallel_for(inputs.size(), [&](std::size_t p) {
    reports[p] = quasiflat::sandwich(config, inputs[p].first, inputs[p].second, k);
  });

  std::ostringstream csv;
  csv << "# hoferlab " << (triples_only ? "sweep" : "quasiflat") << "\n"
      << "# config: " << config_line(config) << "\n"
      << "# pairs: " << pairs << "\n# seed: " << seed << "\n";
  if (triples_only) {
    csv << "inf_norm,lower,upper_sigma\n";
    for (const auto& r : reports)
      csv << fmt(r.exact_inf_norm) << ',' << fmt(r.lower) << ','
          << fmt(r.upper_sigma) << "\n";
  } else {
    csv << "v,w,lower,upper_plain,upper_sigma,exact_inf_norm,exact_one_norm,"
           "v_nudged,w_nudged,ham_absolute\n";
    for (const auto& r : reports)
      csv << join(r.v, ";") << ',' << join(r.w, ";") << ',' << fmt(r.lower)
          << ',' << fmt(r.upper_plain) << ',' << fmt(r.upper_sigma) << ','
          << fmt(r.exact_inf_norm) << ',' << fmt(r.exact_one_norm) << ','
          << (r.v_nudged ? "true" : "false") << ','
          << (r.w_nudged ? "true" : "false") << ','
          << (r.ham_absolute ? "true" : "false") << "\n";
  }
  write_output(out, csv.str());
  return 0;
}

int run_boundary_depth(const std::string& config_path, int kmax, int ell,
                       const std::string& rule_name, const std::string& out) {
  model::ModelConfig config = load_config(config_path);
  floer::DifferentialRule rule = parse_rule(rule_name, config.n());
  std::vector<floer::DepthResult> rows(static_cast<std::size_t>(kmax));
  par::parallel_for(rows.size(), [&](std::size_t idx) {
    rows[idx] = floer::boundary_depth_scenario(config, static_cast<int>(idx) + 1,
                                               ell, rule);
  });

  std::ostringstream csv;
  csv << "# hoferlab boundary-depth\n"
      << "# config: " << config_line(config) << "\n"
      << "# ell: " << ell << "\n"
      << rule_note(rule);
  csv << "k,beta,lower_bound\n";
  for (std::size_t idx = 0; idx < rows.size(); ++idx)
    csv << (idx + 1) << ',' << fmt(rows[idx].beta) << ','
        << fmt(rows[idx].lower_bound) << "\n";
  write_output(out, csv.str());
  return 0;
}

#define SELF_CHECK(cond, what)                                   \
  do {                                                           \
    if (!(cond)) throw model_error(std::string("selftest: ") + what); \
  } while (0)

int run_selftest() {
  // Barcode JSON round trip and shift distance.
  {
    persistence::Barcode b = persistence::barcode_from_json(
        R"({"bars":[{"left":0.0,"right":3.0},{"left":5.0,"right":"inf"}]})");
    persistence::Barcode b2 = persistence::barcode_from_json(persistence::barcode_to_json(b));
    SELF_CHECK(persistence::bottleneck_distance(b, b2) == 0.0, "barcode round trip");
    persistence::Barcode c({{0.25, 3.25, 1}, {5.25, persistence::kInf, 1}});
    SELF_CHECK(std::abs(persistence::bottleneck_distance(b, c) - 0.25) <= 1e-12,
               "shifted barcode distance");
    SELF_CHECK(persistence::boundary_depth(b) == 3.0, "boundary depth");
  }
  std::printf("ok: barcode metrics\n");

  // Toy complex reduction.
  {
    fc::FilteredComplex complex(
        {{"a", 1, 0.0}, {"b", 1, 1.0}, {"c", 2, 2.0}},
        {{"c", {"b"}}});
    persistence::Barcode bc = fc::reduce_to_barcode(complex);
    SELF_CHECK(bc.expanded().size() == 2, "toy complex bar count");
    SELF_CHECK(fc::homology_rank(complex, 1) == 1, "toy complex rank");
  }
  std::printf("ok: filtered complex reduction\n");

  model::ModelConfig config = model::default_config(2, num::kPi / 3.0, 3);

  // Twist census and degree ladder at k = 4.
  {
    const int k = 4, n = config.n();
    std::vector<chords::Chord> tau = chords::enumerate_tau_chords(config, 0, k);
    SELF_CHECK(tau.size() == static_cast<std::size_t>(2 * k), "twist chord count");
    std::vector<int> want, got;
    for (int j = 0; j < 2 * k; ++j) want.push_back(n + j * (n - 1));
    for (const auto& c : tau) got.push_back(c.index);
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    SELF_CHECK(want == got, "twist degree ladder");
  }
  std::printf("ok: twist census\n");

  // Index oracle and transport oracle on a mixed scenario.
  {
    const int i = 0, k = 3;
    std::vector<double> v{1.5, 0.2};
    for (const chords::Chord& c : gather_chords(config, v, i, k)) {
      SELF_CHECK(chords::maslov_oracle(config, c, v, k) == c.index,
                 "index oracle mismatch");
      if (c.sector == chords::Sector::Phi)
        SELF_CHECK(chords::geodesic_transport_oracle(config, c, v),
                   "transport oracle mismatch");
    }
  }
  std::printf("ok: index and transport oracles\n");

  // Sandwich identity on one pair.
  {
    quasiflat::QuasiflatReport r =
        quasiflat::sandwich(config, {1.0, 2.0, 0.5}, {0.5, -1.0, 1.0});
    SELF_CHECK(std::abs(r.lower - 0.5 * r.exact_inf_norm) <= 1e-9, "lower identity");
    SELF_CHECK(r.lower <= r.upper_sigma + 1e-12, "sandwich order");
    SELF_CHECK(r.upper_sigma <= 2.0 * r.exact_inf_norm + 1e-9, "sigma ceiling");
  }
  std::printf("ok: sandwich identity\n");

  // Boundary depth growth under the n = 2 rule.
  {
    floer::DepthResult d2 = floer::boundary_depth_scenario(
        config, 2, 1, floer::DifferentialRule::SymmetryReduced);
    floer::DepthResult d4 = floer::boundary_depth_scenario(
        config, 4, 1, floer::DifferentialRule::SymmetryReduced);
    SELF_CHECK(d2.beta >= d2.lower_bound - 1e-8, "depth bound at k = 2");
    SELF_CHECK(d4.beta >= d4.lower_bound - 1e-8, "depth bound at k = 4");
    SELF_CHECK(d4.beta > d2.beta, "depth growth");
  }
  std::printf("ok: boundary depth\n");

  // Homology ranks of the pure-twist scenario, n = 3.
  {
    model::ModelConfig c3 = model::default_config(3, num::kPi / 3.0, 1);
    const int k = 2, n = 3;
    floer::FloerScenario scenario{0, k, 0, {}, c3};
    fc::FilteredComplex complex =
        floer::build_complex(scenario, floer::DifferentialRule::DegreeVanishing);
    for (int j = 0; j < 2 * k; ++j)
      SELF_CHECK(fc::homology_rank(complex, n + j * (n - 1)) == 1, "rank one");
    SELF_CHECK(fc::homology_rank(complex, n - 1) == 0, "rank zero below");
  }
  std::printf("ok: homology ranks\n");

  std::printf("selftest passed\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "hoferlab: chords, Maslov indices, barcodes and Hofer-geometry bounds "
      "for the twisted band model"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path,
                 "model configuration JSON (default: built-in n=2, delta=pi/3, d=3)");

  int i = 0, k = 3, kmax = 64, ell = 0, pairs = 100, kq = -1;
  std::uint64_t seed = 1;
  std::vector<double> v;
  bool nudge = false;
  std::string out, complex_path, rule = "auto";

  CLI::App* c_chords = app.add_subcommand("chords", "enumerate chords as CSV");
  CLI::App* c_indices =
      app.add_subcommand("indices", "chords CSV with the crossing-count oracle");
  for (CLI::App* sub : {c_chords, c_indices}) {
    sub->add_option("--i", i, "twist gap index");
    sub->add_option("--k", k, "twist power (0 = no twist sector)");
    sub->add_option("--v", v, "band coefficients, comma separated")->delimiter(',');
    sub->add_flag("--nudge", nudge, "shift resonant coefficients by 1e-6");
    sub->add_option("--out", out, "output file (default stdout)");
  }

  CLI::App* c_barcode =
      app.add_subcommand("barcode", "barcode JSON of a complex file or scenario");
  c_barcode->add_option("--complex", complex_path, "filtered complex JSON file");
  c_barcode->add_option("--i", i, "twist gap index");
  c_barcode->add_option("--k", k, "twist power");
  c_barcode->add_option("--v", v, "band coefficients")->delimiter(',');
  c_barcode->add_option("--rule", rule,
                        "degree-vanishing | disk-pairing | symmetry-reduced | auto");
  c_barcode->add_flag("--nudge", nudge, "shift resonant coefficients by 1e-6");
  c_barcode->add_option("--out", out, "output file (default stdout)");

  CLI::App* c_quasi =
      app.add_subcommand("quasiflat", "sandwich reports for random pairs");
  CLI::App* c_sweep =
      app.add_subcommand("sweep", "(inf_norm, lower, upper_sigma) triples");
  for (CLI::App* sub : {c_quasi, c_sweep}) {
    sub->add_option("--pairs", pairs, "number of random pairs");
    sub->add_option("--seed", seed, "RNG seed");
    sub->add_option("--k", kq, "twist power override (default: pair threshold)");
    sub->add_option("--out", out, "output file (default stdout)");
  }

  CLI::App* c_depth =
      app.add_subcommand("boundary-depth", "beta and its bound for k = 1..kmax");
  c_depth->add_option("--kmax", kmax, "largest band coefficient");
  c_depth->add_option("--ell", ell, "twist power of the fixed factor");
  c_depth->add_option("--rule", rule,
                      "degree-vanishing | disk-pairing | symmetry-reduced | auto");
  c_depth->add_option("--out", out, "output file (default stdout)");

  CLI::App* c_self = app.add_subcommand("selftest", "compact invariant suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(c_chords))
      return run_chords(config_path, i, k, v, nudge, false, out);
    if (app.got_subcommand(c_indices))
      return run_chords(config_path, i, k, v, nudge, true, out);
    if (app.got_subcommand(c_barcode))
      return run_barcode(config_path, complex_path, i, k, v, rule, nudge, out);
    if (app.got_subcommand(c_quasi))
      return run_quasiflat(config_path, pairs, seed,
                           kq > 0 ? std::optional<int>(kq) : std::nullopt,
                           false, out);
    if (app.got_subcommand(c_sweep))
      return run_quasiflat(config_path, pairs, seed,
                           kq > 0 ? std::optional<int>(kq) : std::nullopt,
                           true, out);
    if (app.got_subcommand(c_depth))
      return run_boundary_depth(config_path, kmax, ell, rule, out);
    if (app.got_subcommand(c_self)) return run_selftest();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "error: no subcommand\n";
  return 1;
}
