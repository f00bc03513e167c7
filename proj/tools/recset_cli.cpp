// Command-line front end: inspect recurrence orbits, growth reports, Newton
// polygons, irreducibility verdicts, subgroup solution counts, and full
// parameter sweeps. Exit codes: 0 success, 1 usage error, 2 internal
// invariant violation.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "recset/recset.hpp"

namespace {

using nlohmann::ordered_json;
using namespace recset;

ReportFormat parse_format(const std::string& f) {
  if (f == "csv") return ReportFormat::csv;
  if (f == "json") return ReportFormat::json;
  if (f == "plot-data" || f == "plotdata") return ReportFormat::plot_data;
  throw std::invalid_argument("unsupported format: " + f +
                              " (expected csv, json, or plot-data)");
}

void write_output(const std::string& out_file, const std::string& payload) {
  if (out_file.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream os(out_file, std::ios::binary);
  if (!os) throw std::invalid_argument("cannot open output file: " + out_file);
  os << payload;
  os.flush();
  if (!os) throw std::invalid_argument("write failed for output file: " + out_file);
}

std::string polygon_to_string(const LatticePolygon& g) {
  std::string s;
  for (size_t i = 0; i < g.vertices.size(); ++i) {
    if (i) s += ' ';
    s += '(' + std::to_string(g.vertices[i].i) + ',' +
         std::to_string(g.vertices[i].j) + ')';
  }
  return s;
}

const char* split_kind_name(SplitKind k) {
  switch (k) {
    case SplitKind::trivial: return "trivial";
    case SplitKind::segment_segment: return "segment+segment";
    case SplitKind::polygon_segment: return "polygon+segment";
    case SplitKind::polygon_polygon: return "polygon+polygon";
  }
  return "?";
}

std::string fp2_to_string(const Fp2& c) {
  std::string s = std::to_string(c.re());
  if (c.im() != 0) s += "+" + std::to_string(c.im()) + "*w";
  return s;
}

std::string poly2_to_text(const PolyFp2& P) {
  std::string s;
  for (const auto& [e, c] : P.terms())
    s += std::to_string(e.i) + ' ' + std::to_string(e.j) + ' ' +
         fp2_to_string(c) + '\n';
  return s;
}

int cmd_seq(uint64_t p, uint64_t K, uint64_t nterms, uint64_t period_cap,
            const std::string& fmt, const std::string& out_file) {
  Modulus m(p);
  RecurrenceSpec s = kfib_spec(K, m);
  auto orb = orbit_capped(s, period_cap);
  if (!orb)
    throw std::invalid_argument("period exceeds --period-cap " +
                                std::to_string(period_cap));
  uint64_t n = nterms == 0 ? orb->period : nterms;
  auto terms = iterate(s, n);
  auto values = ValueSet::from_orbit(*orb).values();
  if (fmt == "json") {
    ordered_json j;
    j["p"] = p;
    j["K"] = K;
    j["period"] = orb->period;
    j["terms"] = terms;
    j["set_card"] = orb->set_cardinality;
    j["values"] = values;
    write_output(out_file, j.dump(2) + "\n");
    return 0;
  }
  std::ostringstream os;
  os << "p: " << p << "\nK: " << K << "\nperiod: " << orb->period << "\nterms:";
  for (uint64_t t : terms) os << ' ' << t;
  os << "\nset_card: " << orb->set_cardinality << "\nvalues:";
  for (uint64_t v : values) os << ' ' << v;
  os << '\n';
  write_output(out_file, os.str());
  return 0;
}

int cmd_doubling(uint64_t p, uint64_t K, uint64_t period_cap,
                 const std::string& fmt, const std::string& out_file) {
  auto row = sweep_cell(p, K, period_cap);
  if (!row)
    throw std::invalid_argument(
        "cell unavailable: K divisible by p, or period exceeds --period-cap");
  write_output(out_file, emit_report({*row}, parse_format(fmt)));
  return 0;
}

int cmd_polygon(uint64_t p, const std::string& fmt,
                const std::string& out_file) {
  PolyFp P = parse_poly(std::cin, Modulus(p));
  if (P.is_zero())
    throw std::invalid_argument("polynomial must be nonzero");
  LatticePolygon g = newton_polygon(P);
  auto edges = edge_multiset(g);
  auto splits = minkowski_splits(g);
  if (fmt == "json") {
    ordered_json j;
    j["p"] = p;
    ordered_json verts = ordered_json::array();
    for (auto& v : g.vertices) verts.push_back({v.i, v.j});
    j["vertices"] = verts;
    j["lattice_points"] = lattice_points(g).size();
    ordered_json es = ordered_json::array();
    for (auto& [dir, len] : edges)
      es.push_back({{"dir", {dir.i, dir.j}}, {"length", len}});
    j["edges"] = es;
    ordered_json sp = ordered_json::array();
    for (auto& s : splits)
      sp.push_back({{"kind", split_kind_name(s.kind)},
                    {"a", polygon_to_string(s.a)},
                    {"b", polygon_to_string(s.b)}});
    j["splits"] = sp;
    write_output(out_file, j.dump(2) + "\n");
    return 0;
  }
  std::ostringstream os;
  os << "p: " << p << "\nvertices: " << polygon_to_string(g)
     << "\nlattice_points: " << lattice_points(g).size() << "\nedges:";
  for (auto& [dir, len] : edges)
    os << " (" << dir.i << ',' << dir.j << ")x" << len;
  os << "\nsplits: " << splits.size() << '\n';
  for (auto& s : splits)
    os << "  [" << split_kind_name(s.kind) << "] " << polygon_to_string(s.a)
       << " + " << polygon_to_string(s.b) << '\n';
  write_output(out_file, os.str());
  return 0;
}

int cmd_irred(uint64_t p, int ext, const std::string& fmt,
              const std::string& out_file) {
  PolyFp P = parse_poly(std::cin, Modulus(p));
  if (P.is_zero())
    throw std::invalid_argument("polynomial must be nonzero");
  IrredVerdict v = irreducible_oracle(P, ext);
  const char* kind = v.kind == IrredKind::irreducible  ? "irreducible"
                     : v.kind == IrredKind::reducible ? "reducible"
                                                      : "inconclusive";
  if (fmt == "json") {
    ordered_json j;
    j["p"] = p;
    j["ext"] = v.ext_degree;
    j["verdict"] = kind;
    j["note"] = v.note;
    if (v.factors) {
      j["factor1"] = poly2_to_text(v.factors->first);
      j["factor2"] = poly2_to_text(v.factors->second);
    }
    write_output(out_file, j.dump(2) + "\n");
    return 0;
  }
  std::ostringstream os;
  os << "p: " << p << "\next: " << v.ext_degree << "\nverdict: " << kind
     << "\nnote: " << v.note << '\n';
  if (v.factors) {
    os << "factor1:\n" << poly2_to_text(v.factors->first);
    os << "factor2:\n" << poly2_to_text(v.factors->second);
  }
  write_output(out_file, os.str());
  return 0;
}

int cmd_count(uint64_t p, uint64_t order, int ext, uint64_t c0,
              const std::string& fmt, const std::string& out_file) {
  Modulus m(p);
  PolyFp P = parse_poly(std::cin, m);
  if (P.is_zero())
    throw std::invalid_argument("polynomial must be nonzero");
  QuadField F(m);
  if (ext == 0) ext = (p - 1) % order == 0 ? 1 : 2;
  SubgroupGrid G = subgroup_of_order(F, order, ext);
  // the bound needs absolute irreducibility, so always check over F_{p^2}
  IrredVerdict v = irreducible_oracle(P, F, 2);
  IrredStatus st = v.kind == IrredKind::irreducible  ? IrredStatus::checked
                   : v.kind == IrredKind::reducible ? IrredStatus::failed
                                                    : IrredStatus::assumed;
  CountReport r = make_count_report(P, G, st, c0);
  const char* irr = st == IrredStatus::checked  ? "checked"
                    : st == IrredStatus::failed ? "failed"
                                                : "assumed";
  if (fmt == "json") {
    ordered_json j;
    j["p"] = p;
    j["ext"] = ext;
    j["group_order"] = G.order;
    j["solutions"] = r.solutions;
    j["bound"] = format_fixed6(r.bound_value);
    j["bound_applicable"] = r.bound_applicable;
    j["irreducibility"] = irr;
    j["hypothesis_failures"] = r.hypothesis_failures;
    write_output(out_file, j.dump(2) + "\n");
    return 0;
  }
  std::ostringstream os;
  os << "p: " << p << "\next: " << ext << "\ngroup_order: " << G.order
     << "\nsolutions: " << r.solutions
     << "\nbound: " << format_fixed6(r.bound_value)
     << "\nbound_applicable: " << (r.bound_applicable ? 1 : 0)
     << "\nirreducibility: " << irr << "\nhypothesis_failures:";
  for (auto& h : r.hypothesis_failures) os << ' ' << h;
  os << '\n';
  write_output(out_file, os.str());
  return 0;
}

int cmd_sweep(const SweepConfig& cfg, const std::string& fmt,
              const std::string& out_file) {
  SweepConfig c = cfg;
  c.output_format = parse_format(fmt);
  auto rows = run_sweep(c);
  if (rows.empty())
    throw std::invalid_argument("sweep produced no rows (all cells skipped)");
  write_output(out_file, emit_report(rows, c.output_format));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"recurrence value-set toolkit"};
  app.require_subcommand(1);

  uint64_t prime = 0, kval = 1, period_cap = 100000, c0 = 1000, seed = 0;
  uint64_t nterms = 0, order = 0;
  int ext = 0;
  unsigned workers = 1;
  std::string fmt, out_file;  // per-subcommand default applied at dispatch
  std::vector<uint64_t> range, k_list;
  bool all_k = false, hyp_filter = false;

  auto* seq = app.add_subcommand("seq", "print sequence terms and period");
  seq->add_option("--prime", prime, "modulus (prime)")->required();
  seq->add_option("--k", kval, "recurrence parameter K");
  seq->add_option("--range", nterms, "number of terms (0 = one full period)");
  seq->add_option("--period-cap", period_cap, "abort above this period");
  seq->add_option("--format", fmt, "text or json");
  seq->add_option("--out", out_file, "output file (default stdout)");

  auto* dbl = app.add_subcommand("doubling", "one-cell growth report");
  dbl->add_option("--prime", prime, "modulus (prime)")->required();
  dbl->add_option("--k", kval, "recurrence parameter K");
  dbl->add_option("--period-cap", period_cap, "abort above this period");
  dbl->add_option("--format", fmt, "csv, json, or plot-data");
  dbl->add_option("--out", out_file, "output file (default stdout)");

  auto* pol = app.add_subcommand(
      "polygon", "Newton polygon and splits; reads \"i j coeff\" from stdin");
  pol->add_option("--prime", prime, "modulus (prime)")->required();
  pol->add_option("--format", fmt, "text or json");
  pol->add_option("--out", out_file, "output file (default stdout)");

  auto* irr = app.add_subcommand(
      "irred", "irreducibility verdict; reads \"i j coeff\" from stdin");
  irr->add_option("--prime", prime, "modulus (prime)")->required();
  irr->add_option("--ext", ext, "extension degree (1 or 2, default 2)");
  irr->add_option("--format", fmt, "text or json");
  irr->add_option("--out", out_file, "output file (default stdout)");

  auto* cnt = app.add_subcommand(
      "count", "solutions over a subgroup grid; reads \"i j coeff\" from stdin");
  cnt->add_option("--prime", prime, "modulus (prime)")->required();
  cnt->add_option("--order", order, "subgroup order")->required();
  cnt->add_option("--ext", ext, "extension degree (0 = auto, 1, or 2)");
  cnt->add_option("--c0", c0, "lower window constant for the sharp bound");
  cnt->add_option("--format", fmt, "text or json");
  cnt->add_option("--out", out_file, "output file (default stdout)");

  auto* swp = app.add_subcommand("sweep", "full (p, K) sweep");
  swp->add_option("--range", range, "prime range: lo hi")
      ->expected(2)
      ->required();
  swp->add_option("--k", k_list, "K values (repeatable)");
  swp->add_flag("--all-k", all_k, "use every K in 1..p-1");
  swp->add_option("--period-cap", period_cap, "skip cells above this period");
  swp->add_flag("--hypothesis-filter", hyp_filter,
                "keep only small-value-set cells");
  swp->add_option("--format", fmt, "csv, json, or plot-data");
  swp->add_option("--workers", workers, "worker threads");
  swp->add_option("--seed", seed, "reserved; kept for reproducibility records");
  swp->add_option("--out", out_file, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (fmt.empty())
      fmt = dbl->parsed() || swp->parsed() ? "csv" : "text";
    if (seq->parsed())
      return cmd_seq(prime, kval, nterms, period_cap, fmt, out_file);
    if (dbl->parsed())
      return cmd_doubling(prime, kval, period_cap, fmt, out_file);
    if (pol->parsed()) return cmd_polygon(prime, fmt, out_file);
    if (irr->parsed()) return cmd_irred(prime, ext == 0 ? 2 : ext, fmt, out_file);
    if (cnt->parsed()) return cmd_count(prime, order, ext, c0, fmt, out_file);
    if (swp->parsed()) {
      SweepConfig cfg;
      cfg.prime_lo = range[0];
      cfg.prime_hi = range[1];
      cfg.k_values = k_list.empty() && !all_k ? std::vector<uint64_t>{1} : k_list;
      cfg.all_k = all_k;
      cfg.max_period_cap = period_cap;
      cfg.hypothesis_filter = hyp_filter;
      cfg.seed = seed;
      cfg.worker_count = workers;
      return cmd_sweep(cfg, fmt, out_file);
    }
    return 1;
  } catch (const recset::InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << '\n';
    return 2;
  }
}
