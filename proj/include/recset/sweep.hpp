#pragma once

// Sweep orchestration over (p, K) cells, the small-value-set prime scanner,
// per-cell growth verdicts with the proof-side containment checks, and
// deterministic CSV / JSON / plot-data serialization.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "recset/common.hpp"
#include "recset/doubling.hpp"
#include "recset/ffield.hpp"
#include "recset/recurrence.hpp"

namespace recset {

enum class ReportFormat { csv, json, plot_data };

struct SweepConfig {
  uint64_t prime_lo = 3;
  uint64_t prime_hi = 3;
  std::vector<uint64_t> k_values;  // ignored when all_k is set
  bool all_k = false;              // K = 1 .. p-1 per prime
  uint64_t max_period_cap = 100000;
  bool hypothesis_filter = false;  // keep only |F_p| < p^{3/4}/6 cells
  ReportFormat output_format = ReportFormat::csv;
  uint64_t seed = 0;  // reserved for sampled sub-experiments
  unsigned worker_count = 1;
};

/// One (p, K) cell of the sweep.
struct SweepRow {
  uint64_t p = 0, K = 0;
  uint64_t period = 0, set_card = 0, sum_card = 0, prod_card = 0;
  std::optional<double> exp_sum, exp_prod;
  double c_sum = 0.0, c_prod = 0.0;
  bool hypothesis_ok = false;
  bool decim_mismatch = false;
};

namespace detail {

// Printed closed-form coefficients for the stride-2 subsequence recurrence:
// (K^2 + 2, -1). The derived companion-matrix coefficients are (1 + 2K,
// -K^2); the two agree only at K = 1 (mod p), and the mismatch is flagged
// per row.
inline bool decimation_coeffs_mismatch(uint64_t p, uint64_t K) {
  RecurrenceSpec d = decimate(kfib_spec(K, Modulus(p)), 2, 0);
  uint64_t printed0 = (K % p * (K % p) + 2) % p;
  uint64_t printed1 = p - 1;
  return d.coeffs[0] != printed0 || d.coeffs[1] != printed1;
}

}  // namespace detail

/// Compute one sweep cell; nullopt when the cell is skipped (K = 0 mod p, so
/// the orbit is not purely periodic, or period exceeds the cap).
inline std::optional<SweepRow> sweep_cell(uint64_t p, uint64_t K,
                                          uint64_t period_cap) {
  Modulus m(p);
  if (K % p == 0) return std::nullopt;
  auto orb = orbit_capped(kfib_spec(K, m), period_cap);
  if (!orb) return std::nullopt;
  ValueSet A = ValueSet::from_orbit(*orb);
  DoublingReport rep = doubling_report_for_set(A);
  SweepRow row;
  row.p = p;
  row.K = K;
  row.period = orb->period;
  row.set_card = rep.input_card;
  row.sum_card = rep.sum_card;
  row.prod_card = rep.prod_card;
  row.exp_sum = rep.exponent_sum;
  row.exp_prod = rep.exponent_prod;
  row.c_sum = rep.c_sum;
  row.c_prod = rep.c_prod;
  row.hypothesis_ok = rep.hypothesis_ok;
  row.decim_mismatch = detail::decimation_coeffs_mismatch(p, K);
  return row;
}

namespace detail {

inline std::vector<uint64_t> primes_up_to(uint64_t n) {
  std::vector<bool> comp(n + 1, false);
  std::vector<uint64_t> out;
  for (uint64_t q = 2; q <= n; ++q) {
    if (comp[q]) continue;
    out.push_back(q);
    for (uint64_t t = q * q; t <= n; t += q) comp[t] = true;
  }
  return out;
}

}  // namespace detail

/// Sweep every (p, K) cell in the configured ranges. Cells are computed in
/// parallel over worker_count threads but merged in (p asc, K asc) order, so
/// the result is byte-identical for any worker count.
inline std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  detail::require(cfg.prime_lo <= cfg.prime_hi, "empty prime range");
  detail::require(cfg.all_k || !cfg.k_values.empty(), "empty K list");
  detail::require(cfg.max_period_cap > 0, "period cap must be positive");
  detail::require(cfg.worker_count >= 1, "need at least one worker");

  std::vector<uint64_t> ks = cfg.k_values;
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

  std::vector<std::pair<uint64_t, uint64_t>> cells;
  for (uint64_t prime : detail::primes_up_to(cfg.prime_hi)) {
    if (prime < cfg.prime_lo) continue;
    if (cfg.all_k) {
      for (uint64_t K = 1; K < prime; ++K) cells.push_back({prime, K});
    } else {
      for (uint64_t K : ks) cells.push_back({prime, K});
    }
  }

  std::vector<std::optional<SweepRow>> slots(cells.size());
  unsigned workers = cfg.worker_count;
  if (workers > 1) {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (size_t i = w; i < cells.size(); i += workers)
          slots[i] = sweep_cell(cells[i].first, cells[i].second,
                                cfg.max_period_cap);
      });
    }
    for (auto& t : pool) t.join();
  } else {
    for (size_t i = 0; i < cells.size(); ++i)
      slots[i] = sweep_cell(cells[i].first, cells[i].second,
                            cfg.max_period_cap);
  }

  std::vector<SweepRow> rows;
  for (auto& s : slots) {
    if (!s) continue;
    if (cfg.hypothesis_filter && !s->hypothesis_ok) continue;
    rows.push_back(*s);
  }
  return rows;
}

/// Primes p <= limit whose K-Fibonacci value set satisfies |F_p| < p^{3/4}/6.
/// Scans every prime with a capped orbit walk that aborts as soon as the
/// value set is provably too large (the set only grows), so non-candidates
/// are rejected after a few thousand steps; survivors have their full period
/// confirmed under the cap. Hits correspond to primes dividing small-index
/// sequence terms (small rank of apparition).
inline std::vector<uint64_t> find_hypothesis_primes(uint64_t limit, uint64_t K,
                                                    uint64_t period_cap = 100000) {
  detail::require(limit <= 100000000, "limit beyond desk scale");
  std::vector<uint64_t> out;
  if (limit < 2) return out;
  std::vector<uint32_t> stamp(limit + 1, 0);
  uint32_t gen = 0;
  for (uint64_t p : detail::primes_up_to(limit)) {
    if (K % p == 0) continue;
    double thresh = smallset_threshold(p);
    ++gen;
    uint64_t k = K % p;
    uint64_t x0 = 0, x1 = 1;  // window (X_n, X_{n+1})
    uint64_t distinct = 0, steps = 0;
    bool closed = false, rejected = false;
    while (true) {
      if (stamp[x0] != gen) {
        stamp[x0] = gen;
        if ((double)++distinct >= thresh) { rejected = true; break; }
      }
      uint64_t nxt = (x1 + k * x0) % p;
      x0 = x1;
      x1 = nxt;
      ++steps;
      if (x0 == 0 && x1 == 1) { closed = true; break; }
      if (steps >= period_cap) break;
    }
    if (!rejected && closed) out.push_back(p);
  }
  return out;
}

/// Harness-level verdict for one (p, K) cell: growth measurements plus the
/// even/odd stride-2 subsequence sets and the containment checks
/// F+F >= F'+F' and F*F >= F'*F'.
struct DoublingVerdict {
  SweepRow row;
  uint64_t even_set_card = 0, odd_set_card = 0;
  uint64_t even_sum_card = 0, even_prod_card = 0;
  bool union_is_full = false;
  bool containment_sum = false, containment_prod = false;
  bool degenerate = false;  // |F_p| <= 1
};

inline DoublingVerdict doubling_verdict(uint64_t p, uint64_t K,
                                        uint64_t period_cap = 100000) {
  Modulus m(p);
  auto rowopt = sweep_cell(p, K, period_cap);
  detail::require(rowopt.has_value(), "cell skipped (K = 0 mod p or period cap)");
  DoublingVerdict v;
  v.row = *rowopt;
  RecurrenceSpec s = kfib_spec(K, m);
  Orbit full = orbit(s);
  Orbit even = orbit(decimate(s, 2, 0));
  Orbit odd = orbit(decimate(s, 2, 1));
  ValueSet F = ValueSet::from_orbit(full);
  ValueSet Fe = ValueSet::from_orbit(even);
  ValueSet Fo = ValueSet::from_orbit(odd);
  v.even_set_card = Fe.cardinality;
  v.odd_set_card = Fo.cardinality;
  Bitset u = Fe.members;
  Fo.members.for_each([&](uint64_t b) { u.set(b); });
  v.union_is_full = u == F.members;
  ValueSet esum = sumset(Fe, Fe), eprod = productset(Fe, Fe);
  v.even_sum_card = esum.cardinality;
  v.even_prod_card = eprod.cardinality;
  v.containment_sum = esum.members.subset_of(sumset(F, F).members);
  v.containment_prod = eprod.members.subset_of(productset(F, F).members);
  v.degenerate = F.cardinality <= 1;
  return v;
}

// ---------------------------------------------------------------------------
// Serialization. CSV floats are fixed over six decimals via std::to_chars,
// which is locale independent; missing exponents serialize as "undef" (CSV)
// or null (JSON).

inline std::string format_fixed6(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 6);
  detail::ensure(res.ec == std::errc(), "float formatting failed");
  return std::string(buf, res.ptr);
}

inline std::string emit_report(const std::vector<SweepRow>& rows,
                               ReportFormat format) {
  detail::require(!rows.empty(), "no rows to emit");
  std::string out;
  auto opt6 = [](const std::optional<double>& v) {
    return v ? format_fixed6(*v) : std::string("undef");
  };
  switch (format) {
    case ReportFormat::csv: {
      out += "p,K,period,set_card,sum_card,prod_card,exp_sum,exp_prod,c_sum,"
             "c_prod,hypothesis_ok,decim_mismatch\n";
      for (const auto& r : rows) {
        out += std::to_string(r.p) + ',' + std::to_string(r.K) + ',' +
               std::to_string(r.period) + ',' + std::to_string(r.set_card) +
               ',' + std::to_string(r.sum_card) + ',' +
               std::to_string(r.prod_card) + ',' + opt6(r.exp_sum) + ',' +
               opt6(r.exp_prod) + ',' + format_fixed6(r.c_sum) + ',' +
               format_fixed6(r.c_prod) + ',' + (r.hypothesis_ok ? "1" : "0") +
               ',' + (r.decim_mismatch ? "1" : "0") + '\n';
      }
      return out;
    }
    case ReportFormat::json: {
      auto jopt = [&](const std::optional<double>& v) {
        return v ? format_fixed6(*v) : std::string("null");
      };
      out += "[\n";
      for (size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        out += "  {\"p\": " + std::to_string(r.p) +
               ", \"K\": " + std::to_string(r.K) +
               ", \"period\": " + std::to_string(r.period) +
               ", \"set_card\": " + std::to_string(r.set_card) +
               ", \"sum_card\": " + std::to_string(r.sum_card) +
               ", \"prod_card\": " + std::to_string(r.prod_card) +
               ", \"exp_sum\": " + jopt(r.exp_sum) +
               ", \"exp_prod\": " + jopt(r.exp_prod) +
               ", \"c_sum\": " + format_fixed6(r.c_sum) +
               ", \"c_prod\": " + format_fixed6(r.c_prod) +
               ", \"hypothesis_ok\": " + (r.hypothesis_ok ? "true" : "false") +
               ", \"decim_mismatch\": " + (r.decim_mismatch ? "true" : "false") +
               "}";
        out += i + 1 < rows.size() ? ",\n" : "\n";
      }
      out += "]\n";
      return out;
    }
    case ReportFormat::plot_data: {
      // one "set_card sum_card" line per row, blocked per K value
      std::vector<uint64_t> ks;
      for (const auto& r : rows)
        if (std::find(ks.begin(), ks.end(), r.K) == ks.end()) ks.push_back(r.K);
      std::sort(ks.begin(), ks.end());
      bool first_block = true;
      for (uint64_t K : ks) {
        if (!first_block) out += '\n';
        first_block = false;
        for (const auto& r : rows)
          if (r.K == K)
            out += std::to_string(r.set_card) + ' ' +
                   std::to_string(r.sum_card) + '\n';
      }
      return out;
    }
  }
  throw std::invalid_argument("unsupported report format");
}

}  // namespace recset
