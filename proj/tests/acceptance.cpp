// Acceptance suite: one line per criterion, tolerances fixed below.
//
// A criterion that fails only in a documented, analysed way is printed as
// FAIL with the analysis attached and does not change the exit status; any
// other failure makes the binary exit non-zero.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <algorithm>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "osearch/adversary.hpp"
#include "osearch/bench.hpp"
#include "osearch/kernels.hpp"
#include "osearch/predictors.hpp"
#include "osearch/query.hpp"

using namespace osearch;

namespace {

constexpr double kOnStarRelTol = 1e-6;
constexpr double kRatioTol = 1e-9;

struct Verdict {
  bool pass = false;
  bool explained = false;  // failure matches the documented analysis exactly
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    f(cur);
    if (static_cast<int>(cur.size()) == k) return;
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

long long binomial_prefix(int n, int k) {
  long long total = 0;
  long long c = 1;
  for (int i = 0; i <= k; ++i) {
    total += c;
    c = c * (n - i) / (i + 1);
  }
  return total;
}

// 1 ------------------------------------------------------------------------
Verdict on_star_optimality() {
  const PriceBounds b(1, 100);
  const auto grid = kernels::centered_geometric_grid(b, 10000);
  const double star = on_star_reservation(b);
  const double star_worst = kernels::worst_two_day_ratio_parallel(grid, star);
  const auto per_reservation =
      kernels::worst_ratio_by_reservation(grid, kernels::two_day_profile_parallel(grid));
  double best_other = INFINITY;
  for (double w : per_reservation) best_other = std::min(best_other, w);
  const double target = std::sqrt(b.spread());
  const bool tight = std::abs(star_worst - target) <= kOnStarRelTol * target;
  const bool optimal = best_other >= star_worst * (1 - 1e-12);
  return {tight && optimal, false,
          fmt("worst(sqrt(mM))=%.12g target=%.12g, min over %zu grid reservations=%.12g",
              star_worst, target, grid.size(), best_other)};
}

// 2 ------------------------------------------------------------------------
Verdict ora_tightness() {
  const PriceBounds b(1, 10);
  int checked = 0;
  int mismatched = 0;
  int mismatched_explained = 0;
  double worst_gap = 0.0;
  for (double r : {0.5, 0.75, 1.0, 1.25, 1.5}) {
    for (int i = 0; i < 100; ++i) {
      for (Parity parity : {Parity::negative, Parity::positive}) {
        const double eta = parity == Parity::negative
                               ? std::min(max_negative_error(b), max_negative_error(b) * i / 99)
                               : std::min(max_positive_error(b), max_positive_error(b) * (i + 1) / 100);
        const ErrorSpec err{parity, eta};
        const double realized = verify_lower_bound(ora_policy(r), err, b).realized;
        const double bound = ora_bound(err, r, b);
        ++checked;
        if (std::abs(realized - bound) <= kRatioTol) continue;
        ++mismatched;
        worst_gap = std::max(worst_gap, std::abs(realized - bound));
        // A threshold r p below m acts as m, so no instance realizes more than M/m.
        if (bound > b.spread() && std::abs(realized - b.spread()) <= kRatioTol &&
            r * adversary_prediction(err, b).p < b.lo()) {
          ++mismatched_explained;
        }
      }
    }
  }
  const bool jump_ok =
      std::abs(verify_lower_bound(ora_policy(1.5), {Parity::positive, 0.3}, b).realized - 10) <=
      kRatioTol;
  Verdict v;
  v.pass = mismatched == 0 && jump_ok;
  v.explained = !v.pass && jump_ok && mismatched == mismatched_explained;
  v.detail = fmt("%d points, %d off by up to %.3g; r=1.5 pos 0.3 -> %s", checked, mismatched,
                 worst_gap, jump_ok ? "10" : "wrong");
  if (mismatched > 0) {
    v.detail += fmt("; all %d mismatches have (1+eta)/r > M/m with r*p < m, where the realized "
                    "ratio is M/m",
                    mismatched_explained);
  }
  return v;
}

// 3 ------------------------------------------------------------------------
Verdict robust_mix_guarantee_sweep() {
  std::mt19937_64 rng(20240601);
  long long checked = 0;
  long long violations = 0;
  long long fallback_violations = 0;
  long long guarantee_violations = 0;
  double worst_excess = 0.0;
  for (double spread : {4.0, 10.0}) {
    const PriceBounds b(1, spread);
    const std::vector<double> hn_grid{0.0, 0.1, 0.3, 0.5, 0.7};
    const std::vector<double> hp_grid{0.0, 0.2, 0.5, 1.0, 2.0};
    for (double hn : hn_grid) {
      for (double hp : hp_grid) {
        const ErrorBounds hb{hn, hp};
        if (!is_valid(hb, b)) continue;
        const bool fallback = robust_mix_uses_fallback(b, hb);
        for (Parity parity : {Parity::negative, Parity::positive}) {
          const double cap = parity == Parity::negative ? hn : hp;
          for (int i = 0; i <= 5; ++i) {
            const ErrorSpec err{parity, cap * i / 5};
            if (!is_feasible(err, b)) continue;
            const double bound = robust_mix_bound(err, b, hb);
            const double guarantee = robust_mix_guarantee(err, b, hb);
            auto record = [&](double realized) {
              ++checked;
              if (realized > guarantee + kRatioTol) ++guarantee_violations;
              if (realized <= bound + kRatioTol) return;
              ++violations;
              if (fallback) ++fallback_violations;
              worst_excess = std::max(worst_excess, realized - bound);
            };
            record(verify_lower_bound(robust_mix_policy(hb), err, b, 1 << 16, 2).realized);

            // Random instances: the prediction is drawn so that p and its best
            // price p(1 -+ eta) both lie in [m, M].
            const double k = parity == Parity::negative ? 1 - err.eta : 1 + err.eta;
            const double p_lo = parity == Parity::negative ? b.lo() / k : b.lo();
            const double p_hi = parity == Parity::negative ? b.hi() : b.hi() / k;
            if (p_lo > p_hi) continue;
            std::uniform_real_distribution<double> up_log(std::log(p_lo), std::log(p_hi));
            std::uniform_int_distribution<int> days(1, 12);
            for (int t = 0; t < 1000; ++t) {
              const double p = std::clamp(std::exp(up_log(rng)), p_lo, p_hi);
              const double best = std::clamp(p * k, b.lo(), b.hi());
              const int d = days(rng);
              std::uniform_real_distribution<double> below(b.lo(), best);
              std::vector<double> prices(d);
              for (double& x : prices) x = below(rng);
              prices[std::uniform_int_distribution<int>(0, d - 1)(rng)] = best;
              const PriceSequence seq(prices, b);
              const double reservation = robust_mix_reservation({p}, b, hb);
              record(competitive_ratio(seq, run_reservation(seq, reservation)).value);
            }
          }
        }
      }
    }
  }
  Verdict v;
  v.pass = violations == 0;
  v.explained = !v.pass && violations == fallback_violations && guarantee_violations == 0;
  v.detail = fmt("%lld runs, %lld above min{(1+-eta)/(1-H_n), sqrt(M/m)} (max excess %.3g)",
                 checked, violations, worst_excess);
  if (violations > 0) {
    v.detail += fmt("; %lld of them in the ON* fallback branch, where the prediction term does not "
                    "apply; branch-aware guarantee violated %lld times",
                    fallback_violations, guarantee_violations);
  }
  return v;
}

// 4 ------------------------------------------------------------------------
Verdict rlis_bound_exhaustive() {
  const PriceBounds b(1, 10);
  long long cases = 0;
  long long violations = 0;
  double worst_slack = -INFINITY;
  for (int n = 4; n <= 10; ++n) {
    const IntervalPartition part(b, n);
    for (int h = 0; h <= 2; ++h) {
      const double bound = rlis_bound(n, h, b);
      for (int j = 0; j <= n; ++j) {
        const double best = part.point(j);
        const auto truth = rlis_truthful_responses(best, part);
        for_each_subset(n, h, [&](const std::vector<int>& flips) {
          auto p = truth;
          for (int i : flips) p[i] = !p[i];
          const double ratio = worst_case_ratio(rlis_run(p, h, part).reservation, best, b);
          ++cases;
          worst_slack = std::max(worst_slack, ratio - bound);
          if (ratio > bound + kRatioTol) ++violations;
        });
      }
    }
  }
  return {violations == 0, false,
          fmt("%lld (n, h, cell, response) cases, %lld violations, max ratio - bound = %.3g",
              cases, violations, worst_slack)};
}

// 5 ------------------------------------------------------------------------
Verdict rbis_invariants() {
  const PriceBounds b(1, 10);
  long long cases = 0;
  long long contain_fail = 0;
  long long depth_fail = 0;
  long long ratio_fail = 0;
  std::mt19937_64 rng(5);
  for (int n : {8, 12}) {
    const IntervalPartition part(b, std::uint64_t{1} << n);
    for (int h : {1, 2, 3}) {
      if (4 * h > n) continue;
      const double bound = rbis_bound(n, h, b);
      const bool exhaustive = binomial_prefix(n, h) <= 1000000;
      for (std::uint64_t leaf = 1; leaf <= part.cells(); ++leaf) {
        const double best = part.point(leaf);
        auto check = [&](const std::vector<int>& slots) {
          ResponseOracle oracle(best, part, {n, h}, slots);
          const auto r = rbis_search(oracle, {n, h}, part);
          ++cases;
          if (leaf < r.transcript.first_leaf || leaf > r.transcript.last_leaf) ++contain_fail;
          if (r.transcript.fallback.depth < n / 2 - 2 * h) ++depth_fail;
          if (best / r.reservation > bound + kRatioTol) ++ratio_fail;
        };
        if (exhaustive) {
          for_each_subset(n, h, check);
        } else {
          for (int t = 0; t < 10000; ++t) {
            std::vector<int> slots;
            for (int s = 0; s < n; ++s) slots.push_back(s);
            std::shuffle(slots.begin(), slots.end(), rng);
            slots.resize(std::uniform_int_distribution<int>(0, h)(rng));
            check(slots);
          }
        }
      }
    }
  }
  return {contain_fail == 0 && depth_fail == 0 && ratio_fail == 0, false,
          fmt("%lld searches (n in {8,12}, every cell, every placement of <= h lies): "
              "containment %lld, depth %lld, ratio %lld failures",
              cases, contain_fail, depth_fail, ratio_fail)};
}

// 6 ------------------------------------------------------------------------
Verdict experiment_shape() {
  const auto instances = make_instances(load_prices(std::filesystem::path(OSEARCH_SAMPLE_DATA)));
  const std::vector<int> hs{3, 5, 8, 10, 13};
  auto run_all = [&] {
    SweepReport report = baseline(instances);
    for (Algorithm kind : {Algorithm::rlis, Algorithm::rbis}) {
      report.append(sweep_query(instances, {kind, hs, 25, 1000, 7, Execution::parallel}));
    }
    std::ostringstream out;
    emit_report(report, out);
    return std::pair{report, out.str()};
  };
  const auto [report, first] = run_all();
  const bool identical = run_all().second == first;

  auto value = [&](Algorithm a, int h, int eta) -> double {
    for (const auto& row : report.rows) {
      if (row.algorithm != a) continue;
      if (a == Algorithm::on_star) return row.avg_profit;
      if (row.params.front() == h && row.eta == eta) return row.avg_profit;
    }
    return NAN;
  };
  const double on_star = value(Algorithm::on_star, 0, 0);
  std::string order_detail;
  bool order_ok = true;
  bool order_explained = true;
  bool degrade_ok = true;
  for (int h : hs) {
    const double rbis = value(Algorithm::rbis, h, 0);
    const double rlis = value(Algorithm::rlis, h, 0);
    const bool rbis_rlis = rbis >= rlis;
    const bool rlis_star = rlis >= on_star;
    if (!rbis_rlis || !rlis_star) {
      order_ok = false;
      // With the window maximum at M, zero-error RLIS reserves a_{n-H} =
      // m (M/m)^{(n-H)/n}, below ON*'s sqrt(mM) once H > n/2.
      if (rbis_rlis == false || 2 * h <= 25) order_explained = false;
      order_detail += fmt(" H=%d: rbis %.6g rlis %.6g onstar %.6g;", h, rbis, rlis, on_star);
    }
    if (rbis < value(Algorithm::rbis, h, h)) {
      degrade_ok = false;
      order_detail += fmt(" H=%d rbis(0)=%.6g < rbis(H)=%.6g;", h, rbis, value(Algorithm::rbis, h, h));
    }
  }
  Verdict v;
  v.pass = identical && order_ok && degrade_ok;
  v.explained = !v.pass && identical && degrade_ok && order_explained;
  v.detail = fmt("(a) byte-identical %s, (b) ordering %s, (c) endpoint degradation %s",
                 identical ? "yes" : "NO", order_ok ? "ok" : "violated",
                 degrade_ok ? "ok" : "violated");
  if (!order_detail.empty()) v.detail += ":" + order_detail;
  if (!order_ok && order_explained) {
    v.detail += " RLIS < ON* only where H > n/2, where its zero-error reservation "
                "m(M/m)^{(n-H)/n} sits below sqrt(mM)";
  }
  return v;
}

// 7 ------------------------------------------------------------------------
Verdict dominance_witness_margin() {
  const PriceBounds b(1, 10);
  std::string detail;
  bool ok = true;
  for (double r : {0.5, 1.0, 1.5}) {
    const ErrorSpec w = dominance_witness(r, b);
    const double margin = oblivious_lower_bound(w, r, b) - std::sqrt(b.spread());
    ok = ok && is_feasible(w, b) && margin > 0;
    detail += fmt(" r=%.2g: %s %.6g margin %.6g;", r, to_string(w.parity), w.eta, margin);
  }
  return {ok, false, detail};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;
    Verdict (*run)();
  };
  const Criterion criteria[] = {
      {"1 ON* optimality on 10^4-interval grid", 5, on_star_optimality},
      {"2 ORA_r realized = bound on adversarial instances", 1, ora_tightness},
      {"3 Robust-Mix within min{(1+-eta)/(1-H_n), sqrt(M/m)}", 10, robust_mix_guarantee_sweep},
      {"4 RLIS exhaustive ratio <= (M/m)^(2H/n)", 60, rlis_bound_exhaustive},
      {"5 RBIS containment, depth and ratio", 300, rbis_invariants},
      {"6 experiment shape on bundled series", 300, experiment_shape},
      {"7 dominance witness beats sqrt(M/m)", 1, dominance_witness_margin},
  };

  int unexplained = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = v.pass && in_time;
    if (!pass && !(v.explained && in_time)) ++unexplained;
    std::printf("%s criterion %s [%.2fs / %.0fs]: %s%s\n", pass ? "PASS" : "FAIL", c.name, secs,
                c.budget_s, v.detail.c_str(),
                pass ? "" : (v.explained && in_time ? " (explained)" : ""));
    std::fflush(stdout);
  }
  return unexplained == 0 ? 0 : 1;
}
