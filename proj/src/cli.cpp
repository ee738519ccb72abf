#include "osearch/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include "osearch/adversary.hpp"
#include "osearch/bench.hpp"
#include "osearch/error.hpp"
#include "osearch/predictors.hpp"
#include "osearch/query.hpp"

namespace osearch::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

ErrorSpec parse_error_spec(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("--eta expects parity:value, e.g. neg:0.1");
  const std::string parity = text.substr(0, colon);
  ErrorSpec err;
  if (parity == "neg") {
    err.parity = Parity::negative;
  } else if (parity == "pos") {
    err.parity = Parity::positive;
  } else {
    throw UsageError("--eta parity must be neg or pos");
  }
  try {
    std::size_t used = 0;
    err.eta = std::stod(text.substr(colon + 1), &used);
    if (used != text.size() - colon - 1) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw UsageError("--eta value is not a number");
  }
  return err;
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "ora") return Algorithm::ora;
  if (name == "robustmix") return Algorithm::robust_mix;
  if (name == "onstar") return Algorithm::on_star;
  if (name == "rlis") return Algorithm::rlis;
  if (name == "rbis") return Algorithm::rbis;
  throw UsageError("unknown algorithm " + name);
}

// ---------------------------------------------------------------------------

struct RunOptions {
  std::string algo;
  std::string input;
  std::optional<double> prediction;
  double r = 1.0;
  double h_neg = 0.0;
  double h_pos = 0.0;
  int n = 25;
  int h = 0;
  int eta = 0;
  std::uint64_t seed = 0;
};

int cmd_run(const RunOptions& o, std::ostream& out) {
  const Algorithm algo = parse_algorithm(o.algo);
  const PriceSequence seq = PriceSequence::with_realized_bounds(load_prices(o.input).closes());
  const PriceBounds& bounds = seq.bounds();

  double reservation = 0.0;
  switch (algo) {
    case Algorithm::ora:
      if (!o.prediction) throw UsageError("ora needs --prediction");
      reservation = ora_reservation({*o.prediction}, o.r);
      break;
    case Algorithm::robust_mix:
      if (!o.prediction) throw UsageError("robustmix needs --prediction");
      reservation = robust_mix_reservation({*o.prediction}, bounds, {o.h_neg, o.h_pos});
      break;
    case Algorithm::on_star:
      reservation = on_star_reservation(bounds);
      break;
    case Algorithm::rlis:
    case Algorithm::rbis:
      reservation = query_reservation(algo, seq, o.n, o.h, o.eta, o.seed);
      break;
    default:
      throw UsageError("unsupported algorithm");
  }
  const TradeOutcome outcome = run_reservation(seq, reservation);
  out << "algorithm=" << to_string(algo) << " reservation=" << num(reservation)
      << " accepted_price=" << num(outcome.accepted_price) << " day=" << outcome.accept_day
      << " forced=" << (outcome.forced_last_day ? "yes" : "no")
      << " ratio=" << num(competitive_ratio(seq, outcome).value) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct SweepOptions {
  std::string algo;
  std::string input;
  std::vector<double> r{0.5, 0.75, 1.0, 1.25, 1.5};
  std::vector<std::string> h;
  std::string grid = "neg:0:0.5:500,pos:0:0.5:500";
  int n = 25;
  int trials = 1000;
  std::uint64_t seed = 0;
  std::size_t count = kDefaultInstanceCount;
  std::size_t length = kDefaultWindowLength;
  bool allow_out_of_range = false;
  bool serial = false;
  std::string output;
};

template <typename T>
std::vector<T> parse_list(const std::vector<std::string>& items, const char* flag) {
  std::vector<T> values;
  for (const std::string& item : items) {
    try {
      std::size_t used = 0;
      T v;
      if constexpr (std::is_integral_v<T>) {
        v = static_cast<T>(std::stoll(item, &used));
      } else {
        v = static_cast<T>(std::stod(item, &used));
      }
      if (used != item.size()) throw std::invalid_argument("trailing");
      values.push_back(v);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + " value `" + item + "` is not a number");
    }
  }
  return values;
}

int cmd_sweep(const SweepOptions& o, std::ostream& out) {
  const Algorithm algo = parse_algorithm(o.algo);
  const InstanceSet instances = make_instances(load_prices(o.input), o.count, o.length);
  const Execution exec = o.serial ? Execution::serial : Execution::parallel;

  SweepReport report = baseline(instances);
  switch (algo) {
    case Algorithm::ora: {
      const auto grid = parse_error_grid(o.grid);
      for (double r : o.r) {
        if (!(r > 0.0)) throw UsageError("--r values must be positive");
        report.append(sweep_best_price(instances, {Algorithm::ora, r, {}}, grid,
                                       {o.allow_out_of_range, exec}));
      }
      break;
    }
    case Algorithm::robust_mix: {
      const auto grid = parse_error_grid(o.grid);
      auto caps = o.h.empty() ? std::vector<double>{0.1, 0.2, 0.3, 0.4, 0.5}
                              : parse_list<double>(o.h, "--H");
      for (double cap : caps) {
        if (cap < 0.0 || cap >= 1.0) throw UsageError("robustmix --H values must be in [0, 1)");
        report.append(sweep_best_price(instances, {Algorithm::robust_mix, 1.0, {cap, cap}}, grid,
                                       {o.allow_out_of_range, exec}));
      }
      break;
    }
    case Algorithm::rlis:
    case Algorithm::rbis: {
      QuerySweepConfig config;
      config.kind = algo;
      config.h_values = o.h.empty() ? std::vector<int>{3, 5, 8, 10, 13} : parse_list<int>(o.h, "--H");
      config.n = o.n;
      config.trials = o.trials;
      config.seed = o.seed;
      config.execution = exec;
      for (int h : config.h_values) {
        if (h < 0 || h >= o.n) throw UsageError("--H values must satisfy 0 <= H < n");
      }
      if (algo == Algorithm::rbis && o.n > 40) throw UsageError("rbis supports n <= 40");
      report.append(sweep_query(instances, config));
      break;
    }
    default:
      throw UsageError("sweep runs ora, robustmix, rlis or rbis");
  }

  if (o.output.empty()) {
    emit_report(report, out);
  } else {
    std::ofstream file(o.output);
    if (!file) fail(ErrorKind::io, "cannot write " + o.output);
    emit_report(report, file);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct BoundsOptions {
  bool figure1 = false;
  bool rlis = false;
  bool rbis = false;
  bool lower = false;
  std::vector<int> n{25};
  std::vector<int> h{3};
  double ratio = 10.0;
  int steps = 91;
};

int cmd_bounds(const BoundsOptions& o, std::ostream& out) {
  const PriceBounds bounds(1.0, o.ratio);
  bool any = false;
  if (o.figure1) {
    any = true;
    out << "r,parity,eta,bound\n";
    const double neg_max = max_negative_error(bounds);
    const double pos_max = max_positive_error(bounds);
    for (double r : {0.5, 0.75, 1.0, 1.25, 1.5}) {
      for (int i = 0; i < o.steps; ++i) {
        const double eta = o.steps == 1 ? 0.0 : neg_max * i / (o.steps - 1);
        out << num(r) << ",neg," << num(eta) << ','
            << num(ora_bound({Parity::negative, eta}, r, bounds)) << '\n';
      }
      for (int i = 1; i <= o.steps; ++i) {
        const double eta = pos_max * i / o.steps;
        out << num(r) << ",pos," << num(eta) << ','
            << num(ora_bound({Parity::positive, eta}, r, bounds)) << '\n';
      }
    }
  }
  if (o.rlis || o.rbis || o.lower) {
    any = true;
    out << "bound,n,H,ratio,value\n";
    for (int n : o.n) {
      for (int h : o.h) {
        auto row = [&](const char* name, auto&& formula) {
          out << name << ',' << n << ',' << h << ',' << num(o.ratio) << ',';
          try {
            out << num(formula()) << '\n';
          } catch (const SearchError& e) {
            out << (e.kind() == ErrorKind::guarantee_unavailable ? "no guarantee" : "invalid")
                << '\n';
          }
        };
        if (o.rlis) row("rlis", [&] { return rlis_bound(n, h, bounds); });
        if (o.rbis) row("rbis", [&] { return rbis_bound(n, h, bounds); });
        if (o.lower) row("lower", [&] { return query_lower_bound(n, h, bounds); });
      }
    }
  }
  if (!any) throw UsageError("bounds needs --figure1, --rlis, --rbis or --lower");
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct VerifyOptions {
  std::string algo;
  double r = 1.0;
  double h_neg = 0.0;
  double h_pos = 0.0;
  std::string eta = "neg:0";
  double ratio = 10.0;
  double lo = 1.0;
  std::size_t resolution = kDefaultProbeResolution;
  double tolerance = 1e-6;
};

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
  const Algorithm algo = parse_algorithm(o.algo);
  const PriceBounds bounds(o.lo, o.lo * o.ratio);
  const ErrorSpec err = parse_error_spec(o.eta);
  PredictivePolicy policy;
  const ErrorBounds caps{o.h_neg, o.h_pos};
  switch (algo) {
    case Algorithm::ora: policy = ora_policy(o.r); break;
    case Algorithm::robust_mix: policy = robust_mix_policy(caps); break;
    case Algorithm::on_star: policy = on_star_policy(); break;
    default: throw UsageError("verify runs ora, robustmix or onstar");
  }
  const LowerBoundCheck check = verify_lower_bound(policy, err, bounds, o.resolution);
  out << "realized=" << num(check.realized) << " lower_bound=" << num(check.lower_bound)
      << " threshold_ratio=" << num(check.probe.threshold_ratio);
  bool ok = check.realized >= check.lower_bound - o.tolerance;
  if (algo == Algorithm::ora) out << " ora_bound=" << num(ora_bound(err, o.r, bounds));
  if (algo == Algorithm::robust_mix) {
    const double guarantee = robust_mix_guarantee(err, bounds, caps);
    out << " robust_mix_bound=" << num(robust_mix_bound(err, bounds, caps))
        << " guarantee=" << num(guarantee);
    ok = ok && check.realized <= guarantee + o.tolerance;
  }
  out << " status=" << (ok ? "ok" : "FAIL") << '\n';
  return ok ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------------------

struct TraceOptions {
  int n = 4;
  int h = 0;
  std::optional<std::uint64_t> cell;
  std::optional<double> price;
  double ratio = 10.0;
  std::vector<int> lies;
  std::optional<int> eta;
  std::uint64_t seed = 0;
  bool persistent = false;
};

int cmd_trace(const TraceOptions& o, std::ostream& out) {
  const QueryBudget budget{o.n, o.h};
  budget.validate();
  if (o.n > 40) throw UsageError("trace supports n <= 40");
  const PriceBounds bounds(1.0, o.ratio);
  const IntervalPartition part(bounds, std::uint64_t{1} << o.n);

  double best = 0.0;
  if (o.cell) {
    if (*o.cell < 1 || *o.cell > part.cells()) throw UsageError("--cell outside 1..2^n");
    best = part.point(*o.cell);
  } else if (o.price) {
    best = *o.price;
  } else {
    throw UsageError("trace needs --cell or --price");
  }

  std::vector<int> slots;
  if (!o.lies.empty()) {
    if (o.eta) throw UsageError("use either --lies or --eta");
    for (int slot : o.lies) slots.push_back(slot - 1);
  } else if (o.eta) {
    slots = make_oracle(best, part, *o.eta, budget, o.seed).corrupted_slots();
  }
  ResponseOracle oracle(best, part, budget, slots,
                        o.persistent ? ResponseOracle::Mode::persistent
                                     : ResponseOracle::Mode::slots);
  const RbisResult result = rbis_search(oracle, budget, part);
  out << "best=" << num(best) << " leaf=" << leaf_of(best, part) << " lies=";
  for (std::size_t i = 0; i < slots.size(); ++i) out << (i ? "," : "") << slots[i] + 1;
  out << '\n' << format_transcript(result.transcript, result.reservation);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Learning-augmented online search: algorithms, bounds and experiments",
               "osearch"};
  app.require_subcommand(1);

  RunOptions run_opts;
  auto* run_cmd = app.add_subcommand("run", "Run one algorithm on one price series");
  run_cmd->add_option("--algo", run_opts.algo, "ora | robustmix | onstar | rlis | rbis")->required();
  run_cmd->add_option("--input", run_opts.input, "CSV with header date,close")
      ->required()
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--prediction", run_opts.prediction, "Predicted best price")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--r", run_opts.r, "ORA multiplier")->check(CLI::PositiveNumber);
  run_cmd->add_option("--h-neg", run_opts.h_neg, "Negative error cap")->check(CLI::Range(0.0, 1.0));
  run_cmd->add_option("--h-pos", run_opts.h_pos, "Positive error cap")->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--n", run_opts.n, "Number of queries")->check(CLI::Range(1, 40));
  run_cmd->add_option("--H", run_opts.h, "Tolerated wrong answers")->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--eta", run_opts.eta, "Wrong answers injected")->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--seed", run_opts.seed, "Seed for the injected errors");

  SweepOptions sweep_opts;
  auto* sweep_cmd = app.add_subcommand("sweep", "Error sweep over windowed instances");
  sweep_cmd->add_option("--algo", sweep_opts.algo, "ora | robustmix | rlis | rbis")->required();
  sweep_cmd->add_option("--input", sweep_opts.input, "CSV with header date,close")
      ->required()
      ->check(CLI::ExistingFile);
  sweep_cmd->add_option("--r", sweep_opts.r, "ORA multipliers")->delimiter(',');
  sweep_cmd->add_option("--H", sweep_opts.h, "Error bounds (robustmix: real, rlis/rbis: integer)")
      ->delimiter(',');
  sweep_cmd->add_option("--grid", sweep_opts.grid, "Error grid parity:lo:hi:steps[,...]");
  sweep_cmd->add_option("--n", sweep_opts.n, "Number of queries")->check(CLI::Range(1, 40));
  sweep_cmd->add_option("--trials", sweep_opts.trials, "Trials per instance and error")
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--seed", sweep_opts.seed, "Master seed");
  sweep_cmd->add_option("--count", sweep_opts.count, "Instances")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--length", sweep_opts.length, "Days per instance")
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_flag("--allow-out-of-range", sweep_opts.allow_out_of_range,
                      "Keep predictions that fall outside the window bounds");
  sweep_cmd->add_flag("--serial", sweep_opts.serial, "Use the serial reference kernels");
  sweep_cmd->add_option("--output", sweep_opts.output, "Report path (default stdout)");

  BoundsOptions bounds_opts;
  auto* bounds_cmd = app.add_subcommand("bounds", "Tabulate the guarantee formulas");
  bounds_cmd->add_flag("--figure1", bounds_opts.figure1, "ORA_r bound curves for M/m = 10");
  bounds_cmd->add_flag("--rlis", bounds_opts.rlis, "RLIS upper bound");
  bounds_cmd->add_flag("--rbis", bounds_opts.rbis, "RBIS upper bound");
  bounds_cmd->add_flag("--lower", bounds_opts.lower, "Query lower bound");
  bounds_cmd->add_option("--n", bounds_opts.n, "Numbers of queries")->delimiter(',');
  bounds_cmd->add_option("--H", bounds_opts.h, "Error bounds")->delimiter(',');
  bounds_cmd->add_option("--ratio", bounds_opts.ratio, "M/m")->check(CLI::Range(1.0, 1e300));
  bounds_cmd->add_option("--steps", bounds_opts.steps, "Points per curve")->check(CLI::Range(1, 100000));

  VerifyOptions verify_opts;
  auto* verify_cmd = app.add_subcommand("verify", "Run a policy on its adversarial instance");
  verify_cmd->add_option("--algo", verify_opts.algo, "ora | robustmix | onstar")->required();
  verify_cmd->add_option("--r", verify_opts.r, "ORA multiplier")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--h-neg", verify_opts.h_neg, "Negative error cap")
      ->check(CLI::Range(0.0, 1.0));
  verify_cmd->add_option("--h-pos", verify_opts.h_pos, "Positive error cap")
      ->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--eta", verify_opts.eta, "Error as parity:value, e.g. neg:0.1");
  verify_cmd->add_option("--ratio", verify_opts.ratio, "M/m")->check(CLI::Range(1.0, 1e300));
  verify_cmd->add_option("--m", verify_opts.lo, "Lower price bound")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--resolution", verify_opts.resolution, "Probe grid size")
      ->check(CLI::Range(2, 1 << 30));
  verify_cmd->add_option("--tolerance", verify_opts.tolerance, "Allowed slack")
      ->check(CLI::NonNegativeNumber);

  TraceOptions trace_opts;
  auto* trace_cmd = app.add_subcommand("trace", "Dump one RBIS search");
  trace_cmd->add_option("--n", trace_opts.n, "Number of queries (tree height)")
      ->check(CLI::Range(1, 40));
  trace_cmd->add_option("--H", trace_opts.h, "Tolerated wrong answers")->check(CLI::NonNegativeNumber);
  trace_cmd->add_option("--cell", trace_opts.cell, "True leaf, 1-based; best = its upper end");
  trace_cmd->add_option("--price", trace_opts.price, "True best price")->check(CLI::PositiveNumber);
  trace_cmd->add_option("--ratio", trace_opts.ratio, "M/m with m = 1")->check(CLI::Range(1.0, 1e300));
  trace_cmd->add_option("--lies", trace_opts.lies, "Corrupted query slots, 1-based")->delimiter(',');
  trace_cmd->add_option("--eta", trace_opts.eta, "Random corrupted slots")->check(CLI::NonNegativeNumber);
  trace_cmd->add_option("--seed", trace_opts.seed, "Seed for --eta");
  trace_cmd->add_flag("--persistent", trace_opts.persistent, "Oracle repeats its lies");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run_cmd) return cmd_run(run_opts, out);
    if (*sweep_cmd) return cmd_sweep(sweep_opts, out);
    if (*bounds_cmd) return cmd_bounds(bounds_opts, out);
    if (*verify_cmd) return cmd_verify(verify_opts, out);
    if (*trace_cmd) return cmd_trace(trace_opts, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SearchError& e) {
    err << e.what() << '\n';
    return e.kind() == ErrorKind::invalid_parameter || e.kind() == ErrorKind::io ? kExitUsage
                                                                                 : kExitFailure;
  }
  return kExitUsage;
}

}  // namespace osearch::cli
