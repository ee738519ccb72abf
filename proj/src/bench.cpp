#include "osearch/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <tuple>

#include "osearch/error.hpp"
#include "osearch/query.hpp"
#include "osearch/random.hpp"

namespace osearch {

// --------------------------------------------------------------------------
// Loading
// --------------------------------------------------------------------------

std::vector<double> DatedSeries::closes() const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const DatedPrice& p : points) out.push_back(p.close);
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

bool parse_double(std::string_view text, double& out) {
  text = trim(text);
  if (text.empty()) return false;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

bool parse_int(std::string_view text, long long& out) {
  text = trim(text);
  if (text.empty()) return false;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

bool is_iso_date(std::string_view d) {
  if (d.size() != 10 || d[4] != '-' || d[7] != '-') return false;
  for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
    if (d[i] < '0' || d[i] > '9') return false;
  }
  const int month = (d[5] - '0') * 10 + (d[6] - '0');
  const int day = (d[8] - '0') * 10 + (d[9] - '0');
  return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

[[noreturn]] void fail_at(ErrorKind kind, std::size_t line, const std::string& what) {
  fail(kind, "line " + std::to_string(line) + ": " + what);
}

}  // namespace

DatedSeries load_prices(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (!have_header && std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty()) continue;
    if (text != "date,close") fail_at(ErrorKind::parse, line_no, "expected header `date,close`");
    have_header = true;
  }
  if (!have_header) fail(ErrorKind::empty_series, "no header and no data");

  std::vector<std::pair<DatedPrice, std::size_t>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty()) continue;
    const auto comma = text.find(',');
    if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
      fail_at(ErrorKind::parse, line_no, "expected two fields");
    }
    const auto date = trim(text.substr(0, comma));
    if (!is_iso_date(date)) fail_at(ErrorKind::parse, line_no, "bad date `" + std::string(date) + "`");
    double close = 0.0;
    if (!parse_double(text.substr(comma + 1), close)) {
      fail_at(ErrorKind::parse, line_no, "bad price");
    }
    if (!std::isfinite(close) || close <= 0.0) {
      fail_at(ErrorKind::domain, line_no, "price must be positive and finite");
    }
    rows.push_back({DatedPrice{std::string(date), close}, line_no});
  }
  if (rows.empty()) fail(ErrorKind::empty_series, "no price rows after the header");

  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) { return a.first.date < b.first.date; });
  DatedSeries series;
  series.points.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0 && rows[i].first.date == series.points.back().date) {
      fail_at(ErrorKind::parse, rows[i].second, "duplicate date " + rows[i].first.date);
    }
    series.points.push_back(std::move(rows[i].first));
  }
  return series;
}

DatedSeries load_prices(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::io, "cannot open " + path.string());
  return load_prices(in);
}

// --------------------------------------------------------------------------
// Windowing
// --------------------------------------------------------------------------

InstanceSet make_instances(std::span<const double> closes, std::size_t count, std::size_t length) {
  if (count < 1 || length < 1) {
    fail(ErrorKind::invalid_parameter, "instance count and length must be positive");
  }
  const std::size_t total = closes.size();
  if (total < length) {
    fail(ErrorKind::insufficient_data, "series has " + std::to_string(total) +
                                           " days, windows need " + std::to_string(length));
  }
  InstanceSet set;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t offset = count == 1 ? 0 : i * (total - length) / (count - 1);
    std::vector<double> window(closes.begin() + static_cast<std::ptrdiff_t>(offset),
                               closes.begin() + static_cast<std::ptrdiff_t>(offset + length));
    set.windows.push_back(PriceSequence::with_realized_bounds(std::move(window)));
    set.offsets.push_back(offset);
  }
  return set;
}

InstanceSet make_instances(const DatedSeries& series, std::size_t count, std::size_t length) {
  const auto closes = series.closes();
  return make_instances(std::span<const double>(closes), count, length);
}

// --------------------------------------------------------------------------
// Grids and names
// --------------------------------------------------------------------------

const char* to_string(Algorithm algo) noexcept {
  switch (algo) {
    case Algorithm::ora: return "ora";
    case Algorithm::robust_mix: return "robustmix";
    case Algorithm::rlis: return "rlis";
    case Algorithm::rbis: return "rbis";
    case Algorithm::on_star: return "onstar";
    case Algorithm::best_price: return "best";
  }
  return "?";
}

namespace {

Algorithm algorithm_from_name(std::string_view name) {
  for (Algorithm a : {Algorithm::ora, Algorithm::robust_mix, Algorithm::rlis, Algorithm::rbis,
                      Algorithm::on_star, Algorithm::best_price}) {
    if (name == to_string(a)) return a;
  }
  fail(ErrorKind::parse, "unknown algorithm `" + std::string(name) + "`");
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

std::vector<GridPoint> parse_error_grid(std::string_view spec) {
  std::vector<GridPoint> grid;
  for (std::string_view term : split(spec, ',')) {
    const auto fields = split(trim(term), ':');
    if (fields.size() != 4) {
      fail(ErrorKind::parse, "grid term `" + std::string(term) + "` is not parity:lo:hi:steps");
    }
    Parity parity;
    if (fields[0] == "neg") {
      parity = Parity::negative;
    } else if (fields[0] == "pos") {
      parity = Parity::positive;
    } else {
      fail(ErrorKind::parse, "grid parity must be neg or pos");
    }
    double lo = 0.0;
    double hi = 0.0;
    long long steps = 0;
    if (!parse_double(fields[1], lo) || !parse_double(fields[2], hi) ||
        !parse_int(fields[3], steps) || steps < 1 || lo < 0.0 || hi < lo) {
      fail(ErrorKind::parse, "grid term `" + std::string(term) + "` has bad numbers");
    }
    for (long long i = 0; i < steps; ++i) {
      const double eta =
          steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
      grid.push_back({parity, eta});
    }
  }
  return grid;
}

void SweepReport::append(const SweepReport& other) {
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
}

namespace {

// Mean over the non-NaN entries, summed in index order.
std::pair<double, std::size_t> mean_skipping(const double* values, std::size_t count) {
  double sum = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (std::isnan(values[i])) continue;
    sum += values[i];
    ++used;
  }
  const double mean = used == 0 ? std::numeric_limits<double>::quiet_NaN()
                                : sum / static_cast<double>(used);
  return {mean, count - used};
}

}  // namespace

// --------------------------------------------------------------------------
// Best-price sweep
// --------------------------------------------------------------------------

SweepReport sweep_best_price(const InstanceSet& instances, const BestPriceAlgorithm& algo,
                             const std::vector<GridPoint>& grid,
                             const BestPriceSweepOptions& options) {
  if (algo.kind != Algorithm::ora && algo.kind != Algorithm::robust_mix) {
    fail(ErrorKind::invalid_parameter, "best-price sweeps run ora or robustmix");
  }
  if (algo.kind == Algorithm::ora && !(algo.r > 0.0)) {
    fail(ErrorKind::invalid_parameter, "ORA multiplier r must be positive");
  }

  std::vector<GridPoint> points;
  for (const GridPoint& g : grid) {
    if (algo.kind == Algorithm::robust_mix) {
      const double cap = g.parity == Parity::negative ? algo.caps.h_neg : algo.caps.h_pos;
      if (g.eta > cap) continue;
    }
    points.push_back(g);
  }

  const std::size_t count = instances.windows.size();
  const auto nan = std::numeric_limits<double>::quiet_NaN();

  auto profit = [&](const GridPoint& g, const PriceSequence& window) -> double {
    const PriceBounds& bounds = window.bounds();
    const double best = best_price(window);
    const ErrorSpec err{g.parity, g.eta};
    BestPricePrediction prediction;
    if (options.allow_out_of_range_predictions) {
      if (err.eta < 0.0 || (err.parity == Parity::negative && err.eta >= 1.0)) return nan;
      prediction = prediction_from_truth_unchecked(best, err);
    } else {
      if (!is_feasible(err, bounds)) return nan;
      prediction = prediction_from_truth_unchecked(best, err);
      if (!bounds.contains(prediction.p)) return nan;
      if (algo.kind == Algorithm::robust_mix && !is_valid(algo.caps, bounds)) return nan;
    }
    const double reservation = algo.kind == Algorithm::ora
                                   ? ora_reservation(prediction, algo.r)
                                   : robust_mix_reservation(prediction, bounds, algo.caps);
    return run_reservation(window, reservation).accepted_price;
  };

  std::vector<double> profits(points.size() * count, nan);
  if (options.execution == Execution::serial) {
    for (std::size_t gi = 0; gi < points.size(); ++gi) {
      for (std::size_t k = 0; k < count; ++k) {
        profits[gi * count + k] = profit(points[gi], instances.windows[k]);
      }
    }
  } else {
    const auto cells = static_cast<long>(profits.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (long idx = 0; idx < cells; ++idx) {
      const auto gi = static_cast<std::size_t>(idx) / count;
      const auto k = static_cast<std::size_t>(idx) % count;
      profits[static_cast<std::size_t>(idx)] = profit(points[gi], instances.windows[k]);
    }
  }

  std::vector<double> params;
  if (algo.kind == Algorithm::ora) {
    params = {algo.r};
  } else {
    params = {algo.caps.h_neg, algo.caps.h_pos};
  }
  SweepReport report;
  for (std::size_t gi = 0; gi < points.size(); ++gi) {
    const auto [mean, skipped] = mean_skipping(profits.data() + gi * count, count);
    report.rows.push_back(
        {points[gi].eta, to_string(points[gi].parity), algo.kind, params, mean, skipped});
  }
  return report;
}

// --------------------------------------------------------------------------
// Query sweep
// --------------------------------------------------------------------------

double query_reservation(Algorithm kind, const PriceSequence& window, int n, int h, int eta,
                         std::uint64_t seed) {
  const QueryBudget budget{n, h};
  budget.validate();
  const double best = best_price(window);
  const PriceBounds& bounds = window.bounds();
  if (kind == Algorithm::rlis) {
    if (eta < 0 || eta > h) fail(ErrorKind::contract_violation, "more lies than tolerated");
    const IntervalPartition part(bounds, static_cast<std::uint64_t>(n));
    ResponseString responses = rlis_truthful_responses(best, part);
    Rng rng(seed);
    for (int slot : sample_distinct(rng, n, eta)) responses[slot] = !responses[slot];
    return rlis_run(responses, h, part).reservation;
  }
  if (kind == Algorithm::rbis) {
    if (n >= 63) fail(ErrorKind::invalid_parameter, "RBIS supports n < 63");
    const IntervalPartition part(bounds, std::uint64_t{1} << n);
    ResponseOracle oracle = make_oracle(best, part, eta, budget, seed);
    return rbis_search(oracle, budget, part).reservation;
  }
  fail(ErrorKind::invalid_parameter, "query sweeps run rlis or rbis");
}

SweepReport sweep_query(const InstanceSet& instances, const QuerySweepConfig& config) {
  if (config.kind != Algorithm::rlis && config.kind != Algorithm::rbis) {
    fail(ErrorKind::invalid_parameter, "query sweeps run rlis or rbis");
  }
  if (config.trials < 1) fail(ErrorKind::invalid_parameter, "trials must be positive");
  for (int h : config.h_values) {
    if (h < 0 || h >= config.n) {
      fail(ErrorKind::invalid_parameter, "error bound H=" + std::to_string(h) +
                                             " must satisfy 0 <= H < n=" + std::to_string(config.n));
    }
  }

  struct Cell {
    int h;
    int eta;
  };
  std::vector<Cell> cells;
  for (int h : config.h_values) {
    for (int eta = 0; eta <= h; ++eta) cells.push_back({h, eta});
  }
  const std::size_t count = instances.windows.size();

  // Mean profit of one instance at one (h, eta), trials summed in order.
  auto instance_mean = [&](const Cell& c, std::size_t k) {
    const PriceSequence& window = instances.windows[k];
    double sum = 0.0;
    for (int t = 0; t < config.trials; ++t) {
      const std::uint64_t seed = derive_seed({config.seed, k, static_cast<std::uint64_t>(c.eta),
                                              static_cast<std::uint64_t>(t)});
      const double reservation = query_reservation(config.kind, window, config.n, c.h, c.eta, seed);
      sum += run_reservation(window, reservation).accepted_price;
    }
    return sum / static_cast<double>(config.trials);
  };

  std::vector<double> means(cells.size() * count, 0.0);
  if (config.execution == Execution::serial) {
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
      for (std::size_t k = 0; k < count; ++k) means[ci * count + k] = instance_mean(cells[ci], k);
    }
  } else {
    const auto total = static_cast<long>(means.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long idx = 0; idx < total; ++idx) {
      const auto ci = static_cast<std::size_t>(idx) / count;
      const auto k = static_cast<std::size_t>(idx) % count;
      means[static_cast<std::size_t>(idx)] = instance_mean(cells[ci], k);
    }
  }

  SweepReport report;
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    const auto [mean, skipped] = mean_skipping(means.data() + ci * count, count);
    report.rows.push_back({static_cast<double>(cells[ci].eta), "none", config.kind,
                           {static_cast<double>(cells[ci].h)}, mean, skipped});
  }
  return report;
}

SweepReport baseline(const InstanceSet& instances) {
  std::vector<double> on_star;
  std::vector<double> best;
  for (const PriceSequence& window : instances.windows) {
    on_star.push_back(run_reservation(window, on_star_reservation(window.bounds())).accepted_price);
    best.push_back(best_price(window));
  }
  SweepReport report;
  const auto [on_star_mean, s1] = mean_skipping(on_star.data(), on_star.size());
  const auto [best_mean, s2] = mean_skipping(best.data(), best.size());
  report.rows.push_back({0.0, "none", Algorithm::on_star, {}, on_star_mean, s1});
  report.rows.push_back({0.0, "none", Algorithm::best_price, {}, best_mean, s2});
  return report;
}

// --------------------------------------------------------------------------
// Report I/O
// --------------------------------------------------------------------------

namespace {

constexpr const char* kReportHeader = "eta,parity,algorithm,param,avg_profit,skipped";

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string format_params(const std::vector<double>& params) {
  std::string out;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i > 0) out += ':';
    out += format_number(params[i]);
  }
  return out;
}

}  // namespace

void emit_report(const SweepReport& report, std::ostream& out) {
  std::vector<const ReportRow*> rows;
  rows.reserve(report.rows.size());
  for (const ReportRow& row : report.rows) rows.push_back(&row);
  std::stable_sort(rows.begin(), rows.end(), [](const ReportRow* a, const ReportRow* b) {
    return std::forward_as_tuple(std::string_view(to_string(a->algorithm)), a->params, a->parity,
                                 a->eta) <
           std::forward_as_tuple(std::string_view(to_string(b->algorithm)), b->params, b->parity,
                                 b->eta);
  });
  out << kReportHeader << '\n';
  for (const ReportRow* row : rows) {
    out << format_number(row->eta) << ',' << row->parity << ',' << to_string(row->algorithm)
        << ',' << format_params(row->params) << ',' << format_number(row->avg_profit) << ','
        << row->skipped << '\n';
  }
  if (!out) fail(ErrorKind::io, "failed writing the report");
}

SweepReport parse_report(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != kReportHeader) {
    fail(ErrorKind::parse, "report header missing");
  }
  SweepReport report;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(trim(line), ',');
    if (fields.size() != 6) fail_at(ErrorKind::parse, line_no, "expected six fields");
    ReportRow row;
    long long skipped = 0;
    if (!parse_double(fields[0], row.eta)) fail_at(ErrorKind::parse, line_no, "bad eta");
    row.parity = std::string(fields[1]);
    row.algorithm = algorithm_from_name(fields[2]);
    if (!fields[3].empty()) {
      for (std::string_view p : split(fields[3], ':')) {
        double v = 0.0;
        if (!parse_double(p, v)) fail_at(ErrorKind::parse, line_no, "bad param");
        row.params.push_back(v);
      }
    }
    if (fields[4] == "nan") {
      row.avg_profit = std::numeric_limits<double>::quiet_NaN();
    } else if (!parse_double(fields[4], row.avg_profit)) {
      fail_at(ErrorKind::parse, line_no, "bad profit");
    }
    if (!parse_int(fields[5], skipped) || skipped < 0) {
      fail_at(ErrorKind::parse, line_no, "bad skip count");
    }
    row.skipped = static_cast<std::size_t>(skipped);
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace osearch
