#pragma once

// Experiment harness: daily closing prices in, windowed instances, error
// sweeps for the best-price and query-based algorithms, CSV report out.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "osearch/core.hpp"
#include "osearch/predictors.hpp"

namespace osearch {

struct DatedPrice {
  std::string date;  // YYYY-MM-DD
  double close = 0.0;
};

/// Strictly increasing dates, positive prices.
struct DatedSeries {
  std::vector<DatedPrice> points;

  std::vector<double> closes() const;
};

/// CSV with header `date,close`. Rows are sorted by date; duplicate dates
/// are rejected.
DatedSeries load_prices(std::istream& in);
DatedSeries load_prices(const std::filesystem::path& path);

struct InstanceSet {
  std::vector<PriceSequence> windows;  // bounds = window min / max
  std::vector<std::size_t> offsets;
};

inline constexpr std::size_t kDefaultInstanceCount = 20;
inline constexpr std::size_t kDefaultWindowLength = 200;

/// Window i starts at floor(i * (T - length) / (count - 1)).
InstanceSet make_instances(const DatedSeries& series, std::size_t count = kDefaultInstanceCount,
                           std::size_t length = kDefaultWindowLength);
InstanceSet make_instances(std::span<const double> closes, std::size_t count, std::size_t length);

enum class Algorithm { ora, robust_mix, rlis, rbis, on_star, best_price };

const char* to_string(Algorithm algo) noexcept;

enum class Execution { serial, parallel };

struct GridPoint {
  Parity parity = Parity::negative;
  double eta = 0.0;
};

/// Comma-separated `parity:lo:hi:steps` terms, parity in {neg, pos};
/// each expands to `steps` equally spaced values from lo to hi inclusive.
std::vector<GridPoint> parse_error_grid(std::string_view spec);

struct ReportRow {
  double eta = 0.0;
  std::string parity;  // "neg", "pos" or "none"
  Algorithm algorithm = Algorithm::on_star;
  std::vector<double> params;
  double avg_profit = 0.0;  // NaN when every instance was skipped
  std::size_t skipped = 0;
};

struct SweepReport {
  std::vector<ReportRow> rows;

  void append(const SweepReport& other);
};

struct BestPriceAlgorithm {
  Algorithm kind = Algorithm::ora;
  double r = 1.0;   // ora
  ErrorBounds caps;  // robust_mix
};

struct BestPriceSweepOptions {
  /// Predictions implied by the error may fall outside the window bounds
  /// (always the case for negative errors, since the window maximum is the
  /// best price). By default such pairs are skipped and counted.
  bool allow_out_of_range_predictions = false;
  Execution execution = Execution::parallel;
};

/// One row per grid point; Robust-Mix rows only for eta within its caps.
SweepReport sweep_best_price(const InstanceSet& instances, const BestPriceAlgorithm& algo,
                             const std::vector<GridPoint>& grid,
                             const BestPriceSweepOptions& options = {});

struct QuerySweepConfig {
  Algorithm kind = Algorithm::rbis;
  std::vector<int> h_values;
  int n = 25;
  int trials = 1000;
  std::uint64_t seed = 0;
  Execution execution = Execution::parallel;
};

/// For each h and each eta in 0..h: `trials` runs per instance with eta
/// randomly flipped answers, averaged per instance, then across instances.
SweepReport sweep_query(const InstanceSet& instances, const QuerySweepConfig& config);

/// Single query-based run, exposed for testing and the CLI.
double query_reservation(Algorithm kind, const PriceSequence& window, int n, int h, int eta,
                         std::uint64_t seed);

/// ON* average profit and the average best price.
SweepReport baseline(const InstanceSet& instances);

/// CSV `eta,parity,algorithm,param,avg_profit,skipped`, rows sorted by
/// (algorithm, param, parity, eta), 6 significant digits.
void emit_report(const SweepReport& report, std::ostream& out);
SweepReport parse_report(std::istream& in);

}  // namespace osearch
