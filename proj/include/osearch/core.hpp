#pragma once

// The online search game: a seller sees prices one day at a time and must
// accept or reject each irrevocably; the last price is accepted by default.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace osearch {

/// Known price range [lo, hi] with 0 < lo <= hi.
class PriceBounds {
 public:
  PriceBounds(double lo, double hi);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  /// hi / lo, always >= 1.
  double spread() const noexcept { return hi_ / lo_; }
  bool contains(double price) const noexcept { return price >= lo_ && price <= hi_; }

  friend bool operator==(const PriceBounds&, const PriceBounds&) = default;

 private:
  double lo_;
  double hi_;
};

/// Non-empty price sequence whose every element lies inside its bounds.
class PriceSequence {
 public:
  PriceSequence(std::vector<double> prices, PriceBounds bounds);

  /// Uses the realized minimum and maximum as the bounds.
  static PriceSequence with_realized_bounds(std::vector<double> prices);

  std::span<const double> prices() const noexcept { return prices_; }
  const PriceBounds& bounds() const noexcept { return bounds_; }
  std::size_t days() const noexcept { return prices_.size(); }
  double operator[](std::size_t i) const { return prices_[i]; }

 private:
  std::vector<double> prices_;
  PriceBounds bounds_;
};

struct TradeOutcome {
  double accepted_price = 0.0;
  std::size_t accept_day = 0;  // 1-based
  bool forced_last_day = false;
};

struct PerformanceRatio {
  double value = 1.0;
};

/// Day-by-day acceptance rule used for black-box policies. Must be reentrant.
using AcceptRule = std::function<bool(double price)>;

/// Accepts the first price >= reservation; otherwise the last price, forced.
TradeOutcome run_reservation(std::span<const double> prices, double reservation);
TradeOutcome run_reservation(const PriceSequence& seq, double reservation);

/// Same game driven by an arbitrary stationary acceptance rule.
TradeOutcome run_rule(std::span<const double> prices, const AcceptRule& accepts);

double best_price(std::span<const double> prices);
double best_price(const PriceSequence& seq);

/// best_price(seq) / accepted price. Throws invalid_input if the outcome
/// does not describe a trade on this sequence.
PerformanceRatio competitive_ratio(const PriceSequence& seq, const TradeOutcome& outcome);

/// Reservation price of the classical deterministic algorithm: sqrt(lo * hi),
/// whose worst-case ratio is sqrt(hi / lo).
double on_star_reservation(const PriceBounds& bounds);

/// Worst ratio an adversary can force on a reservation policy once the best
/// price of the sequence is fixed: it either offers the cheapest acceptable
/// price before `best`, or shows `best` while it is still rejected and then
/// drops to the lower bound.
double worst_case_ratio(double reservation, double best, const PriceBounds& bounds);

}  // namespace osearch
