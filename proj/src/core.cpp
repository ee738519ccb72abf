#include "osearch/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "osearch/error.hpp"

namespace osearch {

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

PriceBounds::PriceBounds(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!positive_finite(lo) || !positive_finite(hi) || lo > hi) {
    fail(ErrorKind::invalid_input,
         "price bounds must satisfy 0 < lo <= hi (got lo=" + std::to_string(lo) +
             ", hi=" + std::to_string(hi) + ")");
  }
}

PriceSequence::PriceSequence(std::vector<double> prices, PriceBounds bounds)
    : prices_(std::move(prices)), bounds_(bounds) {
  if (prices_.empty()) fail(ErrorKind::invalid_input, "price sequence is empty");
  for (std::size_t i = 0; i < prices_.size(); ++i) {
    if (!bounds_.contains(prices_[i])) {
      fail(ErrorKind::invalid_input,
           "price " + std::to_string(prices_[i]) + " on day " + std::to_string(i + 1) +
               " lies outside the bounds");
    }
  }
}

PriceSequence PriceSequence::with_realized_bounds(std::vector<double> prices) {
  if (prices.empty()) fail(ErrorKind::invalid_input, "price sequence is empty");
  auto [lo, hi] = std::minmax_element(prices.begin(), prices.end());
  PriceBounds bounds(*lo, *hi);
  return PriceSequence(std::move(prices), bounds);
}

TradeOutcome run_reservation(std::span<const double> prices, double reservation) {
  if (prices.empty()) fail(ErrorKind::invalid_input, "price sequence is empty");
  for (std::size_t i = 0; i < prices.size(); ++i) {
    if (prices[i] >= reservation) return {prices[i], i + 1, false};
  }
  return {prices.back(), prices.size(), true};
}

TradeOutcome run_reservation(const PriceSequence& seq, double reservation) {
  return run_reservation(seq.prices(), reservation);
}

TradeOutcome run_rule(std::span<const double> prices, const AcceptRule& accepts) {
  if (prices.empty()) fail(ErrorKind::invalid_input, "price sequence is empty");
  for (std::size_t i = 0; i + 1 < prices.size(); ++i) {
    if (accepts(prices[i])) return {prices[i], i + 1, false};
  }
  // The last day is taken either way; it only counts as forced if rejected.
  return {prices.back(), prices.size(), !accepts(prices.back())};
}

double best_price(std::span<const double> prices) {
  if (prices.empty()) fail(ErrorKind::invalid_input, "price sequence is empty");
  return *std::max_element(prices.begin(), prices.end());
}

double best_price(const PriceSequence& seq) { return best_price(seq.prices()); }

PerformanceRatio competitive_ratio(const PriceSequence& seq, const TradeOutcome& outcome) {
  const std::size_t d = seq.days();
  if (outcome.accept_day < 1 || outcome.accept_day > d) {
    fail(ErrorKind::invalid_input, "accept day " + std::to_string(outcome.accept_day) +
                                       " outside 1.." + std::to_string(d));
  }
  if (seq[outcome.accept_day - 1] != outcome.accepted_price) {
    fail(ErrorKind::invalid_input, "accepted price does not match the sequence");
  }
  if (outcome.forced_last_day && outcome.accept_day != d) {
    fail(ErrorKind::invalid_input, "forced acceptance must happen on the last day");
  }
  return {best_price(seq) / outcome.accepted_price};
}

double on_star_reservation(const PriceBounds& bounds) {
  return std::sqrt(bounds.lo() * bounds.hi());
}

double worst_case_ratio(double reservation, double best, const PriceBounds& bounds) {
  if (reservation <= best) return best / std::max(reservation, bounds.lo());
  return best / bounds.lo();
}

}  // namespace osearch
