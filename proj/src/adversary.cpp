#include "osearch/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "osearch/error.hpp"

namespace osearch {

PredictivePolicy ora_policy(double r) {
  if (!(r > 0.0)) fail(ErrorKind::invalid_parameter, "ORA multiplier r must be positive");
  return [r](BestPricePrediction prediction, const PriceBounds&) -> AcceptRule {
    const double reservation = ora_reservation(prediction, r);
    return [reservation](double price) { return price >= reservation; };
  };
}

PredictivePolicy robust_mix_policy(ErrorBounds hb) {
  return [hb](BestPricePrediction prediction, const PriceBounds& bounds) -> AcceptRule {
    const double reservation = robust_mix_reservation(prediction, bounds, hb);
    return [reservation](double price) { return price >= reservation; };
  };
}

PredictivePolicy on_star_policy() {
  return [](BestPricePrediction, const PriceBounds& bounds) -> AcceptRule {
    const double reservation = on_star_reservation(bounds);
    return [reservation](double price) { return price >= reservation; };
  };
}

bool PolicyProbe::above_max() const noexcept { return std::isinf(threshold_ratio); }

PolicyProbe probe_threshold(const AcceptRule& accepts, double p, const PriceBounds& bounds,
                            std::size_t resolution) {
  if (resolution < 2) fail(ErrorKind::invalid_parameter, "probe resolution must be >= 2");
  if (!(p > 0.0)) fail(ErrorKind::invalid_parameter, "prediction must be positive");

  const double lo = bounds.lo();
  const double hi = bounds.hi();
  const double last = static_cast<double>(resolution - 1);
  auto grid = [&](std::size_t i) {
    if (i == 0) return lo;
    if (i == resolution - 1) return hi;
    return lo * std::pow(hi / lo, static_cast<double>(i) / last);
  };

  PolicyProbe probe;
  probe.probe_resolution = std::pow(hi / lo, 1.0 / last);

  // Smallest accepted grid index, assuming monotone acceptance.
  std::size_t first = resolution;
  std::size_t left = 0;
  std::size_t right = resolution;
  while (left < right) {
    const std::size_t mid = left + (right - left) / 2;
    if (accepts(grid(mid))) {
      first = mid;
      right = mid;
    } else {
      left = mid + 1;
    }
  }

  // Spot-check monotonicity on a coarse subgrid plus the boundary itself.
  const std::size_t stride = std::max<std::size_t>(1, resolution / 1024);
  for (std::size_t i = 0; i < resolution; i += stride) {
    if (accepts(grid(i)) != (i >= first)) {
      fail(ErrorKind::non_threshold_policy,
           "day-1 acceptance is not monotone in the price near " + std::to_string(grid(i)));
    }
  }
  if (accepts(hi) != (first < resolution)) {
    fail(ErrorKind::non_threshold_policy, "day-1 acceptance is not monotone at the upper bound");
  }

  if (first == resolution) {
    probe.threshold_ratio = std::numeric_limits<double>::infinity();
    probe.threshold_price = std::numeric_limits<double>::infinity();
    return probe;
  }

  double accepted = grid(first);
  if (first > 0) {
    double rejected = grid(first - 1);
    while (std::nextafter(rejected, accepted) < accepted) {
      const double mid = rejected + 0.5 * (accepted - rejected);
      if (mid <= rejected || mid >= accepted) break;
      if (accepts(mid)) {
        accepted = mid;
      } else {
        rejected = mid;
      }
    }
  }
  probe.threshold_price = accepted;
  probe.threshold_ratio = accepted / p;
  return probe;
}

BestPricePrediction adversary_prediction(const ErrorSpec& err, const PriceBounds& bounds) {
  if (!is_feasible(err, bounds)) {
    fail(ErrorKind::out_of_range, "error " + std::to_string(err.eta) + " is infeasible");
  }
  if (err.parity == Parity::negative) return {bounds.hi()};
  return {bounds.hi() / (1.0 + err.eta)};
}

namespace {

double adversary_best(const ErrorSpec& err, const PriceBounds& bounds) {
  if (err.parity == Parity::positive) return bounds.hi();
  // (1 - eta) * hi; rounding can land a hair under lo at the largest error
  return std::max(bounds.lo(), (1.0 - err.eta) * bounds.hi());
}

// `opens_low`: the policy's day-1 threshold is at most the best price, so the
// adversary opens at the threshold and then shows the best price.
AdversarialInstance build_instance(const ErrorSpec& err, bool opens_low, double opening_price,
                                   const PriceBounds& bounds, std::size_t length) {
  if (length < 2) fail(ErrorKind::invalid_parameter, "adversarial instances need >= 2 days");
  const BestPricePrediction prediction = adversary_prediction(err, bounds);
  const double best = adversary_best(err, bounds);

  std::vector<double> prices;
  prices.reserve(length);
  if (opens_low) {
    prices = {opening_price, best};
  } else {
    prices = {best, bounds.lo()};
  }
  prices.resize(length, prices.back());
  return {PriceSequence(std::move(prices), bounds), prediction};
}

}  // namespace

AdversarialInstance adversarial_instance(const ErrorSpec& err, double threshold_ratio,
                                         const PriceBounds& bounds, std::size_t length) {
  // A threshold below m accepts m on day 1, so m is as good an opening as any.
  const double opening =
      std::max(bounds.lo(), threshold_ratio * adversary_prediction(err, bounds).p);
  const bool opens_low = err.parity == Parity::negative ? threshold_ratio <= 1.0 - err.eta
                                                        : threshold_ratio <= 1.0 + err.eta;
  return build_instance(err, opens_low, opening, bounds, length);
}

AdversarialInstance adversarial_instance(const ErrorSpec& err, const PolicyProbe& probe,
                                         const PriceBounds& bounds, std::size_t length) {
  const bool opens_low = probe.threshold_price <= adversary_best(err, bounds);
  return build_instance(err, opens_low, probe.threshold_price, bounds, length);
}

LowerBoundCheck verify_lower_bound(const PredictivePolicy& policy, const ErrorSpec& err,
                                   const PriceBounds& bounds, std::size_t resolution,
                                   std::size_t length) {
  const BestPricePrediction prediction = adversary_prediction(err, bounds);
  const AcceptRule rule = policy(prediction, bounds);

  LowerBoundCheck check;
  check.probe = probe_threshold(rule, prediction.p, bounds, resolution);
  const AdversarialInstance instance = adversarial_instance(err, check.probe, bounds, length);
  check.outcome = run_rule(instance.sequence.prices(), rule);
  check.realized = competitive_ratio(instance.sequence, check.outcome).value;
  // Same bound as oblivious_lower_bound, with the case split done on prices.
  const double best = adversary_best(err, bounds);
  check.lower_bound = check.probe.threshold_price <= best ? best / check.probe.threshold_price
                                                          : best / bounds.lo();
  return check;
}

}  // namespace osearch
