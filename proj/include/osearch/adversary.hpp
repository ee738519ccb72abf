#pragma once

// Worst-case instances for deterministic best-price algorithms. A policy is
// probed as a black box for its day-1 acceptance threshold, then handed the
// sequence that punishes that threshold hardest.

#include <cstddef>
#include <functional>

#include "osearch/core.hpp"
#include "osearch/predictors.hpp"

namespace osearch {

/// Builds the acceptance rule an algorithm plays once it has seen the prediction.
using PredictivePolicy = std::function<AcceptRule(BestPricePrediction, const PriceBounds&)>;

PredictivePolicy ora_policy(double r);
PredictivePolicy robust_mix_policy(ErrorBounds hb);
PredictivePolicy on_star_policy();

inline constexpr std::size_t kDefaultProbeResolution = std::size_t{1} << 20;
inline constexpr std::size_t kDefaultInstanceLength = 200;

struct PolicyProbe {
  /// Smallest accepted day-1 price divided by the prediction; +inf if the
  /// policy accepts nothing inside the bounds.
  double threshold_ratio = 0.0;
  /// Smallest accepted day-1 price, refined to adjacent doubles.
  double threshold_price = 0.0;
  /// Multiplicative step of the geometric probe grid.
  double probe_resolution = 1.0;

  bool above_max() const noexcept;
};

/// Locates the day-1 acceptance threshold of `accepts` on a geometric grid of
/// `resolution` prices in the bounds, then bisects to the exact boundary.
/// Throws non_threshold_policy if acceptance is not monotone in the price.
PolicyProbe probe_threshold(const AcceptRule& accepts, double p, const PriceBounds& bounds,
                            std::size_t resolution = kDefaultProbeResolution);

struct AdversarialInstance {
  PriceSequence sequence;
  BestPricePrediction prediction;
};

/// The prediction the adversary commits to for a given error: hi for
/// negative errors, hi / (1 + eta) for positive ones.
BestPricePrediction adversary_prediction(const ErrorSpec& err, const PriceBounds& bounds);

/// Sequence that forces ratio oblivious_lower_bound(err, threshold_ratio) on
/// any algorithm with that day-1 threshold. Padded to `length` days.
AdversarialInstance adversarial_instance(const ErrorSpec& err, double threshold_ratio,
                                         const PriceBounds& bounds,
                                         std::size_t length = kDefaultInstanceLength);

/// Same, opening with the probed threshold price itself.
AdversarialInstance adversarial_instance(const ErrorSpec& err, const PolicyProbe& probe,
                                         const PriceBounds& bounds,
                                         std::size_t length = kDefaultInstanceLength);

struct LowerBoundCheck {
  double realized = 1.0;     // ratio the policy suffers on its own instance
  double lower_bound = 1.0;  // oblivious_lower_bound at the probed threshold
  PolicyProbe probe;
  TradeOutcome outcome;
};

LowerBoundCheck verify_lower_bound(const PredictivePolicy& policy, const ErrorSpec& err,
                                   const PriceBounds& bounds,
                                   std::size_t resolution = kDefaultProbeResolution,
                                   std::size_t length = kDefaultInstanceLength);

}  // namespace osearch
