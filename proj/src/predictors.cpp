#include "osearch/predictors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "osearch/error.hpp"

namespace osearch {

const char* to_string(Parity parity) noexcept {
  return parity == Parity::negative ? "neg" : "pos";
}

double max_negative_error(const PriceBounds& bounds) {
  return (bounds.hi() - bounds.lo()) / bounds.hi();
}

double max_positive_error(const PriceBounds& bounds) {
  return (bounds.hi() - bounds.lo()) / bounds.lo();
}

bool is_feasible(const ErrorSpec& err, const PriceBounds& bounds) {
  if (!std::isfinite(err.eta)) return false;
  if (err.parity == Parity::negative) {
    return err.eta >= 0.0 && err.eta <= max_negative_error(bounds);
  }
  return err.eta > 0.0 && err.eta <= max_positive_error(bounds);
}

bool is_valid(const ErrorBounds& hb, const PriceBounds& bounds) {
  return hb.h_neg >= 0.0 && hb.h_neg <= max_negative_error(bounds) && hb.h_pos >= 0.0 &&
         hb.h_pos <= max_positive_error(bounds);
}

BestPricePrediction prediction_from_truth_unchecked(double best, const ErrorSpec& err) {
  if (err.parity == Parity::negative) return {best / (1.0 - err.eta)};
  return {best / (1.0 + err.eta)};
}

BestPricePrediction prediction_from_truth(double best, const ErrorSpec& err,
                                          const PriceBounds& bounds) {
  if (!is_feasible(err, bounds)) {
    fail(ErrorKind::out_of_range, std::string(to_string(err.parity)) + " error " +
                                      std::to_string(err.eta) + " is infeasible for the bounds");
  }
  const auto prediction = prediction_from_truth_unchecked(best, err);
  if (!bounds.contains(prediction.p)) {
    fail(ErrorKind::out_of_range, "prediction " + std::to_string(prediction.p) +
                                      " implied by the error lies outside the bounds");
  }
  return prediction;
}

ErrorSpec error_from_pair(double best, double p) {
  if (best <= p) return {Parity::negative, 1.0 - best / p};
  return {Parity::positive, best / p - 1.0};
}

double ora_reservation(BestPricePrediction prediction, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    fail(ErrorKind::invalid_parameter, "ORA multiplier r must be positive");
  }
  return r * prediction.p;
}

double oblivious_lower_bound(const ErrorSpec& err, double threshold_ratio,
                             const PriceBounds& bounds) {
  const double spread = bounds.spread();
  if (err.parity == Parity::negative) {
    if (err.eta <= 1.0 - threshold_ratio) return (1.0 - err.eta) / threshold_ratio;
    return (1.0 - err.eta) * spread;
  }
  if (err.eta >= threshold_ratio - 1.0) return (1.0 + err.eta) / threshold_ratio;
  return spread;
}

double ora_bound(const ErrorSpec& err, double r, const PriceBounds& bounds) {
  return oblivious_lower_bound(err, r, bounds);
}

bool robust_mix_uses_fallback(const PriceBounds& bounds, const ErrorBounds& hb) {
  return (1.0 + hb.h_pos) / (1.0 - hb.h_neg) > std::sqrt(bounds.spread());
}

double robust_mix_reservation(BestPricePrediction prediction, const PriceBounds& bounds,
                              const ErrorBounds& hb) {
  if (robust_mix_uses_fallback(bounds, hb)) return on_star_reservation(bounds);
  return prediction.p * (1.0 - hb.h_neg);
}

namespace {

void check_promise(const ErrorSpec& err, const ErrorBounds& hb) {
  const double cap = err.parity == Parity::negative ? hb.h_neg : hb.h_pos;
  if (err.eta > cap) {
    fail(ErrorKind::contract_violation, std::string(to_string(err.parity)) + " error " +
                                            std::to_string(err.eta) +
                                            " exceeds its declared bound " + std::to_string(cap));
  }
}

double prediction_branch_ratio(const ErrorSpec& err, const ErrorBounds& hb) {
  const double num = err.parity == Parity::negative ? 1.0 - err.eta : 1.0 + err.eta;
  return num / (1.0 - hb.h_neg);
}

}  // namespace

double robust_mix_bound(const ErrorSpec& err, const PriceBounds& bounds, const ErrorBounds& hb) {
  check_promise(err, hb);
  return std::min(prediction_branch_ratio(err, hb), std::sqrt(bounds.spread()));
}

double robust_mix_guarantee(const ErrorSpec& err, const PriceBounds& bounds,
                            const ErrorBounds& hb) {
  check_promise(err, hb);
  if (robust_mix_uses_fallback(bounds, hb)) return std::sqrt(bounds.spread());
  return prediction_branch_ratio(err, hb);
}

ErrorSpec dominance_witness(double threshold_ratio, const PriceBounds& bounds) {
  if (!(bounds.hi() > bounds.lo())) {
    fail(ErrorKind::no_witness, "degenerate bounds admit no error beating sqrt(hi/lo)");
  }
  // Negative errors in (1 - r, 1 - sqrt(lo/hi)) push the bound above sqrt(hi/lo).
  const double neg_lo = std::max(0.0, 1.0 - threshold_ratio);
  const double neg_hi = 1.0 - std::sqrt(bounds.lo() / bounds.hi());
  if (neg_lo < neg_hi) return {Parity::negative, 0.5 * (neg_lo + neg_hi)};

  // Otherwise r <= sqrt(lo/hi); any positive error beyond r*sqrt(hi/lo) - 1 works.
  const double pos_lo = std::max(0.0, threshold_ratio * std::sqrt(bounds.spread()) - 1.0);
  const double pos_hi = max_positive_error(bounds);
  if (pos_lo < pos_hi) return {Parity::positive, 0.5 * (pos_lo + pos_hi)};
  fail(ErrorKind::no_witness, "no feasible error exceeds sqrt(hi/lo) for this threshold");
}

}  // namespace osearch
