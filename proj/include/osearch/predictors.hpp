#pragma once

// Best-price predictions: the signed error model, the oblivious reservation
// family ORA_r, the bound-aware Robust-Mix, and their guarantee formulas.

#include "osearch/core.hpp"

namespace osearch {

enum class Parity { negative, positive };

const char* to_string(Parity parity) noexcept;

/// Prediction error. Negative: best = p * (1 - eta). Positive: best = p * (1 + eta).
struct ErrorSpec {
  Parity parity = Parity::negative;
  double eta = 0.0;

  friend bool operator==(const ErrorSpec&, const ErrorSpec&) = default;
};

/// Largest negative / positive error representable inside `bounds`.
double max_negative_error(const PriceBounds& bounds);
double max_positive_error(const PriceBounds& bounds);

/// Negative: eta in [0, (hi-lo)/hi]. Positive: eta in (0, (hi-lo)/lo].
bool is_feasible(const ErrorSpec& err, const PriceBounds& bounds);

/// Declared caps on the negative and positive error (non-oblivious setting).
struct ErrorBounds {
  double h_neg = 0.0;
  double h_pos = 0.0;
};

bool is_valid(const ErrorBounds& hb, const PriceBounds& bounds);

struct BestPricePrediction {
  double p = 0.0;
};

/// Prediction that realizes `err` against the true best price. Throws
/// out_of_range when the implied prediction leaves `bounds`.
BestPricePrediction prediction_from_truth(double best, const ErrorSpec& err,
                                          const PriceBounds& bounds);

/// Same, without requiring the prediction to lie inside any bounds.
BestPricePrediction prediction_from_truth_unchecked(double best, const ErrorSpec& err);

/// best <= p is classified negative (including best == p with eta = 0).
ErrorSpec error_from_pair(double best, double p);

/// ORA_r reservation r * p, not clamped. Throws invalid_parameter if r <= 0.
double ora_reservation(BestPricePrediction prediction, double r);

/// Tight worst-case ratio of ORA_r under error `err`.
double ora_bound(const ErrorSpec& err, double r, const PriceBounds& bounds);

/// Lower bound on any deterministic algorithm whose day-1 acceptance
/// threshold is `threshold_ratio` * p. Pass +infinity when the algorithm
/// accepts nothing inside the bounds on day 1.
double oblivious_lower_bound(const ErrorSpec& err, double threshold_ratio,
                             const PriceBounds& bounds);

/// True when Robust-Mix ignores the prediction and plays ON*.
bool robust_mix_uses_fallback(const PriceBounds& bounds, const ErrorBounds& hb);

double robust_mix_reservation(BestPricePrediction prediction, const PriceBounds& bounds,
                              const ErrorBounds& hb);

/// min{(1 -/+ eta) / (1 - h_neg), sqrt(hi/lo)}. Throws contract_violation
/// if eta exceeds its declared cap.
double robust_mix_bound(const ErrorSpec& err, const PriceBounds& bounds, const ErrorBounds& hb);

/// Branch-aware guarantee: (1 -/+ eta) / (1 - h_neg) when the prediction is
/// used, sqrt(hi/lo) when Robust-Mix falls back to ON*. Equals
/// robust_mix_bound on the prediction branch.
double robust_mix_guarantee(const ErrorSpec& err, const PriceBounds& bounds,
                            const ErrorBounds& hb);

/// An error value for which no oblivious algorithm with day-1 threshold
/// ratio `threshold_ratio` can beat sqrt(hi/lo). Throws no_witness when
/// hi == lo.
ErrorSpec dominance_witness(double threshold_ratio, const PriceBounds& bounds);

}  // namespace osearch
