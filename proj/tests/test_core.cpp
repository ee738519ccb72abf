#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "osearch/core.hpp"
#include "osearch/error.hpp"

using namespace osearch;

namespace {

// Worst ratio of a reservation over all two-day sequences (q, x) drawn from
// `grid`, computed by plain enumeration.
double brute_worst(const std::vector<double>& grid, double reservation) {
  double worst = 1.0;
  for (double q : grid) {
    for (double x : grid) {
      const double accepted = q >= reservation ? q : x;
      worst = std::max(worst, std::max(q, x) / accepted);
    }
  }
  return worst;
}

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> g;
  for (int i = 0; i < points; ++i) g.push_back(lo * std::pow(hi / lo, double(i) / (points - 1)));
  return g;
}

}  // namespace

TEST(RunReservation, AcceptsFirstPriceAtOrAboveThreshold) {
  const auto out = run_reservation(std::vector<double>{5, 8, 3}, 7);
  EXPECT_EQ(out.accepted_price, 8);
  EXPECT_EQ(out.accept_day, 2u);
  EXPECT_FALSE(out.forced_last_day);
}

TEST(RunReservation, ForcedOnLastDay) {
  const auto out = run_reservation(std::vector<double>{5, 6, 3}, 7);
  EXPECT_EQ(out.accepted_price, 3);
  EXPECT_EQ(out.accept_day, 3u);
  EXPECT_TRUE(out.forced_last_day);
}

TEST(RunReservation, EqualityAccepts) {
  const auto out = run_reservation(std::vector<double>{7}, 7);
  EXPECT_EQ(out.accept_day, 1u);
  EXPECT_FALSE(out.forced_last_day);
}

TEST(RunReservation, LastDayAcceptedOnMeritIsNotForced) {
  const auto out = run_reservation(std::vector<double>{1, 9}, 9);
  EXPECT_EQ(out.accept_day, 2u);
  EXPECT_FALSE(out.forced_last_day);
}

TEST(RunReservation, EmptyIsInvalid) {
  try {
    run_reservation(std::vector<double>{}, 1.0);
    FAIL();
  } catch (const SearchError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_input);
  }
}

TEST(RunReservation, OutOfRangeReservationsDegenerate) {
  const PriceSequence seq({3, 5, 2}, PriceBounds(1, 10));
  EXPECT_EQ(run_reservation(seq, 0.5).accept_day, 1u);
  const auto high = run_reservation(seq, 11);
  EXPECT_EQ(high.accept_day, 3u);
  EXPECT_TRUE(high.forced_last_day);
}

TEST(RunReservation, RaisingReservationNeverAcceptsEarlier) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(1.0, 50.0);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> prices(12);
    for (double& p : prices) p = u(rng);
    std::size_t previous = 0;
    for (double r = 1.0; r <= 51.0; r += 0.5) {
      const auto out = run_reservation(prices, r);
      EXPECT_GE(out.accept_day, previous);
      previous = out.accept_day;
    }
  }
}

TEST(PriceSequence, RejectsPricesOutsideBounds) {
  EXPECT_THROW(PriceSequence({1, 20}, PriceBounds(1, 10)), SearchError);
  EXPECT_THROW(PriceSequence({}, PriceBounds(1, 10)), SearchError);
  EXPECT_THROW(PriceBounds(0, 1), SearchError);
  EXPECT_THROW(PriceBounds(2, 1), SearchError);
}

TEST(BestPrice, Maximum) {
  EXPECT_EQ(best_price(std::vector<double>{5, 8, 3}), 8);
  EXPECT_EQ(best_price(std::vector<double>{2}), 2);
  EXPECT_EQ(best_price(std::vector<double>{2, 2, 2}), 2);
}

TEST(CompetitiveRatio, Examples) {
  const PriceSequence seq({5, 8, 3}, PriceBounds(1, 10));
  EXPECT_DOUBLE_EQ(competitive_ratio(seq, {8, 2, false}).value, 1.0);
  EXPECT_DOUBLE_EQ(competitive_ratio(seq, {5, 1, false}).value, 1.6);
  const PriceSequence drop({10, 1}, PriceBounds(1, 10));
  EXPECT_DOUBLE_EQ(competitive_ratio(drop, {1, 2, true}).value, 10.0);
}

TEST(CompetitiveRatio, MismatchedOutcomeRejected) {
  const PriceSequence seq({5, 8, 3}, PriceBounds(1, 10));
  EXPECT_THROW(competitive_ratio(seq, {7, 2, false}), SearchError);
  EXPECT_THROW(competitive_ratio(seq, {5, 4, false}), SearchError);
  EXPECT_THROW(competitive_ratio(seq, {8, 2, true}), SearchError);
}

TEST(CompetitiveRatio, AlwaysAtLeastOne) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(1.0, 100.0);
  for (int rep = 0; rep < 500; ++rep) {
    std::vector<double> prices(5);
    for (double& p : prices) p = u(rng);
    const PriceSequence seq(prices, PriceBounds(1, 100));
    EXPECT_GE(competitive_ratio(seq, run_reservation(seq, u(rng))).value, 1.0);
  }
}

TEST(OnStar, ReservationValues) {
  EXPECT_DOUBLE_EQ(on_star_reservation(PriceBounds(1, 100)), 10);
  EXPECT_DOUBLE_EQ(on_star_reservation(PriceBounds(5, 5)), 5);
  EXPECT_DOUBLE_EQ(on_star_reservation(PriceBounds(4, 9)), 6);
}

TEST(OnStar, BruteForceMinimizesWorstCase) {
  for (auto [lo, hi] : {std::pair{1.0, 100.0}, std::pair{4.0, 9.0}, std::pair{2.0, 50.0}}) {
    auto grid = log_grid(lo, hi, 201);
    const double star = std::sqrt(lo * hi);
    grid.push_back(star);
    const double star_worst = brute_worst(grid, star);
    EXPECT_NEAR(star_worst, std::sqrt(hi / lo), 1e-9 * std::sqrt(hi / lo));
    for (double candidate : grid) {
      EXPECT_GE(brute_worst(grid, candidate), star_worst * (1 - 1e-12)) << candidate;
    }
  }
}

TEST(WorstCaseRatio, MatchesTwoDayEnumeration) {
  const PriceBounds bounds(1, 20);
  for (double reservation : {1.0, 2.5, 4.0, 7.0, 20.0, 25.0}) {
    auto grid = log_grid(1, 20, 61);
    if (bounds.contains(reservation)) grid.push_back(reservation);
    double worst = 1.0;
    for (double best : grid) worst = std::max(worst, worst_case_ratio(reservation, best, bounds));
    EXPECT_NEAR(worst, brute_worst(grid, reservation), 1e-12) << reservation;
  }
}
