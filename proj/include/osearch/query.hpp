#pragma once

// Predictions delivered as answers to n comparison queries "is best <= b?",
// up to h of which may be wrong. RLIS picks among n geometric cells; RBIS
// runs an error-tolerant binary search over 2^n cells.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "osearch/core.hpp"

namespace osearch {

/// Geometric grid a_i = lo * (hi/lo)^(i/k), i = 0..k, with a_0 = lo, a_k = hi.
class IntervalPartition {
 public:
  IntervalPartition(PriceBounds bounds, std::uint64_t cells);

  double point(std::uint64_t i) const;
  std::uint64_t cells() const noexcept { return cells_; }
  const PriceBounds& bounds() const noexcept { return bounds_; }
  /// Common ratio a_{i+1} / a_i.
  double step() const;

 private:
  PriceBounds bounds_;
  std::uint64_t cells_;
};

struct QueryBudget {
  int n = 0;  // queries
  int h = 0;  // tolerated wrong answers

  /// Throws invalid_parameter unless 0 <= h < n.
  void validate() const;
};

// --------------------------------------------------------------------------
// RLIS
// --------------------------------------------------------------------------

/// Bit i (0-based here, query Q_{i+1}) answers "is best < a_{i+1}?".
using ResponseString = std::vector<bool>;

std::string to_string(const ResponseString& bits);
ResponseString parse_response_string(const std::string& text);

/// Error-free answers for a partition with k = n cells: 0...01...1.
ResponseString rlis_truthful_responses(double best, const IntervalPartition& part);

/// Undoes answers that more than h later zeros (for a 1) or earlier ones
/// (for a 0) prove wrong. Counts always come from the input string.
ResponseString rlis_preprocess(const ResponseString& responses, int h);

struct RlisChoice {
  int level = 0;  // index l of the grid point used as reservation
  double reservation = 0.0;
  bool all_zero = false;
};

/// Reservation a_l from a preprocessed string. With at least one 1,
/// l = max(0, i1 - (h + 1 - alpha)); with none, l = n - h.
RlisChoice rlis_reservation(const ResponseString& corrected, int h, const IntervalPartition& part);

/// Preprocess + reservation.
RlisChoice rlis_run(const ResponseString& responses, int h, const IntervalPartition& part);

/// (hi/lo)^(2h/n).
double rlis_bound(int n, int h, const PriceBounds& bounds);

// --------------------------------------------------------------------------
// Response oracle
// --------------------------------------------------------------------------

/// Answers "is best <= a_q?" for an adaptive searcher. Answers on the
/// corrupted slots (0-based ask order) are negated. In persistent mode the
/// oracle also repeats any lie it told whenever the same threshold is asked
/// again, while its lie budget lasts.
class ResponseOracle {
 public:
  enum class Mode { slots, persistent };

  ResponseOracle(double best, IntervalPartition partition, QueryBudget budget,
                 std::vector<int> corrupted_slots, Mode mode = Mode::slots);

  bool ask(std::uint64_t q);
  bool truthful(std::uint64_t q) const;

  int asked() const noexcept { return asked_; }
  int remaining() const noexcept { return budget_.n - asked_; }
  int lies_told() const noexcept { return lies_; }
  double best() const noexcept { return best_; }
  const std::vector<int>& corrupted_slots() const noexcept { return slots_; }
  const IntervalPartition& partition() const noexcept { return partition_; }

 private:
  double best_;
  IntervalPartition partition_;
  QueryBudget budget_;
  std::vector<int> slots_;
  std::vector<bool> corrupt_;
  Mode mode_;
  int asked_ = 0;
  int lies_ = 0;
  std::vector<std::uint64_t> lied_on_;
};

/// Oracle with `eta` distinct corrupted slots drawn from [0, n) by `seed`.
/// Throws contract_violation if eta > h.
ResponseOracle make_oracle(double best, const IntervalPartition& part, int eta,
                           QueryBudget budget, std::uint64_t seed);

// --------------------------------------------------------------------------
// RBIS
// --------------------------------------------------------------------------

/// Node of the complete binary tree over 2^n leaves. The node at (depth, index)
/// covers leaves index*2^(n-depth)+1 .. (index+1)*2^(n-depth), 1-based.
struct TreeNode {
  int depth = 0;
  std::uint64_t index = 0;

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

enum class SearchAction { down_left, down_right, up, halt };

const char* to_string(SearchAction action) noexcept;

struct SearchStep {
  TreeNode node;
  bool main = false;  // true means "yes, best <= threshold"
  std::optional<bool> check;
  SearchAction action = SearchAction::halt;
};

struct SearchTranscript {
  int tree_height = 0;
  std::vector<SearchStep> steps;
  int queries_used = 0;
  int move_ups = 0;
  TreeNode final_node;
  TreeNode fallback;
  std::uint64_t first_leaf = 0;  // leftmost leaf under the fallback node
  std::uint64_t last_leaf = 0;   // rightmost leaf under the fallback node
};

struct RbisResult {
  double reservation = 0.0;
  SearchTranscript transcript;
};

/// 1-based leaf x with a_{x-1} < best <= a_x (best == lo maps to leaf 1).
std::uint64_t leaf_of(double best, const IntervalPartition& part);

/// Robust binary search. `part` must have 2^n cells. Returns a_{l-1} for the
/// leftmost leaf l under the fallback node, plus the full transcript.
RbisResult rbis_search(ResponseOracle& oracle, QueryBudget budget, const IntervalPartition& part);

/// One line per iteration followed by a summary line.
std::string format_transcript(const SearchTranscript& transcript, double reservation);

/// (hi/lo)^(2^(2h - n/2)); throws guarantee_unavailable if h > n/4.
double rbis_bound(int n, int h, const PriceBounds& bounds);

/// (hi/lo)^(2^(2h - n)) for any comparison-query algorithm; needs n >= 11.
double query_lower_bound(int n, int h, const PriceBounds& bounds);

}  // namespace osearch
