#include "osearch/query.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "osearch/error.hpp"
#include "osearch/random.hpp"

namespace osearch {

IntervalPartition::IntervalPartition(PriceBounds bounds, std::uint64_t cells)
    : bounds_(bounds), cells_(cells) {
  if (cells == 0) fail(ErrorKind::invalid_parameter, "a partition needs at least one cell");
}

double IntervalPartition::point(std::uint64_t i) const {
  if (i > cells_) {
    fail(ErrorKind::internal, "grid index " + std::to_string(i) + " beyond " +
                                  std::to_string(cells_) + " cells");
  }
  if (i == 0) return bounds_.lo();
  if (i == cells_) return bounds_.hi();
  return bounds_.lo() *
         std::pow(bounds_.spread(), static_cast<double>(i) / static_cast<double>(cells_));
}

double IntervalPartition::step() const {
  return std::pow(bounds_.spread(), 1.0 / static_cast<double>(cells_));
}

void QueryBudget::validate() const {
  if (n < 1 || h < 0 || h >= n) {
    fail(ErrorKind::invalid_parameter, "query budget needs 0 <= h < n (got n=" +
                                           std::to_string(n) + ", h=" + std::to_string(h) + ")");
  }
}

// --------------------------------------------------------------------------
// RLIS
// --------------------------------------------------------------------------

std::string to_string(const ResponseString& bits) {
  std::string out;
  out.reserve(bits.size());
  for (bool b : bits) out.push_back(b ? '1' : '0');
  return out;
}

ResponseString parse_response_string(const std::string& text) {
  ResponseString bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') fail(ErrorKind::invalid_input, "response strings are 0/1 only");
    bits.push_back(c == '1');
  }
  return bits;
}

ResponseString rlis_truthful_responses(double best, const IntervalPartition& part) {
  if (!part.bounds().contains(best)) {
    fail(ErrorKind::invalid_input, "best price outside the partition bounds");
  }
  ResponseString bits(part.cells());
  for (std::uint64_t i = 1; i <= part.cells(); ++i) bits[i - 1] = best < part.point(i);
  return bits;
}

ResponseString rlis_preprocess(const ResponseString& responses, int h) {
  const int n = static_cast<int>(responses.size());
  const int total_zeros = static_cast<int>(std::count(responses.begin(), responses.end(), false));
  ResponseString corrected = responses;
  int ones_before = 0;
  int zeros_seen = 0;
  for (int i = 0; i < n; ++i) {
    if (responses[i]) {
      const int zeros_after = total_zeros - zeros_seen;
      if (zeros_after >= h + 1) corrected[i] = false;
      ++ones_before;
    } else {
      ++zeros_seen;
      if (ones_before >= h + 1) corrected[i] = true;
    }
  }
  return corrected;
}

RlisChoice rlis_reservation(const ResponseString& corrected, int h, const IntervalPartition& part) {
  const int n = static_cast<int>(corrected.size());
  if (part.cells() != static_cast<std::uint64_t>(n)) {
    fail(ErrorKind::invalid_parameter, "RLIS needs a partition with one cell per query");
  }
  RlisChoice choice;
  const auto first_one = std::find(corrected.begin(), corrected.end(), true);
  if (first_one == corrected.end()) {
    // At most h trailing answers can be wrong, so best >= a_{n-h}.
    choice.all_zero = true;
    choice.level = n - h;
  } else {
    const int i1 = static_cast<int>(first_one - corrected.begin()) + 1;
    const int alpha = static_cast<int>(std::count(first_one + 1, corrected.end(), false));
    choice.level = std::max(0, i1 - (h + 1 - alpha));
  }
  if (choice.level < 0 || choice.level > n) {
    fail(ErrorKind::internal, "RLIS level " + std::to_string(choice.level) + " outside 0.." +
                                  std::to_string(n));
  }
  choice.reservation = part.point(static_cast<std::uint64_t>(choice.level));
  return choice;
}

RlisChoice rlis_run(const ResponseString& responses, int h, const IntervalPartition& part) {
  return rlis_reservation(rlis_preprocess(responses, h), h, part);
}

double rlis_bound(int n, int h, const PriceBounds& bounds) {
  QueryBudget{n, h}.validate();
  return std::pow(bounds.spread(), 2.0 * h / n);
}

// --------------------------------------------------------------------------
// Response oracle
// --------------------------------------------------------------------------

ResponseOracle::ResponseOracle(double best, IntervalPartition partition, QueryBudget budget,
                               std::vector<int> corrupted_slots, Mode mode)
    : best_(best),
      partition_(partition),
      budget_(budget),
      slots_(std::move(corrupted_slots)),
      mode_(mode) {
  budget_.validate();
  if (!partition_.bounds().contains(best_)) {
    fail(ErrorKind::invalid_input, "best price outside the partition bounds");
  }
  if (static_cast<int>(slots_.size()) > budget_.h) {
    fail(ErrorKind::contract_violation, "more corrupted slots than tolerated errors");
  }
  corrupt_.assign(static_cast<std::size_t>(budget_.n), false);
  for (int slot : slots_) {
    if (slot < 0 || slot >= budget_.n) fail(ErrorKind::invalid_parameter, "slot out of range");
    if (corrupt_[slot]) fail(ErrorKind::invalid_parameter, "duplicate corrupted slot");
    corrupt_[slot] = true;
  }
}

bool ResponseOracle::truthful(std::uint64_t q) const { return best_ <= partition_.point(q); }

bool ResponseOracle::ask(std::uint64_t q) {
  if (asked_ >= budget_.n) fail(ErrorKind::internal, "response oracle exhausted");
  const bool truth = truthful(q);
  bool lie = corrupt_[asked_];
  if (mode_ == Mode::persistent && !lie &&
      std::find(lied_on_.begin(), lied_on_.end(), q) != lied_on_.end()) {
    lie = true;
  }
  if (lie && lies_ >= budget_.h) lie = false;
  ++asked_;
  if (!lie) return truth;
  ++lies_;
  if (std::find(lied_on_.begin(), lied_on_.end(), q) == lied_on_.end()) lied_on_.push_back(q);
  return !truth;
}

ResponseOracle make_oracle(double best, const IntervalPartition& part, int eta,
                           QueryBudget budget, std::uint64_t seed) {
  budget.validate();
  if (eta < 0 || eta > budget.h) {
    fail(ErrorKind::contract_violation, "error count " + std::to_string(eta) +
                                            " exceeds the tolerated " + std::to_string(budget.h));
  }
  Rng rng(seed);
  return ResponseOracle(best, part, budget, sample_distinct(rng, budget.n, eta));
}

// --------------------------------------------------------------------------
// RBIS
// --------------------------------------------------------------------------

const char* to_string(SearchAction action) noexcept {
  switch (action) {
    case SearchAction::down_left: return "down-left";
    case SearchAction::down_right: return "down-right";
    case SearchAction::up: return "up";
    case SearchAction::halt: return "halt";
  }
  return "?";
}

std::uint64_t leaf_of(double best, const IntervalPartition& part) {
  std::uint64_t left = 1;
  std::uint64_t right = part.cells();
  while (left < right) {
    const std::uint64_t mid = left + (right - left) / 2;
    if (best <= part.point(mid)) {
      right = mid;
    } else {
      left = mid + 1;
    }
  }
  return left;
}

namespace {

// Rightmost leaf of the left subtree of `v`: the main query threshold.
std::uint64_t split_leaf(const TreeNode& v, int height) {
  const int below = height - v.depth;
  return (v.index << below) + (std::uint64_t{1} << (below - 1));
}

}  // namespace

RbisResult rbis_search(ResponseOracle& oracle, QueryBudget budget, const IntervalPartition& part) {
  budget.validate();
  const int height = budget.n;
  if (height >= 63 || part.cells() != (std::uint64_t{1} << height)) {
    fail(ErrorKind::invalid_parameter, "RBIS needs a partition with 2^n cells");
  }

  SearchTranscript log;
  log.tree_height = height;

  // responses[d] is the most recent main answer at the depth-d node of the
  // current root-to-v path.
  std::vector<bool> responses(static_cast<std::size_t>(height), false);
  TreeNode v{0, 0};
  int used = 0;
  int ups = 0;

  auto ask = [&](std::uint64_t q) {
    if (oracle.remaining() <= 0) fail(ErrorKind::internal, "query budget accounting broke");
    ++used;
    return oracle.ask(q);
  };

  while (used < budget.n && v.depth < height) {
    SearchStep step;
    step.node = v;
    step.main = ask(split_leaf(v, height));
    responses[v.depth] = step.main;

    int anc = -1;
    for (int d = v.depth - 1; d >= 0; --d) {
      if (responses[d] != step.main) {
        anc = d;
        break;
      }
    }

    bool move_down = true;
    if (anc >= 0) {
      if (used >= budget.n) {
        // Checkup unaffordable: stop here without moving.
        step.action = SearchAction::halt;
        log.steps.push_back(step);
        break;
      }
      const TreeNode w{anc, v.index >> (v.depth - anc)};
      step.check = ask(split_leaf(w, height));
      move_down = *step.check == responses[anc];
    }

    if (move_down) {
      step.action = step.main ? SearchAction::down_left : SearchAction::down_right;
      v = TreeNode{v.depth + 1, (v.index << 1) | (step.main ? 0u : 1u)};
    } else {
      step.action = SearchAction::up;
      v = TreeNode{v.depth - 1, v.index >> 1};
      ++ups;
    }
    log.steps.push_back(step);
  }

  log.queries_used = used;
  log.move_ups = ups;
  log.final_node = v;
  const int climb = std::min(v.depth, std::max(0, budget.h - ups));
  log.fallback = TreeNode{v.depth - climb, v.index >> climb};
  const int below = height - log.fallback.depth;
  log.first_leaf = (log.fallback.index << below) + 1;
  log.last_leaf = (log.fallback.index + 1) << below;

  RbisResult result;
  result.reservation = part.point(log.first_leaf - 1);
  result.transcript = std::move(log);
  return result;
}

std::string format_transcript(const SearchTranscript& t, double reservation) {
  std::ostringstream out;
  out.precision(10);
  int iter = 0;
  for (const SearchStep& s : t.steps) {
    out << ++iter << " node=" << s.node.depth << ':' << s.node.index
        << " main=" << (s.main ? "yes" : "no") << " check="
        << (s.check ? (*s.check ? "yes" : "no") : "-") << " action=" << to_string(s.action)
        << '\n';
  }
  out << "queries=" << t.queries_used << " move_ups=" << t.move_ups
      << " final=" << t.final_node.depth << ':' << t.final_node.index
      << " fallback=" << t.fallback.depth << ':' << t.fallback.index << " leaves=" << t.first_leaf
      << ".." << t.last_leaf << " reservation=" << reservation << '\n';
  return out.str();
}

double rbis_bound(int n, int h, const PriceBounds& bounds) {
  QueryBudget{n, h}.validate();
  if (4 * h > n) {
    fail(ErrorKind::guarantee_unavailable, "RBIS guarantee needs h <= n/4");
  }
  return std::pow(bounds.spread(), std::exp2(2.0 * h - 0.5 * n));
}

double query_lower_bound(int n, int h, const PriceBounds& bounds) {
  QueryBudget{n, h}.validate();
  if (n < 11) fail(ErrorKind::guarantee_unavailable, "query lower bound needs n >= 11");
  return std::pow(bounds.spread(), std::exp2(2.0 * h - n));
}

}  // namespace osearch
