#pragma once

#include "collatz/core.hpp"

#include <optional>
#include <utility>

namespace collatz {

// Exponent list n_1 < n_2 < ... < n_{k+1} encoding a full descent of some
// odd x to 1: entry i is the cumulative 2-adic valuation after i compressed
// steps, and x = (2^{n_{k+1}} - sum_{i=0..k} 3^{k-i} * 2^{n_i}) / 3^{k+1}
// with n_0 = 0.
struct Representation {
  std::vector<std::uint64_t> exponents;

  std::uint64_t k() const noexcept { return exponents.size() - 1; }
};

struct EvalResult {
  Int numerator;    // 2^{n_{k+1}} minus the weighted sum; may be negative
  Nat denominator;  // 3^{k+1}
  Int reduced_numerator;
  Nat reduced_denominator;
  bool integral;
  std::optional<Nat> value;  // present when integral and positive
  // Last gap n_{k+1} - n_k == 2 means the tail encodes the padding step
  // 1 -> 1; such lists evaluate fine but are never minimal.
  bool minimality_violated;
};

// Exact evaluation of an exponent list. Throws std::invalid_argument when
// the list is empty, starts below 1, or is not strictly increasing.
EvalResult eval_representation(const Representation& r);

// Reads the exponent list off x's own descent; eval of the result gives x
// back. extract_representation(1) == {2} (the single step 1 -> 1). nullopt
// when the budget runs out.
std::optional<Representation> extract_representation(const OddNat& x,
                                                     std::uint64_t budget = kStepBudget);

// True iff r evaluates to exactly x and x's own descent reproduces r
// entry for entry. Malformed exponent lists simply yield false.
bool verify_representation(const OddNat& x, const Representation& r,
                           std::uint64_t budget = kStepBudget);

// All odd x <= bound with steps_to_one(x) == j, ascending.
std::vector<OddNat> u_set(std::uint64_t j, std::uint64_t bound, std::uint64_t budget = kStepBudget);

struct PartitionReport {
  std::uint64_t bound = 0;
  std::uint64_t j_max = 0;
  // (j, number of odd x <= bound with steps_to_one == j), ascending j
  std::vector<std::pair<std::uint64_t, std::uint64_t>> class_sizes;
  std::vector<Nat> over_j_max;      // decided, but in more than j_max steps
  std::vector<Nat> undecided;       // step budget exhausted
  std::vector<Nat> double_covered;  // would signal a partition violation

  bool all_covered() const noexcept {
    return over_j_max.empty() && undecided.empty() && double_covered.empty();
  }
};

// Bins every odd x <= bound by steps_to_one and checks each lands in exactly
// one class with index <= j_max. Chunked across threads, merged in order.
PartitionReport partition_check(std::uint64_t bound, std::uint64_t j_max, unsigned threads = 1,
                                std::uint64_t budget = kStepBudget);

struct BracketRow {
  std::uint64_t i;
  std::optional<Nat> lower;  // largest class-i member <= x0 in the window
  std::optional<Nat> upper;  // smallest class-i member > x0 in the window
  std::optional<Nat> gap_below;
  std::optional<Nat> gap_above;
};

struct BracketReport {
  OddNat x0;
  std::uint64_t k;  // steps_to_one(x0)
  std::vector<BracketRow> rows;  // i = 1..k
};

// For each class index i in 1..k, the nearest members on both sides of x0
// within [x0 - window, x0 + window]. Row k's lower neighbor is x0 itself
// (gap 0). Throws UndecidedError when x0's own descent exhausts the budget.
BracketReport bracket_experiment(const OddNat& x0, std::uint64_t window, unsigned threads = 1,
                                 std::uint64_t budget = kStepBudget);

}  // namespace collatz
