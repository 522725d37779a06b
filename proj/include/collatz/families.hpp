#pragma once

#include "collatz/core.hpp"

#include <cstddef>

namespace collatz {

// 2^k * y: prepends k halvings to y's standard orbit, changing nothing after.
Nat shift_orbit(const OddNat& y, std::uint64_t k);

// 4^n * y + (4^n - 1)/3: odd, and its first compressed step lands exactly
// where y's does (same `after`, valuation larger by 2n). lift(y, 0) == y.
OddNat lift(const OddNat& y, std::uint64_t n);

// Every member 2^m * lift(base, n) <= bound, ascending, duplicate-free.
// All members share base's orbit from t_step(base).after on.
std::vector<Nat> enumerate_family(const OddNat& base, const Nat& bound);

struct CensusRecord {
  std::uint64_t start;
  Nat peak;                  // max of the standard orbit of start
  std::uint64_t odd_steps;   // compressed steps of the odd part of start
};

enum class CensusMethod { Brute, Classes };

struct CensusResult {
  std::uint64_t bound;
  Nat target_peak;
  std::vector<CensusRecord> records;  // sorted by start
  CensusMethod method;

  std::size_t count() const noexcept { return records.size(); }
};

// Scans every start in 1..bound and keeps those whose standard-orbit peak
// equals target_peak. threads > 1 partitions the range into contiguous
// chunks merged in order, so the result is identical for every thread
// count. Throws UndecidedError (smallest offending start) when an orbit
// exhausts the budget.
CensusResult census_brute(std::uint64_t bound, const Nat& target_peak, unsigned threads = 1,
                          std::uint64_t budget = kStepBudget);

// Same record set as census_brute, found the structural way: walk up from
// the smallest uncovered qualifying start, pool its odd trajectory path with
// the in-bound predecessor closure of that path, expand every pool member's
// family, and re-verify each candidate's peak before inclusion. The outer
// ascending scan guarantees nothing is missed even where the closure is cut
// off by the bound.
CensusResult census_classes(std::uint64_t bound, const Nat& target_peak,
                            std::uint64_t budget = kStepBudget);

}  // namespace collatz
