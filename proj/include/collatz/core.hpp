#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace collatz {

// Exact signed integer; every computation in this library is exact.
using Int = boost::multiprecision::cpp_int;
// Same type, used where the value is >= 0 by contract.
using Nat = Int;

// Default budget for orbit-following loops, counted in applications of the
// compressed map. A loop that exhausts it reports "undecided" instead of
// guessing.
inline constexpr std::uint64_t kStepBudget = 1'000'000;

// 2-adic valuation: exponent of the largest power of 2 dividing m. m >= 1.
std::uint64_t v2(const Nat& m);

// m with every factor of 2 removed. m >= 1.
Nat odd_part(const Nat& m);

// A positive odd integer; construction validates, so downstream code never
// re-checks parity.
class OddNat {
 public:
  explicit OddNat(Nat value);
  const Nat& value() const noexcept { return value_; }

  friend bool operator==(const OddNat& a, const OddNat& b) { return a.value_ == b.value_; }
  friend bool operator!=(const OddNat& a, const OddNat& b) { return a.value_ != b.value_; }
  friend bool operator<(const OddNat& a, const OddNat& b) { return a.value_ < b.value_; }
  friend bool operator>(const OddNat& a, const OddNat& b) { return a.value_ > b.value_; }
  friend bool operator<=(const OddNat& a, const OddNat& b) { return a.value_ <= b.value_; }
  friend bool operator>=(const OddNat& a, const OddNat& b) { return a.value_ >= b.value_; }

 private:
  Nat value_;
};

// One application of the compressed map:
// after = (3 * before + 1) / 2^valuation with the valuation taken maximal,
// so `after` is odd again.
struct StepRecord {
  OddNat before;
  std::uint64_t valuation;
  OddNat after;
};

// How one compressed step moves x: down (x = 1 mod 4, valuation >= 2),
// up (x = 3 mod 4, valuation exactly 1), or nowhere (x = 1).
enum class ResidueClass { Fall, Rise, FixedPoint };

struct Trajectory {
  OddNat start;
  std::vector<StepRecord> steps;
  bool reached_one = false;
  std::uint64_t odd_step_count = 0;
  // Largest value of the standard (uncompressed) orbit of start.
  Nat peak;

  // start plus every step's `after`, in order.
  std::vector<Nat> iterates() const;
};

// Raised when a scan cannot finish because some orbit exhausted its step
// budget; carries the offending start value.
class UndecidedError : public std::runtime_error {
 public:
  UndecidedError(const std::string& what, Nat witness);
  const Nat& witness() const noexcept { return witness_; }

 private:
  Nat witness_;
};

StepRecord t_step(const OddNat& x);

ResidueClass classify(const OddNat& x);

// Follows x until 1 or until max_steps applications; reached_one tells which.
Trajectory trajectory(const OddNat& x, std::uint64_t max_steps = kStepBudget);

// Number of compressed-map applications until 1 is first produced;
// steps_to_one(1) == 1 (the step 1 -> 1 counts). nullopt when the budget
// runs out first.
std::optional<std::uint64_t> steps_to_one(const OddNat& x, std::uint64_t budget = kStepBudget);

// Largest value of the standard orbit of x: max of x itself and every
// 3*m + 1 over the odd iterates m. nullopt when the budget runs out.
std::optional<Nat> peak(const OddNat& x, std::uint64_t budget = kStepBudget);

// All odd y with t_step(y).after == m and valuation <= max_valuation,
// ascending. Empty when m is divisible by 3 (such m has no preimage).
std::vector<OddNat> predecessors(const OddNat& m, std::uint64_t max_valuation);

}  // namespace collatz
