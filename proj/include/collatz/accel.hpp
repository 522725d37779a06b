#pragma once

#include "collatz/core.hpp"

namespace collatz {

// The unique writing y = 2^n * x + 2^(n-1) - 1 with n - 1 = v2(y + 1), so
// n >= 2 and x >= 0. n - 2 is the length of the rising run that starts at y:
// the first n - 2 compressed steps from y all have valuation 1.
struct Decomposition {
  Nat x;
  std::uint64_t n;
  OddNat y;
};

Decomposition decompose(const OddNat& y);

// Inverse of decompose: 2^n * x + 2^(n-1) - 1. Requires n >= 2 and x >= 0.
OddNat recompose(const Nat& x, std::uint64_t n);

// The j-th compressed iterate of d.y in closed form, valid for 0 <= j <= n-2:
//   T^j(y) = 2^(n-j) * (3^j * x + (3^j - 1)/2) + 2^(n-1-j) - 1.
Nat closed_form_iterate(const Decomposition& d, std::uint64_t j);

struct JumpReport {
  Decomposition input;
  OddNat landed;               // T^(n-2)(y); equals y when n == 2
  std::uint64_t steps_skipped; // n - 2
  bool naive_equivalent_checked;
};

// Lands directly on T^(n-2)(y), the top of the rising run. With
// check_against_naive, replays the same stretch step by step and throws
// std::logic_error on any mismatch.
JumpReport jump(const Decomposition& d, bool check_against_naive = false);

// One accelerated round: a closed-form jump across the rising run, then the
// explicit step off its end (that step has valuation >= 2).
struct JumpSegment {
  Decomposition dec;
  OddNat landed;
  std::uint64_t steps_skipped;
  StepRecord exit_step;
};

struct AcceleratedTrajectory {
  OddNat start;
  std::vector<JumpSegment> rounds;
  bool reached_one = false;
  std::uint64_t total_t_steps = 0;  // skipped plus explicit, across rounds
  // Standard-orbit peak, recovered from closed-form iterates without
  // materializing the skipped stretch.
  Nat peak;

  // The odd iterates actually touched: start, then per round the landing
  // (when distinct from the round's start) and the exit step's result.
  std::vector<Nat> visited() const;
};

// Round-based equivalent of trajectory(): each round jumps a whole rising
// run. Every input performs at least one round, so fast_trajectory(1) counts
// the single step 1 -> 1. max_rounds bounds rounds, not steps.
AcceleratedTrajectory fast_trajectory(const OddNat& y, std::uint64_t max_rounds = kStepBudget);

}  // namespace collatz
