#include "collatz/accel.hpp"

#include <utility>

namespace collatz {

Decomposition decompose(const OddNat& y) {
  std::uint64_t n = v2(y.value() + 1) + 1;
  Nat halved = (y.value() + 1) >> (n - 1);  // odd, equals 2x + 1
  return Decomposition{(halved - 1) >> 1, n, y};
}

OddNat recompose(const Nat& x, std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("recompose: n must be >= 2");
  if (x < 0) throw std::invalid_argument("recompose: x must be >= 0");
  return OddNat((x << n) + (Nat(1) << (n - 1)) - 1);
}

Nat closed_form_iterate(const Decomposition& d, std::uint64_t j) {
  if (j + 2 > d.n) throw std::invalid_argument("closed_form_iterate: need j <= n - 2");
  Nat p3 = boost::multiprecision::pow(Nat(3), static_cast<unsigned>(j));
  Nat inner = p3 * d.x + (p3 - 1) / 2;
  return (inner << (d.n - j)) + (Nat(1) << (d.n - 1 - j)) - 1;
}

JumpReport jump(const Decomposition& d, bool check_against_naive) {
  OddNat landed{closed_form_iterate(d, d.n - 2)};
  JumpReport report{d, landed, d.n - 2, false};
  if (check_against_naive) {
    OddNat cur = d.y;
    for (std::uint64_t i = 0; i + 2 < d.n; ++i) cur = t_step(cur).after;
    if (cur != landed) throw std::logic_error("jump: closed form diverged from naive replay");
    report.naive_equivalent_checked = true;
  }
  return report;
}

AcceleratedTrajectory fast_trajectory(const OddNat& y, std::uint64_t max_rounds) {
  AcceleratedTrajectory out{y, {}, false, 0, y.value()};
  OddNat cur = y;
  for (std::uint64_t round = 0; round < max_rounds; ++round) {
    Decomposition d = decompose(cur);
    JumpReport jr = jump(d);
    if (d.n >= 3) {
      // the largest raise inside the skipped run comes off its last value
      Nat raised = 3 * closed_form_iterate(d, d.n - 3) + 1;
      if (raised > out.peak) out.peak = raised;
    }
    StepRecord exit_step = t_step(jr.landed);
    Nat raised = 3 * jr.landed.value() + 1;
    if (raised > out.peak) out.peak = raised;
    out.total_t_steps += jr.steps_skipped + 1;
    cur = exit_step.after;
    out.rounds.push_back(JumpSegment{std::move(d), jr.landed, jr.steps_skipped, std::move(exit_step)});
    if (cur.value() == 1) {
      out.reached_one = true;
      break;
    }
  }
  if (y.value() == 1) out.peak = 1;  // the fixed point's orbit never leaves 1
  return out;
}

std::vector<Nat> AcceleratedTrajectory::visited() const {
  std::vector<Nat> out;
  out.reserve(2 * rounds.size() + 1);
  out.push_back(start.value());
  for (const JumpSegment& r : rounds) {
    if (r.steps_skipped > 0) out.push_back(r.landed.value());
    out.push_back(r.exit_step.after.value());
  }
  return out;
}

}  // namespace collatz
