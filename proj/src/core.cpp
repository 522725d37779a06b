#include "collatz/core.hpp"

#include <utility>

namespace collatz {

std::uint64_t v2(const Nat& m) {
  if (m < 1) throw std::domain_error("v2: argument must be >= 1");
  return static_cast<std::uint64_t>(boost::multiprecision::lsb(m));
}

Nat odd_part(const Nat& m) { return m >> v2(m); }

OddNat::OddNat(Nat value) : value_(std::move(value)) {
  if (value_ < 1 || !boost::multiprecision::bit_test(value_, 0))
    throw std::invalid_argument("OddNat: value must be odd and >= 1");
}

UndecidedError::UndecidedError(const std::string& what, Nat witness)
    : std::runtime_error(what), witness_(std::move(witness)) {}

StepRecord t_step(const OddNat& x) {
  Nat raised = 3 * x.value() + 1;
  std::uint64_t v = v2(raised);
  return StepRecord{x, v, OddNat(raised >> v)};
}

ResidueClass classify(const OddNat& x) {
  if (x.value() == 1) return ResidueClass::FixedPoint;
  return x.value() % 4 == 1 ? ResidueClass::Fall : ResidueClass::Rise;
}

Trajectory trajectory(const OddNat& x, std::uint64_t max_steps) {
  Trajectory out{x, {}, false, 0, x.value()};
  if (x.value() == 1) {
    out.reached_one = true;
    return out;
  }
  OddNat cur = x;
  while (out.steps.size() < max_steps) {
    StepRecord step = t_step(cur);
    Nat raised = 3 * step.before.value() + 1;
    if (raised > out.peak) out.peak = raised;
    cur = step.after;
    out.steps.push_back(std::move(step));
    if (cur.value() == 1) {
      out.reached_one = true;
      break;
    }
  }
  out.odd_step_count = out.steps.size();
  return out;
}

std::vector<Nat> Trajectory::iterates() const {
  std::vector<Nat> out;
  out.reserve(steps.size() + 1);
  out.push_back(start.value());
  for (const StepRecord& s : steps) out.push_back(s.after.value());
  return out;
}

std::optional<std::uint64_t> steps_to_one(const OddNat& x, std::uint64_t budget) {
  Nat cur = x.value();
  std::uint64_t count = 0;
  do {
    if (count == budget) return std::nullopt;
    Nat raised = 3 * cur + 1;
    cur = raised >> v2(raised);
    ++count;
  } while (cur != 1);
  return count;
}

std::optional<Nat> peak(const OddNat& x, std::uint64_t budget) {
  Nat cur = x.value();
  Nat best = cur;
  std::uint64_t count = 0;
  while (cur != 1) {
    if (count == budget) return std::nullopt;
    Nat raised = 3 * cur + 1;
    if (raised > best) best = raised;
    cur = raised >> v2(raised);
    ++count;
  }
  return best;
}

std::vector<OddNat> predecessors(const OddNat& m, std::uint64_t max_valuation) {
  if (max_valuation < 1) throw std::invalid_argument("predecessors: max_valuation must be >= 1");
  std::vector<OddNat> out;
  if (m.value() % 3 == 0) return out;
  Nat shifted = m.value();
  for (std::uint64_t v = 1; v <= max_valuation; ++v) {
    shifted <<= 1;  // m * 2^v
    Nat raised = shifted - 1;
    // (m * 2^v - 1) / 3 is an integer for every other v; when it is, it is
    // odd and its step has valuation exactly v.
    if (raised % 3 == 0) out.emplace_back(raised / 3);
  }
  return out;  // ascending: y grows with v
}

}  // namespace collatz
