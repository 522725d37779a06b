#include "collatz/representation.hpp"

#include "collatz/parallel.hpp"

#include <algorithm>
#include <map>

namespace collatz {

namespace {

void validate_exponents(const std::vector<std::uint64_t>& e) {
  if (e.empty()) throw std::invalid_argument("representation: exponent list must be nonempty");
  if (e.front() < 1) throw std::invalid_argument("representation: exponents must be >= 1");
  for (std::size_t i = 1; i < e.size(); ++i)
    if (e[i] <= e[i - 1])
      throw std::invalid_argument("representation: exponents must be strictly increasing");
}

}  // namespace

EvalResult eval_representation(const Representation& r) {
  validate_exponents(r.exponents);
  const std::uint64_t k = r.k();
  Nat denominator = boost::multiprecision::pow(Nat(3), static_cast<unsigned>(k + 1));
  // sum_{i=0..k} 3^{k-i} * 2^{n_i}, n_0 = 0
  Nat power3 = boost::multiprecision::pow(Nat(3), static_cast<unsigned>(k));
  Nat sum = power3;
  for (std::size_t i = 1; i <= k; ++i) {
    power3 /= 3;
    sum += power3 << r.exponents[i - 1];
  }
  Int numerator = (Int(1) << r.exponents[k]) - sum;
  Int g = boost::multiprecision::gcd(numerator < 0 ? Int(-numerator) : numerator, denominator);
  if (g == 0) g = 1;  // numerator == 0 leaves gcd(0, den) = den; guard anyway

  EvalResult out;
  out.numerator = numerator;
  out.denominator = denominator;
  out.reduced_numerator = numerator / g;
  out.reduced_denominator = denominator / g;
  out.integral = out.reduced_denominator == 1;
  if (out.integral && numerator > 0) out.value = Nat(out.reduced_numerator);
  out.minimality_violated = k >= 1 && r.exponents[k] == r.exponents[k - 1] + 2;
  return out;
}

std::optional<Representation> extract_representation(const OddNat& x, std::uint64_t budget) {
  Representation r;
  Nat cur = x.value();
  std::uint64_t cumulative = 0;
  do {
    if (r.exponents.size() == budget) return std::nullopt;
    Nat raised = 3 * cur + 1;
    std::uint64_t v = v2(raised);
    cumulative += v;
    r.exponents.push_back(cumulative);
    cur = raised >> v;
  } while (cur != 1);
  return r;
}

bool verify_representation(const OddNat& x, const Representation& r, std::uint64_t budget) {
  EvalResult eval;
  try {
    eval = eval_representation(r);
  } catch (const std::invalid_argument&) {
    return false;
  }
  if (!eval.value || *eval.value != x.value()) return false;
  auto extracted = extract_representation(x, budget);
  return extracted && extracted->exponents == r.exponents;
}

std::vector<OddNat> u_set(std::uint64_t j, std::uint64_t bound, std::uint64_t budget) {
  if (j < 1) throw std::invalid_argument("u_set: j must be >= 1");
  if (bound < 1) throw std::invalid_argument("u_set: bound must be >= 1");
  std::vector<OddNat> out;
  for (std::uint64_t x = 1; x <= bound; x += 2) {
    auto steps = steps_to_one(OddNat(Nat(x)), budget);
    if (steps && *steps == j) out.emplace_back(Nat(x));
  }
  return out;
}

PartitionReport partition_check(std::uint64_t bound, std::uint64_t j_max, unsigned threads,
                                std::uint64_t budget) {
  if (bound < 1 || j_max < 1)
    throw std::invalid_argument("partition_check: bound and j_max must be >= 1");
  struct Chunk {
    std::map<std::uint64_t, std::uint64_t> sizes;
    std::vector<Nat> over;
    std::vector<Nat> undecided;
  };
  auto chunks = detail::run_chunked<Chunk>(1, bound, threads, [&](std::uint64_t lo, std::uint64_t hi) {
    Chunk c;
    for (std::uint64_t x = lo | 1; x <= hi; x += 2) {
      auto steps = steps_to_one(OddNat(Nat(x)), budget);
      if (!steps)
        c.undecided.emplace_back(x);
      else if (*steps > j_max)
        c.over.emplace_back(x);
      else
        ++c.sizes[*steps];
    }
    return c;
  });

  PartitionReport out;
  out.bound = bound;
  out.j_max = j_max;
  std::map<std::uint64_t, std::uint64_t> merged;
  for (auto& c : chunks) {
    for (auto& [j, n] : c.sizes) merged[j] += n;
    out.over_j_max.insert(out.over_j_max.end(), c.over.begin(), c.over.end());
    out.undecided.insert(out.undecided.end(), c.undecided.begin(), c.undecided.end());
  }
  out.class_sizes.assign(merged.begin(), merged.end());
  return out;
}

BracketReport bracket_experiment(const OddNat& x0, std::uint64_t window, unsigned threads,
                                 std::uint64_t budget) {
  if (window < 1) throw std::invalid_argument("bracket_experiment: window must be >= 1");
  auto k_opt = steps_to_one(x0, budget);
  if (!k_opt)
    throw UndecidedError("step budget exhausted at start " + x0.value().str(), x0.value());
  const std::uint64_t k = *k_opt;

  Nat lo = x0.value() > window ? Nat(x0.value() - window) : Nat(1);
  if (!boost::multiprecision::bit_test(lo, 0)) ++lo;
  Nat hi = x0.value() + window;
  std::uint64_t count = Nat((hi - lo) / 2 + 1).convert_to<std::uint64_t>();

  struct Chunk {
    std::vector<std::optional<Nat>> lower, upper;  // indexed by class 1..k
  };
  auto chunks =
      detail::run_chunked<Chunk>(0, count - 1, threads, [&](std::uint64_t a, std::uint64_t b) {
        Chunk c;
        c.lower.resize(k + 1);
        c.upper.resize(k + 1);
        Nat cand = lo + 2 * Nat(a);
        for (std::uint64_t off = a; off <= b; ++off, cand += 2) {
          auto steps = steps_to_one(OddNat(cand), budget);
          if (!steps || *steps > k || *steps < 1) continue;
          if (cand <= x0.value()) {
            auto& slot = c.lower[*steps];
            if (!slot || *slot < cand) slot = cand;
          } else {
            auto& slot = c.upper[*steps];
            if (!slot || *slot > cand) slot = cand;
          }
        }
        return c;
      });

  BracketReport out{x0, k, {}};
  out.rows.reserve(k);
  for (std::uint64_t i = 1; i <= k; ++i) {
    BracketRow row;
    row.i = i;
    for (auto& c : chunks) {
      if (c.lower[i] && (!row.lower || *row.lower < *c.lower[i])) row.lower = c.lower[i];
      if (c.upper[i] && (!row.upper || *row.upper > *c.upper[i])) row.upper = c.upper[i];
    }
    if (row.lower) row.gap_below = x0.value() - *row.lower;
    if (row.upper) row.gap_above = *row.upper - x0.value();
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace collatz
