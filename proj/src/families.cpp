#include "collatz/families.hpp"

#include "collatz/parallel.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <utility>

namespace collatz {

Nat shift_orbit(const OddNat& y, std::uint64_t k) { return y.value() << k; }

OddNat lift(const OddNat& y, std::uint64_t n) {
  Nat p4 = Nat(1) << (2 * n);
  return OddNat(p4 * y.value() + (p4 - 1) / 3);
}

std::vector<Nat> enumerate_family(const OddNat& base, const Nat& bound) {
  if (bound < 1) throw std::invalid_argument("enumerate_family: bound must be >= 1");
  std::vector<Nat> out;
  for (std::uint64_t n = 0;; ++n) {
    Nat member = lift(base, n).value();
    if (member > bound) break;  // lifts grow with n, so nothing further fits
    for (; member <= bound; member <<= 1) out.push_back(member);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct OrbitSummary {
  Nat peak;
  std::uint64_t odd_steps;
};

// Peak of the standard orbit of `start` (even starts only prepend halvings,
// so the peak is max(start, peak of the odd part)) plus the compressed step
// count of the odd part.
std::optional<OrbitSummary> summarize_start(std::uint64_t start, std::uint64_t budget) {
  Nat cur = odd_part(Nat(start));
  Nat best = cur;
  std::uint64_t count = 0;
  while (cur != 1) {
    if (count == budget) return std::nullopt;
    Nat raised = 3 * cur + 1;
    if (raised > best) best = raised;
    cur = raised >> v2(raised);
    ++count;
  }
  if (best < start) best = start;
  return OrbitSummary{std::move(best), count};
}

}  // namespace

CensusResult census_brute(std::uint64_t bound, const Nat& target_peak, unsigned threads,
                          std::uint64_t budget) {
  if (bound < 1) throw std::invalid_argument("census: bound must be >= 1");
  struct Chunk {
    std::vector<CensusRecord> records;
    std::optional<std::uint64_t> witness;
  };
  auto chunks = detail::run_chunked<Chunk>(1, bound, threads, [&](std::uint64_t lo, std::uint64_t hi) {
    Chunk c;
    for (std::uint64_t s = lo; s <= hi; ++s) {
      auto summary = summarize_start(s, budget);
      if (!summary) {
        c.witness = s;
        break;
      }
      if (summary->peak == target_peak)
        c.records.push_back(CensusRecord{s, std::move(summary->peak), summary->odd_steps});
    }
    return c;
  });
  CensusResult out{bound, target_peak, {}, CensusMethod::Brute};
  for (auto& c : chunks) {
    // chunks are in range order, so the first witness is the smallest one a
    // sequential scan would have hit
    if (c.witness)
      throw UndecidedError("step budget exhausted at start " + std::to_string(*c.witness),
                           Nat(*c.witness));
    out.records.insert(out.records.end(), std::make_move_iterator(c.records.begin()),
                       std::make_move_iterator(c.records.end()));
  }
  return out;
}

CensusResult census_classes(std::uint64_t bound, const Nat& target_peak, std::uint64_t budget) {
  if (bound < 1) throw std::invalid_argument("census: bound must be >= 1");
  std::vector<char> member(bound + 1, 0);
  std::map<std::uint64_t, OrbitSummary> memo;
  auto summary_of = [&](std::uint64_t s) -> const OrbitSummary& {
    auto it = memo.find(s);
    if (it == memo.end()) {
      auto summary = summarize_start(s, budget);
      if (!summary)
        throw UndecidedError("step budget exhausted at start " + std::to_string(s), Nat(s));
      it = memo.emplace(s, std::move(*summary)).first;
    }
    return it->second;
  };

  std::vector<CensusRecord> records;
  for (std::uint64_t s = 1; s <= bound; ++s) {
    if (member[s]) continue;
    if (summary_of(s).peak != target_peak) continue;

    // seed pool: the odd trajectory path of s down to 1
    std::set<Nat> pool;
    {
      Nat cur = odd_part(Nat(s));
      pool.insert(cur);
      while (cur != 1) {
        Nat raised = 3 * cur + 1;
        cur = raised >> v2(raised);
        pool.insert(cur);
      }
    }

    // in-bound predecessor closure: u -> (u * 2^v - 1) / 3, capped so every
    // preimage <= bound is found and nothing larger enters the pool
    Nat cap = Nat(3) * bound + 1;
    std::deque<Nat> frontier(pool.begin(), pool.end());
    while (!frontier.empty()) {
      Nat u = std::move(frontier.front());
      frontier.pop_front();
      for (Nat p = u << 1; p <= cap; p <<= 1) {
        Nat raised = p - 1;
        if (raised % 3 != 0) continue;
        Nat pred = raised / 3;
        if (pool.insert(pred).second) frontier.push_back(pred);
      }
    }

    // families over the pool, every candidate's peak re-verified
    std::set<std::uint64_t> candidates;
    for (const Nat& p : pool)
      for (const Nat& value : enumerate_family(OddNat(p), Nat(bound)))
        candidates.insert(value.convert_to<std::uint64_t>());
    for (std::uint64_t c : candidates) {
      if (member[c]) continue;
      const OrbitSummary& summary = summary_of(c);
      if (summary.peak != target_peak) continue;
      member[c] = 1;
      records.push_back(CensusRecord{c, summary.peak, summary.odd_steps});
    }
  }

  std::sort(records.begin(), records.end(),
            [](const CensusRecord& a, const CensusRecord& b) { return a.start < b.start; });
  return CensusResult{bound, target_peak, std::move(records), CensusMethod::Classes};
}

}  // namespace collatz
