#pragma once

// Reference implementations kept deliberately independent of the library:
// the standard Collatz map on unsigned 128-bit machine integers, no
// compressed-map shortcuts beyond the definitions themselves. Everything the
// library computes cleverly is recomputed here the dumb way.

#include <cstdint>
#include <vector>

namespace oracle {

using u128 = unsigned __int128;

// standard map: even -> n/2, odd -> 3n + 1
inline u128 standard_step(u128 n) { return n % 2 == 0 ? n / 2 : 3 * n + 1; }

// max of the full standard orbit of n down to 1, start included
inline u128 orbit_peak(u128 n) {
  u128 best = n;
  while (n != 1) {
    n = standard_step(n);
    if (n > best) best = n;
  }
  return best;
}

// odd-to-odd steps from n's odd part down to 1; zero when the odd part is
// already 1 (this is the trajectory step count, not the fixed-point
// convention)
inline std::uint64_t descent_steps(u128 n) {
  while (n % 2 == 0) n /= 2;
  std::uint64_t count = 0;
  while (n != 1) {
    n = 3 * n + 1;
    while (n % 2 == 0) n /= 2;
    ++count;
  }
  return count;
}

// odd-to-odd steps until the value 1 is first *produced*; the fixed point
// costs one application (1 -> 4 -> 1), matching the library's convention
inline std::uint64_t steps_until_one_produced(u128 odd_n) {
  std::uint64_t count = 0;
  do {
    odd_n = 3 * odd_n + 1;
    while (odd_n % 2 == 0) odd_n /= 2;
    ++count;
  } while (odd_n != 1);
  return count;
}

// odd iterates of odd_n, start included, ending at 1
inline std::vector<u128> compressed_iterates(u128 odd_n) {
  std::vector<u128> out{odd_n};
  while (odd_n != 1) {
    odd_n = 3 * odd_n + 1;
    while (odd_n % 2 == 0) odd_n /= 2;
    out.push_back(odd_n);
  }
  return out;
}

struct CensusRow {
  std::uint64_t start;
  std::uint64_t steps;
};

// every start in 1..bound whose standard-orbit max is exactly target
inline std::vector<CensusRow> census(std::uint64_t bound, std::uint64_t target) {
  std::vector<CensusRow> rows;
  for (std::uint64_t s = 1; s <= bound; ++s)
    if (orbit_peak(s) == target) rows.push_back({s, descent_steps(s)});
  return rows;
}

}  // namespace oracle
