#include "collatz/representation.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

#include "oracles.hpp"

using namespace collatz;

namespace {
OddNat odd(std::uint64_t v) { return OddNat(Nat(v)); }

std::vector<Nat> values(const std::vector<OddNat>& v) {
  std::vector<Nat> out;
  for (const OddNat& m : v) out.push_back(m.value());
  return out;
}
}

TEST_CASE("extract_representation records cumulative valuations") {
  auto r = extract_representation(odd(7));
  REQUIRE(r.has_value());
  CHECK(r->exponents == std::vector<std::uint64_t>{1, 2, 4, 7, 11});
  CHECK(r->k() == 4);

  r = extract_representation(odd(1));
  REQUIRE(r.has_value());
  CHECK(r->exponents == std::vector<std::uint64_t>{2});

  r = extract_representation(odd(5));
  REQUIRE(r.has_value());
  CHECK(r->exponents == std::vector<std::uint64_t>{4});

  CHECK(!extract_representation(odd(27), 40).has_value());
}

TEST_CASE("eval_representation computes the closed fraction") {
  Representation rep{{1, 2, 4, 7, 11}};
  EvalResult e = eval_representation(rep);
  CHECK(e.numerator == 1701);
  CHECK(e.denominator == 243);
  CHECK(e.integral);
  REQUIRE(e.value.has_value());
  CHECK(*e.value == 7);
  CHECK(!e.minimality_violated);
  CHECK(e.reduced_numerator == 7);
  CHECK(e.reduced_denominator == 1);

  e = eval_representation(Representation{{2}});
  REQUIRE(e.value.has_value());
  CHECK(*e.value == 1);

  e = eval_representation(Representation{{4}});
  REQUIRE(e.value.has_value());
  CHECK(*e.value == 5);

  e = eval_representation(Representation{{1}});
  CHECK(!e.integral);
  CHECK(e.numerator == 1);
  CHECK(e.denominator == 3);
  CHECK(!e.value.has_value());

  e = eval_representation(Representation{{1, 2}});
  CHECK(e.numerator == -1);
  CHECK(!e.value.has_value());

  // padded forms still evaluate, but are flagged
  e = eval_representation(Representation{{2, 4}});
  REQUIRE(e.value.has_value());
  CHECK(*e.value == 1);
  CHECK(e.minimality_violated);

  e = eval_representation(Representation{{4, 6}});
  REQUIRE(e.value.has_value());
  CHECK(*e.value == 5);
  CHECK(e.minimality_violated);

  CHECK_THROWS_AS(eval_representation(Representation{{}}), std::invalid_argument);
  CHECK_THROWS_AS(eval_representation(Representation{{0, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(eval_representation(Representation{{4, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(eval_representation(Representation{{4, 4}}), std::invalid_argument);
}

TEST_CASE("single-exponent forms are integral exactly on even exponents") {
  for (std::uint64_t n = 1; n <= 40; ++n) {
    EvalResult e = eval_representation(Representation{{n}});
    CHECK(e.integral == (n % 2 == 0));
    if (n % 2 == 0) {
      REQUIRE(e.value.has_value());
      CHECK((Nat(3) * *e.value + 1) == (Nat(1) << n));
    }
  }
}

TEST_CASE("extract then eval round-trips every odd start") {
  for (std::uint64_t x = 1; x <= 10001; x += 2) {
    auto rep = extract_representation(odd(x));
    REQUIRE(rep.has_value());
    auto steps = steps_to_one(odd(x));
    REQUIRE(steps.has_value());
    CHECK(rep->exponents.size() == *steps);
    EvalResult e = eval_representation(*rep);
    REQUIRE(e.value.has_value());
    CHECK(*e.value == x);
    CHECK(!e.minimality_violated);
    CHECK(verify_representation(odd(x), *rep));
  }
}

TEST_CASE("verify_representation rejects mismatches without throwing") {
  CHECK(verify_representation(odd(5), Representation{{4}}));
  CHECK(!verify_representation(odd(5), Representation{{4, 6}}));
  CHECK(!verify_representation(odd(7), Representation{{4, 3}}));
  CHECK(!verify_representation(odd(7), Representation{{2}}));
  CHECK(!verify_representation(odd(1), Representation{{2, 4}}));
  CHECK(verify_representation(odd(1), Representation{{2}}));
}

TEST_CASE("u_set lists the odd numbers with a given descent count") {
  CHECK(values(u_set(1, 100)) == std::vector<Nat>{1, 5, 21, 85});
  CHECK(values(u_set(2, 100)) == std::vector<Nat>{3, 13, 53});
  CHECK(values(u_set(1, 100000)) ==
        std::vector<Nat>{1, 5, 21, 85, 341, 1365, 5461, 21845, 87381});
  CHECK(values(u_set(1, 1)) == std::vector<Nat>{1});
  CHECK_THROWS_AS(u_set(0, 100), std::invalid_argument);
  CHECK_THROWS_AS(u_set(1, 0), std::invalid_argument);
}

TEST_CASE("u_set members are exactly the k+1 == j representations") {
  for (std::uint64_t j = 1; j <= 6; ++j) {
    std::set<Nat> members;
    for (const Nat& m : values(u_set(j, 10000))) members.insert(m);
    for (std::uint64_t x = 1; x <= 10001; x += 2) {
      auto rep = extract_representation(odd(x));
      REQUIRE(rep.has_value());
      CHECK((rep->exponents.size() == j) == (members.count(Nat(x)) == 1 && x <= 10000));
    }
  }
}

TEST_CASE("the descent classes partition the odd numbers") {
  PartitionReport rep = partition_check(10000, 300);
  CHECK(rep.all_covered());
  CHECK(rep.over_j_max.empty());
  CHECK(rep.undecided.empty());
  CHECK(rep.double_covered.empty());
  std::uint64_t total = 0;
  for (const auto& [j, size] : rep.class_sizes) {
    total += size;
    if (j <= 6) CHECK(size == u_set(j, 10000).size());
  }
  CHECK(total == 5000);

  // identical across thread counts
  PartitionReport rep4 = partition_check(10000, 300, 4);
  CHECK(rep4.class_sizes == rep.class_sizes);

  // a tiny class ceiling pushes the slow starts into over_j_max
  PartitionReport low = partition_check(100, 2);
  CHECK(!low.all_covered());
  CHECK(!low.over_j_max.empty());
  CHECK(std::find(low.over_j_max.begin(), low.over_j_max.end(), Nat(7)) !=
        low.over_j_max.end());
  CHECK(low.undecided.empty());

  PartitionReport tiny = partition_check(1, 1);
  CHECK(tiny.all_covered());
  CHECK(tiny.class_sizes == std::vector<std::pair<std::uint64_t, std::uint64_t>>{{1, 1}});
}

TEST_CASE("bracket_experiment brackets the start with nearby class members") {
  BracketReport rep = bracket_experiment(odd(27), 100);
  CHECK(rep.k == 41);
  REQUIRE(rep.rows.size() == 41);

  const BracketRow& first = rep.rows.front();
  CHECK(first.i == 1);
  REQUIRE(first.lower.has_value());
  CHECK(*first.lower == 21);
  CHECK(*first.gap_below == 6);
  REQUIRE(first.upper.has_value());
  CHECK(*first.upper == 85);
  CHECK(*first.gap_above == 58);

  const BracketRow& last = rep.rows.back();
  CHECK(last.i == 41);
  REQUIRE(last.lower.has_value());
  CHECK(*last.lower == 27);
  CHECK(*last.gap_below == 0);

  for (const BracketRow& row : rep.rows) {
    if (row.lower) {
      CHECK(*row.lower <= 27);
      CHECK(*row.gap_below == Nat(27) - *row.lower);
      CHECK(*steps_to_one(OddNat(*row.lower)) == row.i);
    }
    if (row.upper) {
      CHECK(*row.upper > 27);
      CHECK(*row.gap_above == *row.upper - Nat(27));
      CHECK(*steps_to_one(OddNat(*row.upper)) == row.i);
    }
  }

  BracketReport rep4 = bracket_experiment(odd(27), 100, 4);
  REQUIRE(rep4.rows.size() == rep.rows.size());
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    CHECK(rep4.rows[i].lower == rep.rows[i].lower);
    CHECK(rep4.rows[i].upper == rep.rows[i].upper);
  }

  BracketReport one = bracket_experiment(odd(1), 10);
  CHECK(one.k == 1);
  REQUIRE(one.rows.size() == 1);
  CHECK(*one.rows[0].lower == 1);
  CHECK(*one.rows[0].gap_below == 0);

  CHECK_THROWS_AS(bracket_experiment(odd(27), 100, 1, 10), UndecidedError);
}
