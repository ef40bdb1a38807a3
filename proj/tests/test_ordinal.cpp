#include "rosser/ordinal.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"

using rosser::ord::Cmp;
using rosser::ord::Ordinal;

namespace {

Ordinal O(const std::string& s) { return Ordinal::parse(s); }

// Independent normalizer: parses a '+'-separated list of monomials with a
// tiny scanner of its own, then folds them with the textbook absorption rule
// using a recursive lexicographic comparison written from scratch.
struct NaiveOrd {
  // empty = 0; otherwise CNF parts (exponent, coefficient)
  std::vector<std::pair<std::shared_ptr<NaiveOrd>, long>> parts;
};

int naive_cmp(const NaiveOrd& a, const NaiveOrd& b) {
  size_t m = std::min(a.parts.size(), b.parts.size());
  for (size_t i = 0; i < m; ++i) {
    int c = naive_cmp(*a.parts[i].first, *b.parts[i].first);
    if (c != 0) return c;
    if (a.parts[i].second != b.parts[i].second)
      return a.parts[i].second < b.parts[i].second ? -1 : 1;
  }
  if (a.parts.size() != b.parts.size()) return a.parts.size() < b.parts.size() ? -1 : 1;
  return 0;
}

void naive_add(NaiveOrd& acc, std::shared_ptr<NaiveOrd> e, long c) {
  while (!acc.parts.empty() && naive_cmp(*acc.parts.back().first, *e) < 0) acc.parts.pop_back();
  if (!acc.parts.empty() && naive_cmp(*acc.parts.back().first, *e) == 0)
    acc.parts.back().second += c;
  else
    acc.parts.emplace_back(std::move(e), c);
}

std::shared_ptr<NaiveOrd> naive_finite(long n) {
  auto o = std::make_shared<NaiveOrd>();
  if (n > 0) naive_add(*o, std::make_shared<NaiveOrd>(), n);
  return o;
}

// Convert the implementation's value into the naive representation.
std::shared_ptr<NaiveOrd> to_naive(const Ordinal& o) {
  auto out = std::make_shared<NaiveOrd>();
  for (const auto& p : o.parts())
    out->parts.emplace_back(to_naive(p.exponent), p.coefficient.get_si());
  return out;
}

std::vector<Ordinal> universe(int w) { return rosser::ord::bounded_universe(w); }

}  // namespace

TEST_CASE("parse: basic spellings") {
  CHECK(O("0").is_zero());
  CHECK(O("0").kind() == Ordinal::Kind::Zero);

  Ordinal a = O("w*2+3");
  REQUIRE(a.parts().size() == 2);
  CHECK(a.parts()[0].exponent == Ordinal::finite(1));
  CHECK(a.parts()[0].coefficient == 2);
  CHECK(a.parts()[1].exponent.is_zero());
  CHECK(a.parts()[1].coefficient == 3);

  Ordinal b = O("w^w+w^2*3+1");
  REQUIRE(b.parts().size() == 3);
  CHECK(b.parts()[0].exponent == Ordinal::omega());
  CHECK(b.parts()[0].coefficient == 1);
  CHECK(b.parts()[1].exponent == Ordinal::finite(2));
  CHECK(b.parts()[1].coefficient == 3);
  CHECK(b.parts()[2].exponent.is_zero());
  CHECK(b.parts()[2].coefficient == 1);
}

TEST_CASE("parse: non-canonical input is normalized, matching a naive normalizer") {
  // Out-of-order and mergeable spellings; expected values follow ordinal sum
  // semantics (left-to-right, lower terms absorbed).
  struct Case {
    const char* text;
    const char* canonical;
  };
  const Case cases[] = {
      {"1+w", "w"},
      {"w+w", "w*2"},
      {"w+w^2", "w^2"},
      {"w^2+w^2*3", "w^2*4"},
      {"3+w*2+5+w", "w*3"},
      {"w^(w+1)+w^w*2+w^w", "w^(w+1)+w^w*3"},
      {"w*0+7", "7"},
      {"w^0*4", "4"},
  };
  for (const auto& c : cases) {
    CAPTURE(c.text);
    CHECK(O(c.text).to_string() == c.canonical);
  }

  // Cross-check the absorb/merge rule against the independent normalizer on
  // random monomial sequences.
  std::mt19937 rng(12345);
  std::vector<Ordinal> exps = universe(3);
  for (int trial = 0; trial < 500; ++trial) {
    Ordinal impl;
    NaiveOrd naive;
    int terms = 1 + static_cast<int>(rng() % 5);
    for (int t = 0; t < terms; ++t) {
      const Ordinal& e = exps[rng() % exps.size()];
      long c = 1 + static_cast<long>(rng() % 4);
      impl = impl.plus_monomial(e, c);
      naive_add(naive, to_naive(e), c);
    }
    CHECK(naive_cmp(*to_naive(impl), naive) == 0);
  }
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS(O("w^"), rosser::ord::ParseError);
  CHECK_THROWS_AS(O("w+"), rosser::ord::ParseError);
  CHECK_THROWS_AS(O("x"), rosser::ord::ParseError);
  CHECK_THROWS_AS(O("w^(w"), rosser::ord::ParseError);
  CHECK_THROWS_AS(O("3 4"), rosser::ord::ParseError);
  try {
    O("w*");
  } catch (const rosser::ord::ParseError& e) {
    CHECK(e.position == 2);
  }
}

TEST_CASE("compare: pinned examples") {
  CHECK(compare(Ordinal::omega(), Ordinal::omega()) == Cmp::EQ);
  CHECK(compare(Ordinal::finite(5), Ordinal::omega()) == Cmp::LT);
  CHECK(compare(O("w^2"), O("w*7+4")) == Cmp::GT);
}

TEST_CASE("compare: total order against the weight-bounded enumeration") {
  std::vector<Ordinal> all = universe(8);
  // sanity: enumeration has no duplicates and a sensible size
  CHECK(all.size() > 50);

  // successor adjacency: x+1 is the immediate successor of x whenever both lie
  // in the universe (nothing strictly between them).
  std::set<Ordinal> inset(all.begin(), all.end());
  for (const auto& x : all) {
    Ordinal succ = x.plus_finite(1);
    if (!inset.count(succ)) continue;
    for (const auto& y : all) {
      bool between = x < y && y < succ;
      CHECK(!between);
    }
    CHECK(x < succ);
  }

  // trichotomy + transitivity on random triples
  std::mt19937 rng(777);
  for (int t = 0; t < 2000; ++t) {
    const Ordinal& a = all[rng() % all.size()];
    const Ordinal& b = all[rng() % all.size()];
    const Ordinal& c = all[rng() % all.size()];
    int lt = compare(a, b) == Cmp::LT, eq = compare(a, b) == Cmp::EQ,
        gt = compare(a, b) == Cmp::GT;
    CHECK(lt + eq + gt == 1);
    if (compare(a, b) == Cmp::LT && compare(b, c) == Cmp::LT)
      CHECK(compare(a, c) == Cmp::LT);
    if (compare(a, b) == Cmp::EQ) CHECK(a.to_string() == b.to_string());
  }
}

TEST_CASE("classify") {
  CHECK(O("0").kind() == Ordinal::Kind::Zero);
  CHECK(O("w+1").kind() == Ordinal::Kind::Successor);
  CHECK(O("w+1").predecessor() == Ordinal::omega());
  CHECK(O("w^2+w*3").kind() == Ordinal::Kind::Limit);
  CHECK(O("17").kind() == Ordinal::Kind::Successor);
  CHECK(O("17").predecessor() == Ordinal::finite(16));
  CHECK(O("w*2").kind() == Ordinal::Kind::Limit);
}

TEST_CASE("fundamental sequence: declared assignment") {
  CHECK(Ordinal::omega().fundamental_sequence(0) == Ordinal::zero());
  CHECK(Ordinal::omega().fundamental_sequence(5) == Ordinal::finite(5));
  CHECK(O("w^2").fundamental_sequence(3) == O("w*3"));
  CHECK(O("w^w").fundamental_sequence(2) == O("w^2"));
  CHECK(O("w*2").fundamental_sequence(4) == O("w+4"));
  CHECK(O("w^2+w").fundamental_sequence(3) == O("w^2+3"));
  CHECK(O("w^(w+1)").fundamental_sequence(3) == O("w^w*3"));
  CHECK_THROWS_AS(O("w+1").fundamental_sequence(1), rosser::ord::NotALimit);
  CHECK_THROWS_AS(O("0").fundamental_sequence(1), rosser::ord::NotALimit);
}

TEST_CASE("fundamental sequence: monotone, below the limit, cofinal") {
  std::vector<Ordinal> all = universe(6);
  std::mt19937 rng(4242);
  for (const auto& l : all) {
    if (l.kind() != Ordinal::Kind::Limit) continue;
    for (int n = 0; n < 6; ++n) {
      Ordinal fn = l.fundamental_sequence(n);
      Ordinal fm = l.fundamental_sequence(n + 1);
      CHECK(fn < fm);
      CHECK(fn < l);
    }
    // cofinality: every universe element below l is eventually passed
    for (int t = 0; t < 10; ++t) {
      const Ordinal& beta = all[rng() % all.size()];
      if (!(beta < l)) continue;
      bool passed = false;
      for (int n = 0; n < 64 && !passed; ++n)
        if (beta < l.fundamental_sequence(n)) passed = true;
      CAPTURE(l.to_string());
      CAPTURE(beta.to_string());
      CHECK(passed);
    }
  }
  // the spec's spot check for w^w
  for (int t = 0; t < 50; ++t) {
    const Ordinal& beta = all[rng() % all.size()];
    if (!(beta < O("w^w"))) continue;
    bool passed = false;
    for (int n = 0; n < 64 && !passed; ++n)
      if (beta < O("w^w").fundamental_sequence(n)) passed = true;
    CHECK(passed);
  }
}

TEST_CASE("no infinite descent: random descending chains terminate") {
  std::mt19937 rng(99);
  std::vector<Ordinal> all = universe(6);
  for (int t = 0; t < 200; ++t) {
    Ordinal cur = all[rng() % all.size()];
    int steps = 0;
    while (!cur.is_zero()) {
      if (cur.kind() == Ordinal::Kind::Successor)
        cur = cur.predecessor();
      else
        cur = cur.fundamental_sequence(rng() % 4);
      ++steps;
      REQUIRE(steps < 100000);
    }
  }
}

TEST_CASE("parse/print round trips") {
  std::vector<Ordinal> all = universe(6);
  for (const auto& o : all) {
    CHECK(Ordinal::parse(o.to_string()) == o);
  }
  // canonical spellings are fixed points of parse-then-print
  for (const char* s : {"0", "1", "w", "w*2+3", "w^w+w^2*3+1", "w^(w+1)+w*4", "w^w*2+w*3+5"}) {
    CHECK(O(s).to_string() == s);
  }
}
